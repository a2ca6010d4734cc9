#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "glauber/model.hpp"
#include "glauber/oracle.hpp"
#include "glauber/rng.hpp"

namespace glauber {

// Feasible configuration with occupied-neighbor counts so one update costs
// O(deg). Matchings run on the line-graph normal form, so a single set of
// update rules covers both models.
struct ChainState {
    std::vector<int8_t> spin;       // +1 occupied, -1 not
    std::vector<int> occupied_nbrs;
    long long occupied = 0;
    long long flips = 0;

    uint32_t config_mask() const;
};

ChainState initial_state(const GibbsModel& m);  // all -1: feasible everywhere

// One heat-bath update at a uniformly random site.
void glauber_step(const GibbsModel& m, ChainState& s, SplitMix64& rng);

// Recomputes the cache from scratch and checks feasibility.
bool state_consistent(const GibbsModel& m, const ChainState& s);

struct RunSummary {
    long long steps = 0;
    long long samples = 0;
    std::vector<double> site_plus_freq;              // per-site occupation frequency
    std::unordered_map<uint32_t, long long> config_counts;  // only when sites <= 12
    ChainState final_state;
};

RunSummary run_chain(const GibbsModel& m, long long steps, long long burn_in, long long thin,
                     uint64_t seed);

double empirical_tv(const SupportTable<double>& st,
                    const std::unordered_map<uint32_t, long long>& counts);

// Heat-bath transition matrix over the support-table order; for W = Rational
// rows sum to one exactly and detailed balance is exact.
template <class W>
struct ChainMatrix {
    SupportTable<W> support;
    std::vector<std::vector<W>> p;
};

template <class W>
ChainMatrix<W> transition_matrix(const GibbsModel& m, int site_cap = kDefaultSiteCap) {
    ChainMatrix<W> cm;
    cm.support = enumerate<W>(m, site_cap);
    const int n = m.site_count();
    const int sz = cm.support.size();
    cm.p.assign(sz, std::vector<W>(sz, W{}));
    if (n == 0) {
        cm.p[0][0] = scalar_from_double<W>(1.0);
        return cm;
    }
    const W one = scalar_from_double<W>(1.0);
    const W site_prob = one / scalar_from_double<W>(static_cast<double>(n));
    for (int x = 0; x < sz; ++x) {
        uint32_t cfg = cm.support.configs[x];
        for (int s = 0; s < n; ++s) {
            bool blocked = false;
            for (int w : m.sites.adjacency[s])
                if (cfg >> w & 1) {
                    blocked = true;
                    break;
                }
            W p_plus = W{};
            if (!blocked) {
                W lam = m.activity<W>(s);
                p_plus = lam / (one + lam);
            }
            uint32_t to_plus = cfg | (uint32_t(1) << s);
            uint32_t to_minus = cfg & ~(uint32_t(1) << s);
            if (!blocked) cm.p[x][cm.support.index_of(to_plus)] += site_prob * p_plus;
            cm.p[x][cm.support.index_of(to_minus)] += site_prob * (one - p_plus);
        }
    }
    return cm;
}

template <class W>
bool detailed_balance_exact(const ChainMatrix<W>& cm) {
    const int sz = cm.support.size();
    for (int x = 0; x < sz; ++x)
        for (int y = 0; y < sz; ++y)
            if (cm.support.weights[x] * cm.p[x][y] != cm.support.weights[y] * cm.p[y][x])
                return false;
    return true;
}

Eigen::MatrixXd to_matrix(const ChainMatrix<double>& cm);
Eigen::VectorXd stationary_of(const ChainMatrix<double>& cm);

// Worst-start total variation distance from stationarity after t steps.
double max_tv_from_stationarity(const Eigen::MatrixXd& pt, const Eigen::VectorXd& pi);

// Smallest t > 0 with max-start TV <= 1/(2e), by a squaring ladder plus
// bisection (monotone in t). Throws if t would exceed the cap.
long long mixing_time_exact(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi,
                            long long t_cap = 10000000);

// 1 - lambda_2 of the reversible chain via the symmetrized eigensolve.
double spectral_gap(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi);

// Exhaustive bottleneck ratio over all 2^|Omega| subsets (|Omega| <= 20).
double conductance_exact(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi);

// min over sites of min{1/(1+lambda_s), lambda_s/(1+lambda_s)}.
double min_update_probability(const GibbsModel& m);

struct ChainDiagnostics {
    int sites = 0;
    int support = 0;
    long long t_mix = 0;
    double gap = 0.0;
    double conductance = 0.0;
    bool conductance_is_exact = false;  // otherwise the reported value is a lower bound
    double pi_min = 0.0;
};
ChainDiagnostics diagnose(const GibbsModel& m, int site_cap = kDefaultSiteCap,
                          int conductance_cap = 20);

struct StabilityReport {
    double zeta = 0.0;
    double max_ratio = 0.0;         // max R over all pinnings and free sites
    double max_nested_ratio = 0.0;  // max R^{Lambda,tau} / R^{S,tau_S}
    bool lower_bound_ok = true;     // hard-core floor lambda/((1+lambda)^(deg+1)-lambda)
    bool pass = false;
    long long pinnings = 0;
};

// Exhaustive for site counts <= 6; beyond that `samples` random
// (Lambda, tau, S) triples are drawn.
StabilityReport stability_report(const GibbsModel& m, double zeta, int exhaustive_cap = 6,
                                 int samples = 20000, uint64_t seed = 1);

}  // namespace glauber
