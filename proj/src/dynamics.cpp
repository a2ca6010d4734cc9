#include "glauber/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace glauber {

uint32_t ChainState::config_mask() const {
    uint32_t m = 0;
    for (size_t i = 0; i < spin.size(); ++i)
        if (spin[i] > 0) m |= uint32_t(1) << i;
    return m;
}

ChainState initial_state(const GibbsModel& m) {
    ChainState s;
    s.spin.assign(m.site_count(), -1);
    s.occupied_nbrs.assign(m.site_count(), 0);
    return s;
}

void glauber_step(const GibbsModel& m, ChainState& s, SplitMix64& rng) {
    const int n = m.site_count();
    if (n == 0) return;
    const int v = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(n)));
    int8_t next;
    if (s.occupied_nbrs[v] > 0) {
        next = -1;
    } else {
        double lam = m.activities_d[v];
        next = rng.bernoulli(lam / (1.0 + lam)) ? 1 : -1;
    }
    if (next != s.spin[v]) {
        s.spin[v] = next;
        s.flips += 1;
        int delta = next > 0 ? 1 : -1;
        s.occupied += delta;
        for (int w : m.sites.adjacency[v]) s.occupied_nbrs[w] += delta;
    }
}

bool state_consistent(const GibbsModel& m, const ChainState& s) {
    long long occ = 0;
    for (int v = 0; v < m.site_count(); ++v) {
        if (s.spin[v] > 0) {
            ++occ;
            for (int w : m.sites.adjacency[v])
                if (s.spin[w] > 0) return false;  // infeasible
        }
        int count = 0;
        for (int w : m.sites.adjacency[v])
            if (s.spin[w] > 0) ++count;
        if (count != s.occupied_nbrs[v]) return false;
    }
    return occ == s.occupied;
}

RunSummary run_chain(const GibbsModel& m, long long steps, long long burn_in, long long thin,
                     uint64_t seed) {
    if (steps < 0 || burn_in < 0 || thin < 1) throw ParameterError("run_chain: bad parameters");
    RunSummary out;
    out.steps = steps;
    const int n = m.site_count();
    out.site_plus_freq.assign(n, 0.0);
    ChainState s = initial_state(m);
    SplitMix64 rng = SplitMix64(seed).substream("glauber-chain");
    const bool track_configs = n <= 12;
    std::vector<long long> plus_count(n, 0);
    for (long long t = 0; t < burn_in; ++t) glauber_step(m, s, rng);
    for (long long t = 0; t < steps; ++t) {
        glauber_step(m, s, rng);
        if ((t + 1) % thin == 0) {
            out.samples += 1;
            for (int v = 0; v < n; ++v)
                if (s.spin[v] > 0) ++plus_count[v];
            if (track_configs) out.config_counts[s.config_mask()] += 1;
        }
    }
    if (out.samples > 0)
        for (int v = 0; v < n; ++v)
            out.site_plus_freq[v] = static_cast<double>(plus_count[v]) / out.samples;
    out.final_state = s;
    return out;
}

double empirical_tv(const SupportTable<double>& st,
                    const std::unordered_map<uint32_t, long long>& counts) {
    long long total = 0;
    for (const auto& [cfg, c] : counts) total += c;
    if (total == 0) throw ParameterError("empirical_tv: no samples");
    double acc = 0.0;
    for (int i = 0; i < st.size(); ++i) {
        auto it = counts.find(st.configs[i]);
        double emp = it == counts.end() ? 0.0 : static_cast<double>(it->second) / total;
        acc += std::abs(emp - st.weights[i] / st.Z);
    }
    // configurations outside the support would indicate an infeasible state
    for (const auto& [cfg, c] : counts)
        if (st.index_of(cfg) < 0) acc += static_cast<double>(c) / total;
    return acc / 2.0;
}

Eigen::MatrixXd to_matrix(const ChainMatrix<double>& cm) {
    const int sz = cm.support.size();
    Eigen::MatrixXd p(sz, sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) p(i, j) = cm.p[i][j];
    return p;
}

Eigen::VectorXd stationary_of(const ChainMatrix<double>& cm) {
    const int sz = cm.support.size();
    Eigen::VectorXd pi(sz);
    for (int i = 0; i < sz; ++i) pi(i) = cm.support.weights[i] / cm.support.Z;
    return pi;
}

double max_tv_from_stationarity(const Eigen::MatrixXd& pt, const Eigen::VectorXd& pi) {
    double worst = 0.0;
    for (int r = 0; r < pt.rows(); ++r) {
        double acc = 0.0;
        for (int c = 0; c < pt.cols(); ++c) acc += std::abs(pt(r, c) - pi(c));
        worst = std::max(worst, acc / 2.0);
    }
    return worst;
}

long long mixing_time_exact(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi, long long t_cap) {
    const double threshold = 1.0 / (2.0 * std::exp(1.0));
    if (max_tv_from_stationarity(p, pi) <= threshold) return 1;
    // squaring ladder until the TV threshold is crossed
    std::vector<Eigen::MatrixXd> ladder{p};  // ladder[j] = P^(2^j)
    long long t_hi = 1;
    for (;;) {
        if (2 * t_hi > t_cap) throw ConvergenceError("mixing_time_exact: cap exceeded");
        Eigen::MatrixXd next = ladder.back() * ladder.back();
        ladder.push_back(next);
        t_hi *= 2;
        if (max_tv_from_stationarity(next, pi) <= threshold) break;
    }
    // invariant: TV(t_low) > threshold; answer in (t_low, t_hi]
    long long t_low = t_hi / 2;
    Eigen::MatrixXd m_low = ladder[ladder.size() - 2];
    for (int j = static_cast<int>(ladder.size()) - 3; j >= 0; --j) {
        Eigen::MatrixXd cand = m_low * ladder[j];
        if (max_tv_from_stationarity(cand, pi) > threshold) {
            m_low = cand;
            t_low += 1LL << j;
        }
    }
    return t_low + 1;
}

double spectral_gap(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi) {
    const int sz = static_cast<int>(p.rows());
    if (sz == 1) return 1.0;
    Eigen::MatrixXd s(sz, sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) s(i, j) = std::sqrt(pi(i) / pi(j)) * p(i, j);
    Eigen::MatrixXd sym = (s + s.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("spectral_gap: eigensolve failed");
    return 1.0 - solver.eigenvalues()(sz - 2);
}

double conductance_exact(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi) {
    const int sz = static_cast<int>(p.rows());
    if (sz > 20) throw SizeCapError("conductance_exact: support cap is 20");
    if (sz < 2) throw ParameterError("conductance_exact: need at least two states");
    // symmetric edge flows q(x,y) = pi(x) p(x,y)
    Eigen::MatrixXd q(sz, sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) q(i, j) = pi(i) * p(i, j);
    std::vector<double> rowsum(sz, 0.0);
    for (int i = 0; i < sz; ++i) rowsum[i] = q.row(i).sum() - q(i, i);
    // Gray-code walk over subsets, maintaining boundary flow and mass.
    std::vector<double> inner(sz, 0.0);  // inner[e] = sum_{x in A} q(e,x)
    std::vector<char> in_set(sz, 0);
    double flow = 0.0, mass = 0.0, best = std::numeric_limits<double>::infinity();
    const uint64_t count = uint64_t(1) << sz;
    uint64_t gray_prev = 0;
    for (uint64_t i = 1; i < count; ++i) {
        uint64_t gray = i ^ (i >> 1);
        int e = __builtin_ctzll(gray ^ gray_prev);
        gray_prev = gray;
        if (!in_set[e]) {
            in_set[e] = 1;
            flow += rowsum[e] - 2.0 * inner[e];
            mass += pi(e);
            for (int x = 0; x < sz; ++x) inner[x] += q(x, e);
        } else {
            in_set[e] = 0;
            for (int x = 0; x < sz; ++x) inner[x] -= q(x, e);
            flow -= rowsum[e] - 2.0 * inner[e];
            mass -= pi(e);
        }
        if (mass > 0.0 && mass <= 0.5) best = std::min(best, flow / mass);
    }
    return best;
}

double min_update_probability(const GibbsModel& m) {
    double best = 1.0;
    for (double lam : m.activities_d)
        best = std::min({best, 1.0 / (1.0 + lam), lam / (1.0 + lam)});
    return best;
}

ChainDiagnostics diagnose(const GibbsModel& m, int site_cap, int conductance_cap) {
    ChainDiagnostics d;
    d.sites = m.site_count();
    auto cm = transition_matrix<double>(m, site_cap);
    d.support = cm.support.size();
    Eigen::MatrixXd p = to_matrix(cm);
    Eigen::VectorXd pi = stationary_of(cm);
    d.pi_min = pi.minCoeff();
    d.t_mix = mixing_time_exact(p, pi);
    d.gap = spectral_gap(p, pi);
    if (d.support <= conductance_cap && d.support >= 2) {
        d.conductance = conductance_exact(p, pi);
        d.conductance_is_exact = true;
    } else {
        d.conductance =
            2.0 * d.pi_min / std::max(1, d.sites) * min_update_probability(m);
        d.conductance_is_exact = false;
    }
    return d;
}

namespace {

struct RatioCache {
    const GibbsModel& m;
    std::unordered_map<std::string, std::vector<double>> ratios;  // key -> per-site R (or -1)

    explicit RatioCache(const GibbsModel& model) : m(model) {}

    static std::string key_of(const Pinning& p, int nsites) {
        std::string k(nsites, '.');
        for (const auto& [site, value] : p.assignments) k[site] = value > 0 ? '+' : '-';
        return k;
    }

    // R^{pinning}(w) for every free site w; -1 marks pinned sites.
    const std::vector<double>& get(const Pinning& p) {
        std::string key = key_of(p, m.site_count());
        auto it = ratios.find(key);
        if (it != ratios.end()) return it->second;
        PinnedReduction red = apply_pinning(m, p);
        auto st = enumerate<double>(red.model);
        std::vector<double> r(m.site_count(), -1.0);
        for (int v = 0; v < m.site_count(); ++v) {
            if (p.pins(v)) continue;
            if (red.site_map[v] < 0) {
                r[v] = 0.0;  // frozen off by a +1 neighbor
                continue;
            }
            double mu = detail::plus_probability(st, red.site_map[v]);
            r[v] = mu / (1.0 - mu);
        }
        return ratios.emplace(std::move(key), std::move(r)).first->second;
    }
};

}  // namespace

StabilityReport stability_report(const GibbsModel& m, double zeta, int exhaustive_cap,
                                 int samples, uint64_t seed) {
    const int n = m.site_count();
    StabilityReport rep;
    rep.zeta = zeta;
    RatioCache cache(m);

    const bool homogeneous =
        std::adjacent_find(m.activities.begin(), m.activities.end(), std::not_equal_to<>()) ==
        m.activities.end();
    const double lam0 = m.activities_d.empty() ? 1.0 : m.activities_d[0];

    auto check_pair = [&](const Pinning& full, const Pinning& sub) {
        const auto& r_full = cache.get(full);
        const auto& r_sub = cache.get(sub);
        rep.pinnings += 1;
        for (int w = 0; w < n; ++w) {
            if (full.pins(w)) continue;
            rep.max_ratio = std::max(rep.max_ratio, r_full[w]);
            if (r_sub[w] > 0.0)
                rep.max_nested_ratio = std::max(rep.max_nested_ratio, r_full[w] / r_sub[w]);
            else if (r_full[w] != 0.0)
                rep.max_nested_ratio = std::numeric_limits<double>::infinity();
            // hard-core floor when no +1-pinned neighbor under the sub-pinning
            if (homogeneous && m.kind == ModelKind::HardcoreVertices) {
                bool plus_nbr = false;
                for (int u : m.sites.adjacency[w]) {
                    auto it = sub.assignments.find(u);
                    if (it != sub.assignments.end() && it->second == 1) plus_nbr = true;
                }
                if (!plus_nbr) {
                    double floor = lam0 / (std::pow(1.0 + lam0, m.sites.degree(w) + 1) - lam0);
                    if (r_sub[w] < floor * (1.0 - 1e-9)) rep.lower_bound_ok = false;
                }
            }
        }
    };

    if (n <= exhaustive_cap) {
        // every Lambda, every feasible tau, every S subset of Lambda
        std::vector<int> pinned_sites;
        Pinning full;
        std::vector<int> occupied_nbrs(n, 0);
        auto rec = [&](auto&& self, int site) -> void {
            if (site == n) {
                const int k = static_cast<int>(pinned_sites.size());
                for (uint32_t sub = 0; sub < (uint32_t(1) << k); ++sub) {
                    Pinning s;
                    for (int i = 0; i < k; ++i)
                        if (sub >> i & 1)
                            s.assignments[pinned_sites[i]] = full.value(pinned_sites[i]);
                    check_pair(full, s);
                }
                return;
            }
            self(self, site + 1);
            pinned_sites.push_back(site);
            full.assignments[site] = -1;
            self(self, site + 1);
            if (occupied_nbrs[site] == 0) {
                full.assignments[site] = 1;
                for (int w : m.sites.adjacency[site]) ++occupied_nbrs[w];
                self(self, site + 1);
                for (int w : m.sites.adjacency[site]) --occupied_nbrs[w];
            }
            full.assignments.erase(site);
            pinned_sites.pop_back();
        };
        rec(rec, 0);
    } else {
        SplitMix64 rng = SplitMix64(seed).substream("stability-samples");
        for (int trial = 0; trial < samples; ++trial) {
            Pinning full, sub;
            std::vector<int> occupied_nbrs(n, 0);
            for (int v = 0; v < n; ++v) {
                double u = rng.uniform();
                if (u < 1.0 / 3.0) continue;  // free
                int value = -1;
                if (u > 2.0 / 3.0 && occupied_nbrs[v] == 0) value = 1;
                full.assignments[v] = value;
                if (value == 1)
                    for (int w : m.sites.adjacency[v]) ++occupied_nbrs[w];
                if (rng.bernoulli(0.5)) sub.assignments[v] = value;
            }
            check_pair(full, sub);
        }
    }
    rep.pass = rep.max_ratio <= zeta && rep.max_nested_ratio <= zeta && rep.lower_bound_ok;
    return rep;
}

}  // namespace glauber
