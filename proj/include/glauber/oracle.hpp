#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "glauber/model.hpp"

namespace glauber {

inline constexpr int kDefaultSiteCap = 24;

// All feasible configurations (independent sets of the site graph) in
// lexicographic site order with -1 < +1; bit i set means site i is occupied.
template <class W>
struct SupportTable {
    int nsites = 0;
    std::vector<uint32_t> configs;
    std::vector<W> weights;
    W Z{};
    std::unordered_map<uint32_t, int> index;

    int size() const { return static_cast<int>(configs.size()); }
    int index_of(uint32_t cfg) const {
        auto it = index.find(cfg);
        return it == index.end() ? -1 : it->second;
    }
};

template <class W>
SupportTable<W> enumerate(const GibbsModel& m, int site_cap = kDefaultSiteCap) {
    const int n = m.site_count();
    if (n > site_cap) throw SizeCapError("enumerate: site count exceeds cap");
    SupportTable<W> table;
    table.nsites = n;
    std::vector<int> blocked(n, 0);  // occupied-neighbor counts
    uint32_t cfg = 0;
    W weight = scalar_from_double<W>(1.0);
    // Assigning sites in index order, -1 branch first, emits the canonical
    // lexicographic order directly.
    auto rec = [&](auto&& self, int site) -> void {
        if (site == n) {
            table.configs.push_back(cfg);
            table.weights.push_back(weight);
            return;
        }
        self(self, site + 1);
        if (blocked[site] == 0) {
            cfg |= uint32_t(1) << site;
            W saved = weight;
            weight = weight * m.activity<W>(site);
            for (int w : m.sites.adjacency[site]) ++blocked[w];
            self(self, site + 1);
            for (int w : m.sites.adjacency[site]) --blocked[w];
            weight = saved;
            cfg &= ~(uint32_t(1) << site);
        }
    };
    rec(rec, 0);
    table.Z = W{};
    for (const auto& w : table.weights) table.Z += w;
    table.index.reserve(table.configs.size());
    for (int i = 0; i < table.size(); ++i) table.index.emplace(table.configs[i], i);
    return table;
}

template <class W>
struct MarginalRatio {
    bool infinite = false;
    W value{};
};

namespace detail {

template <class W>
W plus_probability(const SupportTable<W>& st, int site) {
    W num{};
    for (int i = 0; i < st.size(); ++i)
        if (st.configs[i] >> site & 1) num += st.weights[i];
    return num / st.Z;
}

}  // namespace detail

// Exact conditional marginal mu_site(+1 | pinning).
template <class W>
W marginal(const GibbsModel& m, int site, const Pinning& p = {}) {
    if (p.pins(site)) throw ParameterError("marginal: site is pinned");
    PinnedReduction red = apply_pinning(m, p);
    if (red.site_map[site] < 0) return W{};  // forced off by a +1 neighbor
    auto st = enumerate<W>(red.model);
    return detail::plus_probability(st, red.site_map[site]);
}

template <class W>
MarginalRatio<W> marginal_ratio(const GibbsModel& m, int site, const Pinning& p = {}) {
    W mu = marginal<W>(m, site, p);
    W one = scalar_from_double<W>(1.0);
    if (mu == one) return {true, W{}};
    return {false, mu / (one - mu)};
}

// Signed pairwise influence over unpinned sites: entry (w,u) is
// mu_u(+|w=+) - mu_u(+|w=-) when both conditionings are feasible, zero when
// w is effectively frozen. Diagonal is zero. The absolute-value matrix is
// the one whose spectral radius is bounded downstream.
template <class W>
struct InfluenceTable {
    std::vector<int> sites;                // unpinned site ids, ascending
    std::vector<std::vector<W>> entries;   // signed
    const char* provenance = "oracle";     // or "saw-tree"
};

template <class W>
InfluenceTable<W> influence_matrix(const GibbsModel& m, const Pinning& p = {}) {
    PinnedReduction red = apply_pinning(m, p);
    InfluenceTable<W> out;
    out.provenance = "oracle";
    for (int v = 0; v < m.site_count(); ++v)
        if (!p.pins(v)) out.sites.push_back(v);
    const int k = static_cast<int>(out.sites.size());
    out.entries.assign(k, std::vector<W>(k, W{}));
    auto st = enumerate<W>(red.model);
    for (int wi = 0; wi < k; ++wi) {
        int w_red = red.site_map[out.sites[wi]];
        if (w_red < 0) continue;  // frozen: zero row
        W z_plus{}, z_minus{};
        std::vector<W> occ_plus(k, W{}), occ_minus(k, W{});
        for (int c = 0; c < st.size(); ++c) {
            bool w_on = st.configs[c] >> w_red & 1;
            (w_on ? z_plus : z_minus) += st.weights[c];
            auto& occ = w_on ? occ_plus : occ_minus;
            for (int ui = 0; ui < k; ++ui) {
                int u_red = red.site_map[out.sites[ui]];
                if (u_red >= 0 && (st.configs[c] >> u_red & 1)) occ[ui] += st.weights[c];
            }
        }
        if (z_plus == W{} || z_minus == W{}) continue;  // w takes one value only
        for (int ui = 0; ui < k; ++ui) {
            if (ui == wi) continue;
            if (red.site_map[out.sites[ui]] < 0) continue;
            out.entries[wi][ui] = occ_plus[ui] / z_plus - occ_minus[ui] / z_minus;
        }
    }
    return out;
}

inline double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw ParameterError("tv_distance: length mismatch");
    double sp = 0.0, sq = 0.0, acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        sp += p[i];
        sq += q[i];
        acc += std::abs(p[i] - q[i]);
    }
    if (std::abs(sp - 1.0) > 1e-12 || std::abs(sq - 1.0) > 1e-12)
        throw ParameterError("tv_distance: inputs must sum to 1");
    return acc / 2.0;
}

// Ent(f) = mu(f log(f/mu(f))) with the 0 log 0 = 0 convention.
double entropy_functional(const SupportTable<double>& st, const std::vector<double>& f);

// Average over boundary configurations tau on the complement of S of the
// entropy of f under mu(. | tau) restricted to S. `s_mask` has bit v set
// for v in S.
double conditional_entropy_average(const SupportTable<double>& st, const std::vector<double>& f,
                                   uint32_t s_mask);

// Debug dump: one "bitstring,weight" row per configuration, site 0 first.
void dump_support_csv(const SupportTable<double>& st, std::ostream& out);

// Index of configs grouped by their restriction outside S; reused by the
// entropy verifiers.
struct ConditioningGroups {
    uint32_t s_mask = 0;
    std::vector<std::vector<int>> groups;  // each: config indices sharing a boundary
    std::vector<double> group_prob;
};
ConditioningGroups group_by_boundary(const SupportTable<double>& st, uint32_t s_mask);

double entropy_of_group(const SupportTable<double>& st, const std::vector<int>& group,
                        const std::vector<double>& f);

}  // namespace glauber
