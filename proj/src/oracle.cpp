#include "glauber/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace glauber {

double entropy_of_group(const SupportTable<double>& st, const std::vector<int>& group,
                        const std::vector<double>& f) {
    double z = 0.0;
    for (int i : group) z += st.weights[i];
    double mean = 0.0;
    for (int i : group) {
        if (f[i] < 0.0) throw ParameterError("entropy: f must be nonnegative");
        mean += st.weights[i] / z * f[i];
    }
    if (mean <= 0.0) return 0.0;  // f vanishes on the support: Ent = 0
    double ent = 0.0;
    for (int i : group)
        if (f[i] > 0.0) ent += st.weights[i] / z * f[i] * std::log(f[i] / mean);
    return std::max(ent, 0.0);
}

double entropy_functional(const SupportTable<double>& st, const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != st.size())
        throw ParameterError("entropy: f must match the support table");
    std::vector<int> all(st.size());
    for (int i = 0; i < st.size(); ++i) all[i] = i;
    return entropy_of_group(st, all, f);
}

void dump_support_csv(const SupportTable<double>& st, std::ostream& out) {
    out << "config,weight\n";
    for (int i = 0; i < st.size(); ++i) {
        for (int s = 0; s < st.nsites; ++s) out << (st.configs[i] >> s & 1);
        out << ',' << st.weights[i] << '\n';
    }
}

ConditioningGroups group_by_boundary(const SupportTable<double>& st, uint32_t s_mask) {
    ConditioningGroups g;
    g.s_mask = s_mask;
    std::unordered_map<uint32_t, int> by_boundary;
    for (int i = 0; i < st.size(); ++i) {
        uint32_t boundary = st.configs[i] & ~s_mask;
        auto [it, inserted] = by_boundary.emplace(boundary, static_cast<int>(g.groups.size()));
        if (inserted) {
            g.groups.emplace_back();
            g.group_prob.push_back(0.0);
        }
        g.groups[it->second].push_back(i);
        g.group_prob[it->second] += st.weights[i];
    }
    double z = 0.0;
    for (double w : g.group_prob) z += w;
    for (double& w : g.group_prob) w /= z;
    return g;
}

double conditional_entropy_average(const SupportTable<double>& st, const std::vector<double>& f,
                                   uint32_t s_mask) {
    ConditioningGroups g = group_by_boundary(st, s_mask);
    double acc = 0.0;
    for (size_t k = 0; k < g.groups.size(); ++k)
        acc += g.group_prob[k] * entropy_of_group(st, g.groups[k], f);
    return acc;
}

}  // namespace glauber
