#include "glauber/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "glauber/rng.hpp"

namespace glauber {

double at_bound_hardcore(int k, double lambda, std::optional<double> eta) {
    if (k < 1) throw ParameterError("at_bound_hardcore: k >= 1");
    if (!(lambda > 0.0)) throw ParameterError("at_bound_hardcore: lambda > 0");
    const double base = 1.0 + lambda + 1.0 / lambda;
    double first = 2.0 * k * k * std::pow(base, 2.0 * k + 2.0);
    if (!eta) return first;
    double second = 3.0 * std::log(base) * std::pow((1.0 + lambda) * k, 2.0 + 2.0 * (*eta));
    return std::min(first, second);
}

double at_bound_monomer_dimer(int k, double lambda) { return at_bound_hardcore(k, lambda); }

double si_alpha(const SIParams& si) {
    if (!(si.eta > 0.0) || !(si.xi > 0.0) || !(si.zeta > 0.0))
        throw ParameterError("si_alpha: parameters must be positive");
    return std::min(1.0 / (2.0 * si.eta),
                    std::log1p(si.xi) / (std::log1p(si.xi) + std::log(2.0 * si.zeta)));
}

EntropyBounds alpha_and_block_c(const SIParams& si, int n, int ell) {
    EntropyBounds out;
    out.alpha = si_alpha(si);
    if (ell < 1 || ell >= n) throw ParameterError("alpha_and_block_c: need 1 <= ell < n");
    if (static_cast<double>(ell) < 1.0 / out.alpha)
        throw ParameterError("alpha_and_block_c: ell < 1/alpha violates the hypothesis");
    out.ell = ell;
    out.block_c = std::pow(std::exp(1.0) * n / ell, 1.0 + 1.0 / out.alpha);
    return out;
}

long long tmix_upper_from_at(double c_at, int n, double mu_min) {
    if (!(mu_min > 0.0 && mu_min < 1.0)) throw ParameterError("tmix_upper_from_at: mu_min in (0,1)");
    if (!(c_at >= 0.0)) throw ParameterError("tmix_upper_from_at: nonnegative constant required");
    double loglog = std::max(0.0, std::log(std::log(1.0 / mu_min)));
    return static_cast<long long>(std::ceil(c_at * n * (loglog + std::log(2.0) + 2.0)));
}

double md_theta(double lambda, int max_degree) {
    if (max_degree < 2) throw ParameterError("md_theta: requires max degree >= 2");
    if (!(lambda > 0.0)) throw ParameterError("md_theta: lambda > 0");
    const double base = 1.0 + lambda + 1.0 / lambda;
    return 1.0 / (400.0 * std::exp(1.0) * max_degree * base * base);
}

std::string functional_check_csv(const std::string& model, const std::string& inequality,
                                 double constant, const FunctionalCheck& check) {
    std::ostringstream out;
    out << model << ',' << inequality << ',' << constant << ',' << check.max_ratio << ','
        << check.functions << ',' << (check.pass ? 1 : 0);
    return out.str();
}

std::vector<std::vector<double>> test_functions(const SupportTable<double>& st, int trials,
                                                uint64_t seed) {
    std::vector<std::vector<double>> fs;
    SplitMix64 rng = SplitMix64(seed).substream("entropy-test-functions");
    for (int t = 0; t < trials; ++t) {
        std::vector<double> f(st.size());
        for (auto& v : f) v = std::exp(-3.0 + 6.0 * rng.uniform());
        fs.push_back(std::move(f));
    }
    // indicators reach toward the extremal ratio; zeros are exact (0 log 0 = 0)
    for (int i = 0; i < st.size(); ++i) {
        std::vector<double> f(st.size(), 0.0);
        f[i] = 1.0;
        fs.push_back(f);
        for (auto& v : f) v += 1e-9;
        fs.push_back(std::move(f));
    }
    return fs;
}

namespace {

struct RatioAccumulator {
    FunctionalCheck out;
    double c = 0.0;

    void add(double ent, double rhs) {
        out.functions += 1;
        if (rhs <= 0.0) {
            // by ergodicity the right side vanishes only for constant f
            if (ent > 1e-12) out.max_ratio = std::numeric_limits<double>::infinity();
            return;
        }
        out.max_ratio = std::max(out.max_ratio, ent / rhs);
    }

    FunctionalCheck finish() {
        out.pass = out.max_ratio <= c * (1.0 + 1e-12);
        return out;
    }
};

uint32_t singleton_mask(int v) { return uint32_t(1) << v; }

}  // namespace

FunctionalCheck verify_tensorization(const GibbsModel& m, double c, int trials, uint64_t seed) {
    auto st = enumerate<double>(m);
    const int n = m.site_count();
    std::vector<ConditioningGroups> by_site;
    by_site.reserve(n);
    for (int v = 0; v < n; ++v) by_site.push_back(group_by_boundary(st, singleton_mask(v)));
    RatioAccumulator acc;
    acc.c = c;
    for (const auto& f : test_functions(st, trials, seed)) {
        double ent = entropy_functional(st, f);
        double rhs = 0.0;
        for (int v = 0; v < n; ++v) {
            const auto& g = by_site[v];
            for (size_t k = 0; k < g.groups.size(); ++k)
                rhs += g.group_prob[k] * entropy_of_group(st, g.groups[k], f);
        }
        acc.add(ent, rhs);
    }
    return acc.finish();
}

FunctionalCheck verify_block_factorization(const GibbsModel& m, int ell, double c, int trials,
                                           uint64_t seed) {
    const int n = m.site_count();
    if (ell < 1 || ell > n) throw ParameterError("verify_block_factorization: 1 <= ell <= n");
    if (n > 12 || ell > 6)
        throw SizeCapError("verify_block_factorization: exact subset sums capped at n<=12, ell<=6");
    auto st = enumerate<double>(m);
    std::vector<ConditioningGroups> blocks;
    std::vector<int> pick(ell);
    for (int i = 0; i < ell; ++i) pick[i] = i;
    double binom = 1.0;
    for (;;) {
        uint32_t mask = 0;
        for (int i : pick) mask |= singleton_mask(i);
        blocks.push_back(group_by_boundary(st, mask));
        int i = ell - 1;
        while (i >= 0 && pick[i] == n - ell + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < ell; ++j) pick[j] = pick[j - 1] + 1;
    }
    binom = static_cast<double>(blocks.size());
    RatioAccumulator acc;
    acc.c = c;
    for (const auto& f : test_functions(st, trials, seed)) {
        double ent = entropy_functional(st, f);
        double sum = 0.0;
        for (const auto& g : blocks)
            for (size_t k = 0; k < g.groups.size(); ++k)
                sum += g.group_prob[k] * entropy_of_group(st, g.groups[k], f);
        acc.add(ent, sum / binom);
    }
    return acc.finish();
}

FunctionalCheck verify_component_decomposition(const GibbsModel& m, int trials, uint64_t seed) {
    const int n = m.site_count();
    if (n > 12) throw SizeCapError("verify_component_decomposition: capped at 12 sites");
    auto st = enumerate<double>(m);
    auto fs = test_functions(st, trials, seed);
    FunctionalCheck out;
    out.pass = true;
    for (uint32_t s_mask = 1; s_mask < (uint32_t(1) << n); ++s_mask) {
        // connected components of the induced subgraph on S
        std::vector<uint32_t> components;
        {
            uint32_t rest = s_mask;
            while (rest) {
                int v = __builtin_ctz(rest);
                uint32_t comp = 0;
                std::vector<int> stack{v};
                comp |= singleton_mask(v);
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    for (int w : m.sites.adjacency[u])
                        if ((s_mask >> w & 1) && !(comp >> w & 1)) {
                            comp |= singleton_mask(w);
                            stack.push_back(w);
                        }
                }
                components.push_back(comp);
                rest &= ~comp;
            }
        }
        ConditioningGroups outer = group_by_boundary(st, s_mask);
        for (size_t k = 0; k < outer.groups.size(); ++k) {
            const auto& group = outer.groups[k];
            double zg = 0.0;
            for (int i : group) zg += st.weights[i];
            // per-component refinements of this boundary group, with the
            // conditional mass of each cell
            std::vector<std::pair<double, std::vector<int>>> cells;
            for (uint32_t comp : components) {
                std::unordered_map<uint32_t, std::vector<int>> inner;
                for (int i : group) inner[st.configs[i] & ~comp].push_back(i);
                for (auto& [key, idxs] : inner) {
                    double zi = 0.0;
                    for (int i : idxs) zi += st.weights[i];
                    cells.emplace_back(zi / zg, std::move(idxs));
                }
            }
            for (const auto& f : fs) {
                double lhs = entropy_of_group(st, group, f);
                double rhs = 0.0;
                for (const auto& [mass, idxs] : cells)
                    rhs += mass * entropy_of_group(st, idxs, f);
                out.functions += 1;
                if (lhs > rhs + 1e-9) out.pass = false;
                if (rhs > 0.0) out.max_ratio = std::max(out.max_ratio, lhs / rhs);
            }
        }
    }
    return out;
}

}  // namespace glauber
