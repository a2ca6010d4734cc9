#include "glauber/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "glauber/graph.hpp"
#include "glauber/sawtree.hpp"

namespace glauber {

namespace {

// Tarjan strongly connected components on the positive-entry pattern.
std::vector<std::vector<int>> strong_components(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> idx(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::vector<int>> comps;
    int counter = 0;
    std::function<void(int)> dfs = [&](int v) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (int w = 0; w < n; ++w) {
            if (m(v, w) <= 0.0) continue;
            if (idx[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], idx[w]);
            }
        }
        if (low[v] == idx[v]) {
            comps.emplace_back();
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comps.back().push_back(w);
            } while (w != v);
        }
    };
    for (int v = 0; v < n; ++v)
        if (idx[v] < 0) dfs(v);
    return comps;
}

double block_perron(const Eigen::MatrixXd& b) {
    const int n = static_cast<int>(b.rows());
    if (n == 1) return b(0, 0);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    constexpr int kMaxIter = 10000;
    constexpr double kRelTol = 1e-10;
    for (int it = 0; it < kMaxIter; ++it) {
        Eigen::VectorXd y = b * x + x;  // primitive shift keeps the iterate positive
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < n; ++i) {
            double ratio = y(i) / x(i);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi - lo <= kRelTol * hi) return (lo + hi) / 2.0 - 1.0;
        x = y / y.sum();
    }
    throw ConvergenceError("spectral_radius: power iteration did not converge");
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw ParameterError("spectral_radius: matrix must be square");
    if (m.rows() == 0) return 0.0;
    if (m.minCoeff() < 0.0) throw ParameterError("spectral_radius: matrix must be nonnegative");
    double rho = 0.0;
    for (const auto& comp : strong_components(m)) {
        Eigen::MatrixXd block(comp.size(), comp.size());
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = 0; j < comp.size(); ++j) block(i, j) = m(comp[i], comp[j]);
        rho = std::max(rho, block_perron(block));
    }
    return rho;
}

double perron_upper_bound_charpoly(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 0.0;
    if (n > 12) throw SizeCapError("perron_upper_bound_charpoly: dimension cap is 12");
    // Faddeev-LeVerrier: p(x) = x^n + c[1] x^(n-1) + ... + c[n].
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        mk = (m * mk + c[k - 1] * Eigen::MatrixXd::Identity(n, n)).eval();
        c[k] = -(m * mk).trace() / k;
    }
    // all derivatives of p nonnegative at x => no real root exceeds x
    auto all_derivs_nonneg = [&](double x) {
        std::vector<double> coeff(n + 1);
        for (int i = 0; i <= n; ++i) coeff[i] = c[i];
        // repeated synthetic division by (t - x): remainders are p(x), p'(x)/1!, ...
        for (int round = 0; round <= n; ++round) {
            double acc = coeff[0];
            for (int i = 1; i <= n - round; ++i) {
                acc = acc * x + coeff[i];
                coeff[i] = acc;
            }
            if (acc < -1e-13) return false;
        }
        return true;
    };
    double hi = 1.0;
    for (int i = 1; i <= n; ++i) hi = std::max(hi, 2.0 * std::abs(c[i]));
    double lo = 0.0;
    if (all_derivs_nonneg(0.0)) return 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2.0;
        (all_derivs_nonneg(mid) ? hi : lo) = mid;
    }
    return hi;
}

double weighted_inf_norm(const Eigen::MatrixXd& m, const std::vector<int>& degrees, double chi) {
    if (!(chi > 1.0 && chi < 2.0)) throw ParameterError("weighted_inf_norm: chi must be in (1,2)");
    if (m.rows() != m.cols() || static_cast<int>(degrees.size()) != m.rows())
        throw ParameterError("weighted_inf_norm: degree vector must match the matrix");
    const int n = static_cast<int>(m.rows());
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i)
        d[i] = degrees[i] >= 1 ? std::pow(static_cast<double>(degrees[i]), 1.0 / chi) : 1.0;
    double norm = 0.0;
    for (int v = 0; v < n; ++v) {
        double row = 0.0;
        for (int u = 0; u < n; ++u) row += std::abs(m(v, u)) * d[u] / d[v];
        norm = std::max(norm, row);
    }
    return norm;
}

Eigen::MatrixXd abs_influence(const InfluenceTable<double>& table) {
    const int k = static_cast<int>(table.sites.size());
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = std::abs(table.entries[i][j]);
    return m;
}

std::string SICertificate::to_json() const {
    std::ostringstream out;
    out << "{\"model\":\"" << model << "\",\"eta_required\":" << eta_required
        << ",\"eta_observed\":" << eta_observed << ",\"pinnings\":" << pinning_count
        << ",\"pass\":" << (pass ? "true" : "false") << ",\"grid\":[";
    for (size_t i = 0; i < field_grid.size(); ++i)
        out << (i ? "," : "") << field_grid[i];
    out << "]}";
    return out.str();
}

namespace {

// Visit every feasible pinning of at most max_pinned sites; callback gets
// the pinning and its size.
void for_each_pinning(const GibbsModel& m, int max_pinned,
                      const std::function<void(const Pinning&, int)>& visit) {
    const int n = m.site_count();
    Pinning p;
    std::vector<int> occupied_nbrs(n, 0);
    auto rec = [&](auto&& self, int site, int pinned) -> void {
        if (site == n) {
            visit(p, pinned);
            return;
        }
        self(self, site + 1, pinned);  // site left free
        if (pinned < max_pinned) {
            p.assignments[site] = -1;
            self(self, site + 1, pinned + 1);
            if (occupied_nbrs[site] == 0) {
                p.assignments[site] = 1;
                for (int w : m.sites.adjacency[site]) ++occupied_nbrs[w];
                self(self, site + 1, pinned + 1);
                for (int w : m.sites.adjacency[site]) --occupied_nbrs[w];
            }
            p.assignments.erase(site);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

SICertificate certify_spectral_independence(const GibbsModel& m, double eta, int site_cap) {
    const int n = m.site_count();
    if (n > site_cap) throw SizeCapError("certify_spectral_independence: site cap exceeded");
    SICertificate cert;
    cert.eta_required = eta;
    cert.eta_by_pinned_count.assign(std::max(0, n - 2) + 1, 0.0);
    for_each_pinning(m, std::max(0, n - 2), [&](const Pinning& p, int pinned) {
        auto table = influence_matrix<double>(m, p);
        double rho = spectral_radius(abs_influence(table));
        cert.eta_observed = std::max(cert.eta_observed, rho);
        cert.eta_by_pinned_count[pinned] = std::max(cert.eta_by_pinned_count[pinned], rho);
        cert.pinning_count += 1;
    });
    cert.pass = cert.eta_observed <= eta;
    return cert;
}

SICertificate certify_complete_si(const GibbsModel& m, double eta, double xi,
                                  std::vector<double> grid, int site_cap) {
    if (!(xi >= 0.0)) throw ParameterError("certify_complete_si: xi must be >= 0");
    const int n = m.site_count();
    if (n > site_cap) throw SizeCapError("certify_complete_si: site cap exceeded");
    if (grid.empty()) grid = {0.1, 0.5, 1.0, 1.0 + xi};
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (double v : grid)
        if (!(v > 0.0 && v <= 1.0 + xi + 1e-12))
            throw ParameterError("certify_complete_si: grid values must lie in (0, 1+xi]");
    SICertificate cert;
    cert.eta_required = eta;
    cert.field_grid = grid;
    cert.eta_by_pinned_count.assign(std::max(0, n - 2) + 1, 0.0);
    std::vector<double> fields(n, grid.empty() ? 1.0 : grid[0]);
    std::vector<size_t> pick(n, 0);
    for (;;) {
        for (int v = 0; v < n; ++v) fields[v] = grid[pick[v]];
        SICertificate inner = certify_spectral_independence(magnetize(m, fields), eta, site_cap);
        cert.eta_observed = std::max(cert.eta_observed, inner.eta_observed);
        cert.pinning_count += inner.pinning_count;
        for (size_t k = 0; k < inner.eta_by_pinned_count.size(); ++k)
            cert.eta_by_pinned_count[k] =
                std::max(cert.eta_by_pinned_count[k], inner.eta_by_pinned_count[k]);
        int carry = 0;
        while (carry < n && ++pick[carry] == grid.size()) pick[carry++] = 0;
        if (carry == n) break;
    }
    cert.pass = cert.eta_observed <= eta;
    return cert;
}

TotalInfluenceReport total_influence_report(const Graph& g, int r, const GibbsModel& m, double d) {
    const double lc = lambda_critical(d);
    for (double a : m.activities_d)
        if (!(a < lc)) throw ParameterError("total_influence_report: activity >= lambda_c(d)");
    TotalInfluenceReport rep;
    rep.chi = potential_params(d).chi;
    rep.deg_r = g.degree(r);
    BranchingReport br = branching_value(g, r, d);
    rep.alpha = br.value;
    SawTree t = build_saw_tree(g, r);
    auto ratios = tree_ratios<double>(t, m);
    auto tree_inf = tree_influence_row<double>(t, ratios);
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        if (static_cast<int>(i) == t.root) continue;
        int deg_t = static_cast<int>(t.nodes[i].children.size()) + 1;
        rep.tree_side += std::abs(tree_inf[i]) * std::pow(deg_t, 1.0 / rep.chi);
    }
    std::vector<double> row(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
        if (v == r) continue;
        for (int u : t.copies[v]) row[v] += tree_inf[u];
    }
    for (int v = 0; v < g.n; ++v) {
        if (v == r || g.degree(v) == 0) continue;
        rep.lhs += std::abs(row[v]) * std::pow(g.degree(v), 1.0 / rep.chi);
    }
    double denom = std::pow(rep.alpha * rep.deg_r, 1.0 / rep.chi);
    rep.ratio = denom > 0.0 ? rep.lhs / denom : 0.0;
    return rep;
}

SssyResult sssy_check(double d, double lambda, const std::vector<double>& x) {
    if (!(lambda > 0.0)) throw ParameterError("sssy_check: lambda must be positive");
    if (!(lambda < lambda_critical(d))) throw ParameterError("sssy_check: lambda >= lambda_c(d)");
    if (x.empty()) throw ParameterError("sssy_check: need k >= 1");
    PotentialParams pp = potential_params(d);
    double x_next = lambda;
    for (double xi : x) {
        if (xi < 0.0) throw ParameterError("sssy_check: x_i must be >= 0");
        x_next /= 1.0 + xi;
    }
    // Phi(y)^a * sum (y/((1+x_i)Phi(x_i)))^a collapses to the stable form
    // (y/(1+y))^(a/2) * sum (x_i/(1+x_i))^(a/2); the x_i = 0 term vanishes.
    double half_a = pp.a / 2.0;
    double sum = 0.0;
    for (double xi : x)
        if (xi > 0.0) sum += std::pow(xi / (1.0 + xi), half_a);
    SssyResult res;
    res.x_next = x_next;
    res.lhs = std::pow(x_next / (1.0 + x_next), half_a) * sum;
    return res;
}

KappaEstimate estimate_kappa(double d, double lambda, int k_max, int grid_points) {
    if (k_max < 1) throw ParameterError("estimate_kappa: k_max >= 1");
    PotentialParams pp = potential_params(d);
    const double x_cap = lambda;  // hard-core ratios never exceed lambda
    KappaEstimate best;
    best.grid_points = grid_points;
    best.k_max = k_max;
    auto consider = [&](const std::vector<double>& x) {
        double lhs = sssy_check(d, lambda, x).lhs;
        double kappa = lhs > 0.0 ? std::pow(lhs, pp.chi / pp.a) : 0.0;
        if (kappa > best.kappa) {
            best.kappa = kappa;
            best.k_of_max = static_cast<int>(x.size());
            best.argmax = x;
        }
    };
    auto ascend = [&](std::vector<double> x) {
        for (int pass = 0; pass < 6; ++pass) {
            for (size_t i = 0; i < x.size(); ++i) {
                double step = x_cap / 8.0;
                while (step > 1e-7 * (1.0 + x_cap)) {
                    double base = x[i];
                    double best_v = base;
                    consider(x);
                    double best_lhs = sssy_check(d, lambda, x).lhs;
                    for (double cand : {base - step, base + step}) {
                        if (cand < 0.0 || cand > x_cap) continue;
                        x[i] = cand;
                        double lhs = sssy_check(d, lambda, x).lhs;
                        if (lhs > best_lhs) {
                            best_lhs = lhs;
                            best_v = cand;
                        }
                    }
                    x[i] = best_v;
                    step /= 2.0;
                }
            }
        }
        consider(x);
    };
    SplitMix64 rng(20240901);
    for (int k = 1; k <= k_max; ++k) {
        std::vector<double> x(k, 0.0);
        if (k <= 3) {
            // dense grid
            std::vector<int> idx(k, 0);
            for (;;) {
                for (int i = 0; i < k; ++i)
                    x[i] = x_cap * static_cast<double>(idx[i]) / (grid_points - 1);
                consider(x);
                int carry = 0;
                while (carry < k && ++idx[carry] == grid_points) idx[carry++] = 0;
                if (carry == k) break;
            }
        }
        // symmetric diagonal grid
        for (int t = 0; t < grid_points; ++t) {
            std::fill(x.begin(), x.end(), x_cap * static_cast<double>(t) / (grid_points - 1));
            consider(x);
        }
        // ascent from the symmetric midpoint and random starts
        ascend(std::vector<double>(k, x_cap / 2.0));
        for (int trial = 0; trial < 12; ++trial) {
            for (int i = 0; i < k; ++i) x[i] = rng.uniform() * x_cap;
            ascend(x);
        }
    }
    return best;
}

double si_gap_bound(int n, double eta, double phi) {
    if (!(phi >= 0.0 && phi < 1.0)) throw ParameterError("si_gap_bound: need 0 <= phi < 1");
    if (!(eta >= 0.0)) throw ParameterError("si_gap_bound: need eta >= 0");
    if (n < 1) throw ParameterError("si_gap_bound: need n >= 1");
    return std::pow(1.0 - phi, 2.0 + 2.0 * eta) / std::pow(static_cast<double>(n), 1.0 + 2.0 * eta);
}

}  // namespace glauber
