// Acceptance suite: runs the toolkit's correctness criteria end to end and
// prints one [PASS]/[FAIL] line per criterion.
//
//   acceptance --criterion N   run criterion N (1..12)
//   acceptance --all           run everything
//
// Exit code 0 iff every requested criterion passed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "glauber/dynamics.hpp"
#include "glauber/entropy.hpp"
#include "glauber/graph.hpp"
#include "glauber/model.hpp"
#include "glauber/oracle.hpp"
#include "glauber/sawtree.hpp"
#include "glauber/spectral.hpp"

using namespace glauber;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

const std::vector<Rational>& lambda_grid() {
    static const std::vector<Rational> grid{Rational(1, 2), Rational(1), Rational(2)};
    return grid;
}

const std::vector<Graph>& census_upto6(int n) {
    static std::map<int, std::vector<Graph>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, connected_census(n)).first;
    return it->second;
}

std::vector<Graph> random_connected_78() {
    auto a = random_connected_graphs(7, 100, 0.15, 2024001);
    auto b = random_connected_graphs(8, 100, 0.15, 2024002);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void parallel_for(int count, const std::function<void(int)>& body) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("GLAUBER_LAB_THREADS");
    if (env && std::atoi(env) > 0) workers = static_cast<unsigned>(std::atoi(env));
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

// Oracle route for the signed influence row at r (row only, not the matrix).
template <class W>
std::vector<W> oracle_signed_row(const GibbsModel& m, int r) {
    auto st = enumerate<W>(m);
    const int n = m.site_count();
    W z_plus{}, z_minus{};
    std::vector<W> occ_plus(n, W{}), occ_minus(n, W{});
    for (int c = 0; c < st.size(); ++c) {
        bool on = st.configs[c] >> r & 1;
        (on ? z_plus : z_minus) += st.weights[c];
        auto& occ = on ? occ_plus : occ_minus;
        for (int u = 0; u < n; ++u)
            if (st.configs[c] >> u & 1) occ[u] += st.weights[c];
    }
    std::vector<W> row(n, W{});
    if (z_plus == W{} || z_minus == W{}) return row;
    for (int u = 0; u < n; ++u)
        if (u != r) row[u] = occ_plus[u] / z_plus - occ_minus[u] / z_minus;
    return row;
}

Rational rational_abs(const Rational& q) { return q < 0 ? -q : q; }

// ---------------------------------------------------------------- C1
CriterionResult criterion1() {
    long long checked = 0;
    auto check_graph = [&](const Graph& g) {
        for (const Rational& lam : lambda_grid()) {
            GibbsModel m = hardcore(g, lam);
            for (int r = 0; r < g.n; ++r) {
                SawTree t = build_saw_tree(g, r);
                auto tree = tree_root_ratio<Rational>(t, m);
                auto truth = marginal_ratio<Rational>(m, r);
                ++checked;
                if (tree.pinned_plus || truth.infinite || tree.value != truth.value)
                    throw std::runtime_error("root-ratio mismatch");
            }
        }
    };
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : census_upto6(n)) check_graph(g);
    for (const Graph& g : random_connected_78()) check_graph(g);
    std::ostringstream d;
    d << checked << " (graph, root, lambda) root ratios equal the enumeration oracle exactly";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C2
CriterionResult criterion2() {
    long long identities = 0;
    auto check_graph = [&](const Graph& g) {
        for (const Rational& lam : lambda_grid()) {
            GibbsModel m = hardcore(g, lam);
            for (int r = 0; r < g.n; ++r) {
                SawTree t = build_saw_tree(g, r);
                auto ratios = tree_ratios<Rational>(t, m);
                auto inf = tree_influence_row<Rational>(t, ratios);
                auto oracle_row = oracle_signed_row<Rational>(m, r);
                for (int v = 0; v < g.n; ++v) {
                    if (v == r) continue;
                    Rational signed_sum(0), abs_sum(0);
                    for (int u : t.copies[v]) {
                        signed_sum += inf[u];
                        abs_sum += rational_abs(inf[u]);
                    }
                    ++identities;
                    if (signed_sum != oracle_row[v])
                        throw std::runtime_error("signed influence identity failed");
                    if (rational_abs(oracle_row[v]) > abs_sum)
                        throw std::runtime_error("absolute domination failed");
                }
            }
        }
    };
    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : census_upto6(n)) check_graph(g);
    for (const Graph& g : random_connected_78()) check_graph(g);
    std::ostringstream d;
    d << identities << " signed copy-sum identities exact; |I_G| <= sum|I_T| throughout";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C3
CriterionResult criterion3() {
    const double chi2 = potential_params(2.0).chi;
    const double chi3 = potential_params(3.0).chi;
    long long pinnings = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : census_upto6(n)) {
            std::vector<int> degrees(g.n);
            for (int v = 0; v < g.n; ++v) degrees[v] = g.degree(v);
            for (const Rational& lam : lambda_grid()) {
                GibbsModel m = hardcore(g, lam);
                // walk all feasible pinnings (any size up to all sites)
                Pinning p;
                std::vector<int> occupied(g.n, 0);
                auto rec = [&](auto&& self, int site) -> void {
                    if (site == g.n) {
                        std::vector<int> free_deg;
                        for (int v = 0; v < g.n; ++v)
                            if (!p.pins(v)) free_deg.push_back(degrees[v]);
                        if (free_deg.size() < 2) return;
                        auto table = influence_matrix<double>(m, p);
                        Eigen::MatrixXd a = abs_influence(table);
                        double rho = spectral_radius(a);
                        for (double chi : {chi2, chi3}) {
                            double norm = weighted_inf_norm(a, free_deg, chi);
                            worst_slack = std::min(worst_slack, norm - rho);
                            if (rho > norm + 1e-8)
                                throw std::runtime_error("norm domination violated");
                        }
                        ++pinnings;
                        return;
                    }
                    self(self, site + 1);
                    p.assignments[site] = -1;
                    self(self, site + 1);
                    if (occupied[site] == 0) {
                        p.assignments[site] = 1;
                        for (int w : g.adjacency[site]) ++occupied[w];
                        self(self, site + 1);
                        for (int w : g.adjacency[site]) --occupied[w];
                    }
                    p.assignments.erase(site);
                };
                rec(rec, 0);
            }
        }
    std::ostringstream d;
    d << "rho(|I|) <= weighted norm on " << pinnings << " pinned models (min slack "
      << worst_slack << ")";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C4
CriterionResult criterion4() {
    std::ostringstream d;
    bool ok = true;
    for (double dd : {2.0, 3.0, 5.0}) {
        double lam = 0.95 * lambda_critical(dd);
        KappaEstimate est = estimate_kappa(dd, lam, 10);
        double margin = 1.0 / dd - est.kappa;
        ok = ok && margin > 0.0;
        d << "d=" << dd << ": kappa_hat=" << est.kappa << " vs 1/d=" << 1.0 / dd
          << " (margin " << margin << ", argmax k=" << est.k_of_max << ")  ";
    }
    return {ok, d.str()};
}

// ---------------------------------------------------------------- C5
CriterionResult criterion5() {
    long long hc_models = 0, md_models = 0;
    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : census_upto6(n))
            for (const Rational& lam : lambda_grid()) {
                double lam_d = to_double(lam);
                StabilityReport rep = stability_report(hardcore(g, lam), lam_d);
                if (rep.max_ratio > lam_d + 1e-12 || !rep.lower_bound_ok)
                    throw std::runtime_error("hard-core stability failed");
                ++hc_models;
            }
    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : census_upto6(n)) {
            if (g.edge_count() > 6) continue;
            for (const Rational& lam : lambda_grid()) {
                double lam_d = to_double(lam);
                double zeta = std::pow(lam_d + 2.0, 3.0) * g.max_degree() * g.max_degree();
                StabilityReport rep = stability_report(monomer_dimer(g, lam), zeta);
                if (!rep.pass) throw std::runtime_error("monomer-dimer stability failed");
                ++md_models;
            }
        }
    std::ostringstream d;
    d << "R <= lambda and ratio floor on " << hc_models << " hard-core models; zeta=(lambda+2)^3 Delta^2 on "
      << md_models << " matching models";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C6
std::vector<std::pair<std::string, GibbsModel>> fixed_chain_instances() {
    auto path = [](int n) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        return Graph::from_edges(n, std::move(e));
    };
    auto cycle = [&](int n) {
        auto g = path(n).edges;
        g.emplace_back(0, n - 1);
        return Graph::from_edges(n, std::move(g));
    };
    auto star = [](int leaves) {
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
        return Graph::from_edges(leaves + 1, std::move(e));
    };
    auto complete = [](int n) {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
        return Graph::from_edges(n, std::move(e));
    };
    std::vector<std::pair<std::string, GibbsModel>> out;
    out.emplace_back("path5/hc/2", hardcore(path(5), Rational(2)));
    out.emplace_back("cycle6/hc/1", hardcore(cycle(6), Rational(1)));
    out.emplace_back("K4/hc/0.5", hardcore(complete(4), Rational(1, 2)));
    out.emplace_back("star7/hc/1", hardcore(star(7), Rational(1)));
    out.emplace_back("gnp8a/hc/1", hardcore(generate_gnp(8, 2.0, 11), Rational(1)));
    out.emplace_back("gnp8b/hc/0.5", hardcore(generate_gnp(8, 3.0, 12), Rational(1, 2)));
    out.emplace_back("gnp7/hc/2", hardcore(generate_gnp(7, 2.5, 13), Rational(2)));
    out.emplace_back("path4/md/1", monomer_dimer(path(4), Rational(1)));
    out.emplace_back("star4/md/1", monomer_dimer(star(4), Rational(1)));
    out.emplace_back("cycle5/md/0.5", monomer_dimer(cycle(5), Rational(1, 2)));
    return out;
}

CriterionResult criterion6() {
    long long chains = 0;
    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : census_upto6(n))
            for (const Rational& lam : lambda_grid()) {
                if (!detailed_balance_exact(transition_matrix<Rational>(hardcore(g, lam))))
                    throw std::runtime_error("detailed balance violated");
                ++chains;
            }
    auto instances = fixed_chain_instances();
    std::vector<double> tv(instances.size(), 1.0);
    parallel_for(static_cast<int>(instances.size()), [&](int i) {
        const GibbsModel& m = instances[i].second;
        const long long sites = m.site_count();
        RunSummary run =
            run_chain(m, 1000000 * sites, 1000 * sites, sites, 555000 + i);
        tv[i] = empirical_tv(enumerate<double>(m), run.config_counts);
    });
    double worst = *std::max_element(tv.begin(), tv.end());
    if (worst > 0.02) {
        std::ostringstream d;
        d << "empirical TV " << worst << " exceeds 0.02";
        return {false, d.str()};
    }
    std::ostringstream d;
    d << "detailed balance exact on " << chains << " chains; max empirical TV after 1e6 sweeps = "
      << worst << " on " << instances.size() << " fixed instances";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C7
CriterionResult criterion7() {
    long long exact_phi = 0, bounded_phi = 0;
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : census_upto6(n))
            for (const Rational& lam : lambda_grid()) {
                GibbsModel m = hardcore(g, lam);
                double lam_d = to_double(lam);
                ChainDiagnostics diag = diagnose(m);
                double floor = std::min(1.0, std::pow(lam_d, m.site_count())) /
                               std::pow(1.0 + lam_d, m.site_count());
                if (diag.pi_min < floor - 1e-12)
                    throw std::runtime_error("stationary floor violated");
                if (diag.support < 2) continue;
                if (diag.gap < diag.conductance * diag.conductance / 2.0 - 1e-12)
                    throw std::runtime_error("Cheeger inequality violated");
                double lower = 2.0 * diag.pi_min / m.site_count() * min_update_probability(m);
                if (diag.conductance_is_exact) {
                    if (diag.conductance < lower - 1e-12)
                        throw std::runtime_error("conductance floor violated");
                    ++exact_phi;
                } else {
                    ++bounded_phi;
                }
            }
    std::ostringstream d;
    d << "gap >= Phi^2/2, Phi >= (2 pi_min/|M|) min{1/(1+l), l/(1+l)}, pi_min floor on "
      << exact_phi << " exactly-diagnosed chains (" << bounded_phi << " used the labeled bound)";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C8
CriterionResult criterion8() {
    long long models = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 6; ++n) {
        const auto& graphs = census_upto6(n);
        std::mutex mu;
        std::exception_ptr err;
        parallel_for(static_cast<int>(graphs.size()), [&](int gi) {
            try {
                const Graph& g = graphs[gi];
                for (const Rational& lam : lambda_grid()) {
                    GibbsModel m = hardcore(g, lam);
                    double lam_d = to_double(lam);
                    double eta = certify_spectral_independence(m, 1e9).eta_observed;
                    double c_at = at_bound_hardcore(n, lam_d, eta);
                    FunctionalCheck tens = verify_tensorization(m, c_at, 10000, 808000 + gi);
                    if (!tens.pass) throw std::runtime_error("tensorization bound violated");
                    FunctionalCheck comp = verify_component_decomposition(m, 100, 909000 + gi);
                    if (!comp.pass) throw std::runtime_error("component inequality violated");
                    // ell = 1 block factorisation <=> tensorization at C/n
                    FunctionalCheck block =
                        verify_block_factorization(m, 1, c_at * n, 200, 313000 + gi);
                    FunctionalCheck tens_small = verify_tensorization(m, c_at, 200, 313000 + gi);
                    if (block.pass != tens_small.pass ||
                        std::abs(block.max_ratio - n * tens_small.max_ratio) >
                            1e-6 * std::max(1.0, block.max_ratio))
                        throw std::runtime_error("block/tensorization equivalence failed");
                    std::lock_guard<std::mutex> lock(mu);
                    worst_margin = std::min(worst_margin, c_at / tens.max_ratio);
                    ++models;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
            }
        });
        if (err) std::rethrow_exception(err);
    }
    std::ostringstream d;
    d << "tensorization at AT(n, lambda, eta_observed), component inequality, and l=1 equivalence on "
      << models << " models (min C/ratio margin " << worst_margin << ")";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C9
CriterionResult criterion9() {
    long long chains = 0;
    long long worst_gap = std::numeric_limits<long long>::max();
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : census_upto6(n))
            for (const Rational& lam : lambda_grid()) {
                GibbsModel m = hardcore(g, lam);
                auto cm = transition_matrix<double>(m);
                Eigen::MatrixXd p = to_matrix(cm);
                Eigen::VectorXd pi = stationary_of(cm);
                long long exact = mixing_time_exact(p, pi);
                FunctionalCheck tens =
                    verify_tensorization(m, std::numeric_limits<double>::infinity(), 10000,
                                         717000 + 31 * n);
                double c_measured = std::max(1e-12, tens.max_ratio);
                long long bound = tmix_upper_from_at(c_measured, n, pi.minCoeff());
                if (exact > bound) throw std::runtime_error("mixing bound violated");
                worst_gap = std::min(worst_gap, bound - exact);
                ++chains;
            }
    std::ostringstream d;
    d << "t_mix <= ceil(C_measured n (loglog 1/pi_min + log 2 + 2)) on " << chains
      << " chains (min slack " << worst_gap << " steps)";
    return {true, d.str()};
}

// ---------------------------------------------------------------- C10
CriterionResult criterion10() {
    const int seeds = 20;
    std::vector<int> sizes{6, 7, 8, 9, 10, 11, 12, 13, 14};
    struct Point {
        double log_n, log_t;
    };
    std::vector<Point> points(sizes.size() * seeds);
    std::atomic<bool> failed{false};
    parallel_for(static_cast<int>(points.size()), [&](int idx) {
        int n = sizes[idx / seeds];
        uint64_t seed = 90000 + idx % seeds;
        try {
            Graph g = generate_gnp(n, 2.0, seed);
            GibbsModel m = hardcore(g, Rational(1));
            auto cm = transition_matrix<double>(m, 14);
            long long t = mixing_time_exact(to_matrix(cm), stationary_of(cm));
            points[idx] = {std::log(static_cast<double>(n)), std::log(static_cast<double>(t))};
        } catch (...) {
            failed = true;
        }
    });
    if (failed) return {false, "a chain failed to diagnose"};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const Point& p : points) {
        sx += p.log_n;
        sy += p.log_t;
        sxx += p.log_n * p.log_n;
        sxy += p.log_n * p.log_t;
    }
    double n_pts = static_cast<double>(points.size());
    double slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    std::ostringstream d;
    d << "least-squares exponent of t_mix vs n over " << points.size()
      << " exact chains = " << slope << " (threshold 1.6)";
    return {slope <= 1.6, d.str()};
}

// ---------------------------------------------------------------- C11
CriterionResult criterion11() {
    const int seeds = 50;
    const int n = 100000;
    const double log_n = std::log(static_cast<double>(n));
    const double dl = log_n / std::log(log_n);
    const int branching_lmax = 10;  // documented truncation; see README

    std::vector<double> max_branching(seeds, 0.0);
    std::vector<int> max_deg(seeds, 0);
    std::vector<std::vector<long long>> tail_hist(seeds);
    parallel_for(seeds, [&](int s) {
        Graph g = generate_gnp(n, 2.0, 777000 + s);
        max_deg[s] = g.max_degree();
        double worst = 0.0;
        for (int v = 0; v < g.n; ++v)
            worst = std::max(worst, truncated_branching_sum(g, v, 2.2, branching_lmax));
        max_branching[s] = worst;
        // component sizes in a uniformly random theta*n subset
        const long long ell = n / 4;
        BlockComponentSampler sampler(g, ell);
        SplitMix64 rng = SplitMix64(424000 + s).substream("component-tail");
        std::vector<long long> hist(256, 0);
        for (int draw = 0; draw < 20000; ++draw) {
            int v = static_cast<int>(rng.uniform_below(n));
            int c = std::min(sampler.sample(v, rng), 255);
            hist[c] += 1;
        }
        tail_hist[s] = std::move(hist);
    });

    int branching_ok = 0, degree_ok = 0;
    for (int s = 0; s < seeds; ++s) {
        if (max_branching[s] <= log_n) ++branching_ok;
        if (max_deg[s] >= 0.5 * dl && max_deg[s] <= 1.5 * dl) ++degree_ok;
    }

    // pooled tail decay over k in [log n, 3 log n]
    std::vector<long long> pooled(256, 0);
    for (const auto& h : tail_hist)
        for (size_t k = 0; k < h.size(); ++k) pooled[k] += h[k];
    auto tail_at = [&](int k) {
        long long acc = 0;
        for (size_t i = k; i < pooled.size(); ++i) acc += pooled[i];
        return acc;
    };
    bool tail_ok = true;
    std::ostringstream tail_txt;
    for (int k = 12; k + 4 <= 35; k += 4) {
        long long t0 = tail_at(k), t1 = tail_at(k + 4);
        if (t0 < 50) break;  // below counting resolution: nothing to refute
        tail_txt << "T(" << k << ")=" << t0 << " ";
        if (static_cast<double>(t1) > 0.9 * static_cast<double>(t0)) tail_ok = false;
    }

    bool branching_pass = branching_ok >= 48;
    bool degree_pass = degree_ok >= 45;
    std::ostringstream d;
    d << "branching (l_max=" << branching_lmax << "): " << branching_ok << "/50 seeds <= log n"
      << (branching_pass ? " [ok]" : " [FAIL]") << "; max degree in (1+-0.5) log n/loglog n ["
      << 0.5 * dl << ", " << 1.5 * dl << "]: " << degree_ok << "/50"
      << (degree_pass ? " [ok]" : " [FAIL]")
      << " (observed max degrees ";
    std::vector<int> sorted_deg = max_deg;
    std::sort(sorted_deg.begin(), sorted_deg.end());
    d << sorted_deg.front() << ".." << sorted_deg.back() << ")";
    d << "; component tail ratios over [log n, 3 log n]: " << tail_txt.str()
      << (tail_ok ? "[ok]" : "[FAIL]");
    return {branching_pass && degree_pass && tail_ok, d.str()};
}

// ---------------------------------------------------------------- C12
CriterionResult criterion12() {
    long long graphs = 0;
    auto check = [&](const Graph& g) {
        if (g.edge_count() > 7 || g.edge_count() == 0) return;
        for (const Rational& lam : lambda_grid()) {
            GibbsModel md = monomer_dimer(g, lam);
            GibbsModel hc = hardcore(line_graph(g).graph, lam);
            auto st_md = enumerate<Rational>(md);
            auto st_hc = enumerate<Rational>(hc);
            if (st_md.configs != st_hc.configs || st_md.weights != st_hc.weights)
                throw std::runtime_error("distribution mismatch");
            // transition matrices: line-graph route vs direct edge-space rule
            auto cm = transition_matrix<Rational>(md);
            const int m_edges = g.edge_count();
            for (int x = 0; x < cm.support.size(); ++x) {
                uint32_t cfg = cm.support.configs[x];
                std::vector<Rational> row(cm.support.size(), Rational(0));
                for (int e = 0; e < m_edges; ++e) {
                    auto [u, v] = g.edges[e];
                    bool used = false;
                    for (int f = 0; f < m_edges; ++f) {
                        if (f == e || !(cfg >> f & 1)) continue;
                        auto [a, b] = g.edges[f];
                        if (a == u || b == u || a == v || b == v) used = true;
                    }
                    Rational p_plus = used ? Rational(0) : lam / (Rational(1) + lam);
                    if (!used)
                        row[cm.support.index_of(cfg | (uint32_t(1) << e))] += p_plus / m_edges;
                    row[cm.support.index_of(cfg & ~(uint32_t(1) << e))] +=
                        (Rational(1) - p_plus) / m_edges;
                }
                for (int y = 0; y < cm.support.size(); ++y)
                    if (row[y] != cm.p[x][y]) throw std::runtime_error("transition mismatch");
            }
            ++graphs;
        }
    };
    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : census_upto6(n)) check(g);
    // trees with 7 edges reach beyond the 6-vertex census
    {
        std::vector<std::pair<int, int>> path8;
        for (int i = 0; i + 1 < 8; ++i) path8.emplace_back(i, i + 1);
        check(Graph::from_edges(8, path8));
        std::vector<std::pair<int, int>> star8;
        for (int i = 1; i < 8; ++i) star8.emplace_back(0, i);
        check(Graph::from_edges(8, star8));
    }
    std::ostringstream d;
    d << "matching model == hard-core on line graph (laws and transition matrices, exact) on "
      << graphs << " (graph, lambda) pairs";
    return {true, d.str()};
}

struct Criterion {
    int id;
    const char* name;
    CriterionResult (*run)();
};

const Criterion kCriteria[] = {
    {1, "Weitz/SAW root-ratio exactness", criterion1},
    {2, "signed influence identity and absolute domination", criterion2},
    {3, "spectral radius dominated by the weighted norm", criterion3},
    {4, "potential contraction kappa_hat < 1/d", criterion4},
    {5, "marginal stability", criterion5},
    {6, "chain correctness (detailed balance + empirical law)", criterion6},
    {7, "Cheeger chain and stationary floors", criterion7},
    {8, "entropy inequalities", criterion8},
    {9, "mixing-time bound from measured tensorization", criterion9},
    {10, "near-linear mixing scaling proxy", criterion10},
    {11, "sparse random graph facts (branching, degree, component tail)", criterion11},
    {12, "monomer-dimer/line-graph reduction identity", criterion12},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--all") == 0) {
            for (const auto& c : kCriteria) wanted.push_back(c.id);
        } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            wanted.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--all | --criterion N]\n";
            return 2;
        }
    }
    if (wanted.empty())
        for (const auto& c : kCriteria) wanted.push_back(c.id);

    bool all_pass = true;
    for (int id : wanted) {
        const Criterion* found = nullptr;
        for (const auto& c : kCriteria)
            if (c.id == id) found = &c;
        if (!found) {
            std::cerr << "unknown criterion " << id << "\n";
            return 2;
        }
        auto start = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = found->run();
        } catch (const std::exception& e) {
            res = {false, e.what()};
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (res.pass ? "[PASS]" : "[FAIL]") << " C" << found->id << " " << found->name
                  << ": " << res.detail << " (" << secs << "s)\n";
        std::cout.flush();
        all_pass = all_pass && res.pass;
    }
    return all_pass ? 0 : 1;
}
