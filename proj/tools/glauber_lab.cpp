// glauber_lab: graph generation, Glauber sampling, exact chain diagnostics,
// cross-module verification sweeps, and scaling experiments. All outputs are
// CSV-like text with a '#' metadata header; identical inputs give
// byte-identical outputs regardless of the worker-pool size.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "glauber/dynamics.hpp"
#include "glauber/entropy.hpp"
#include "glauber/graph.hpp"
#include "glauber/model.hpp"
#include "glauber/oracle.hpp"
#include "glauber/sawtree.hpp"
#include "glauber/spectral.hpp"

using namespace glauber;

namespace {

constexpr const char* kVersion = "glauber-lab 0.1.0";

int worker_count() {
    const char* env = std::getenv("GLAUBER_LAB_THREADS");
    if (env && std::atoi(env) > 0) return std::atoi(env);
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& body) {
    int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

std::string joined_command(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

void metadata_block(std::ostream& out, const std::string& command, uint64_t seed) {
    out << "# " << kVersion << "\n";
    out << "# command: " << command << "\n";
    out << "# rng: " << kRngAlgorithm << "\n";
    out << "# seed: " << seed << "\n";
}

struct OutputFile {
    std::ofstream file;
    std::ostream& stream;

    explicit OutputFile(const std::string& path)
        : file(path.empty() ? std::ofstream() : std::ofstream(path)),
          stream(path.empty() ? std::cout : file) {
        if (!path.empty() && !file) throw ParameterError("cannot open output file: " + path);
    }
};

struct ModelSpec {
    std::string graph_path;
    std::string kind = "hardcore";
    double lambda = 1.0;
    std::map<int, double> site_activities;
};

GibbsModel build_model(const ModelSpec& spec) {
    Graph g = read_edge_list_file(spec.graph_path);
    GibbsModel m = spec.kind == "matching" ? monomer_dimer(g, spec.lambda)
                                           : hardcore(g, spec.lambda);
    if (!spec.site_activities.empty()) {
        std::vector<Rational> fields(m.site_count(), Rational(1));
        for (const auto& [site, value] : spec.site_activities) {
            if (site < 0 || site >= m.site_count())
                throw ParameterError("model file: site index out of range");
            fields[site] = exact_rational(value) / m.activities[site];
        }
        m = magnetize(m, fields);
    }
    return m;
}

// Model description file: "key = value" lines (kind, graph, lambda) plus
// optional per-site rows "site <index> <activity>".
ModelSpec read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open model file: " + path);
    ModelSpec spec;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string head;
        row >> head;
        if (head == "site") {
            int site;
            double value;
            if (!(row >> site >> value)) throw ParameterError("model file: bad site line");
            spec.site_activities[site] = value;
            continue;
        }
        std::string eq, value;
        if (!(row >> eq >> value) || eq != "=")
            throw ParameterError("model file: expected 'key = value'");
        if (head == "kind") spec.kind = value;
        else if (head == "graph") spec.graph_path = value;
        else if (head == "lambda") spec.lambda = std::stod(value);
        else throw ParameterError("model file: unknown key '" + head + "'");
    }
    if (spec.graph_path.empty()) throw ParameterError("model file: missing graph path");
    if (spec.kind != "hardcore" && spec.kind != "matching")
        throw ParameterError("model file: kind must be hardcore or matching");
    return spec;
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string key, eq, value;
        if (!(row >> key >> eq >> value) || eq != "=")
            throw ParameterError("config: expected 'key = value' lines");
        kv[key] = value;
    }
    return kv;
}

// ----------------------------------------------------------------- gen
int cmd_gen(const std::string& command, int n, double d, uint64_t seed,
            const std::string& out_path, const std::string& dot_path) {
    Graph g = generate_gnp(n, d, seed);
    OutputFile out(out_path);
    metadata_block(out.stream, command, seed);
    write_edge_list(g, out.stream);
    if (!dot_path.empty()) {
        std::ofstream dot(dot_path);
        if (!dot) throw ParameterError("cannot open dot file: " + dot_path);
        dot << to_dot(g);
    }
    std::cout << "n=" << g.n << " m=" << g.edge_count() << " max_degree=" << g.max_degree()
              << "\n";
    return 0;
}

// ----------------------------------------------------------------- sample
int cmd_sample(const std::string& command, const ModelSpec& spec, long long steps,
               long long burnin, long long thin, uint64_t seed, const std::string& out_path) {
    if (steps < 0 || burnin < 0 || thin < 1) throw ParameterError("sample: bad parameters");
    GibbsModel m = build_model(spec);
    OutputFile out(out_path);
    metadata_block(out.stream, command, seed);
    out.stream << "# columns: step,occupied_count,site_flips\n";
    ChainState s = initial_state(m);
    SplitMix64 rng = SplitMix64(seed).substream("glauber-chain");
    for (long long t = 0; t < burnin; ++t) glauber_step(m, s, rng);
    for (long long t = 1; t <= steps; ++t) {
        glauber_step(m, s, rng);
        if (t % thin == 0)
            out.stream << t << ',' << s.occupied << ',' << s.flips << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- diagnose
void write_diag_row(std::ostream& out, int n, double d, double lambda, uint64_t seed,
                    const ChainDiagnostics& diag) {
    out << n << ',' << d << ',' << lambda << ',' << seed << ',' << diag.t_mix << ','
        << diag.gap << ',' << diag.conductance << ',' << diag.pi_min << '\n';
}

int cmd_diagnose(const std::string& command, const ModelSpec& spec, uint64_t seed, int site_cap,
                 const std::string& out_path) {
    GibbsModel m = build_model(spec);
    ChainDiagnostics diag = diagnose(m, site_cap);
    Graph g = read_edge_list_file(spec.graph_path);
    double mean_degree = g.n > 0 ? 2.0 * g.edge_count() / g.n : 0.0;
    OutputFile out(out_path);
    metadata_block(out.stream, command, seed);
    out.stream << "# columns: n,d,lambda,seed,t_mix,gap,conductance,pi_min\n";
    out.stream << "# conductance is " << (diag.conductance_is_exact ? "exact" : "a lower bound")
               << "; support size " << diag.support << "\n";
    out.stream << std::setprecision(17);
    write_diag_row(out.stream, m.site_count(), mean_degree, spec.lambda, seed, diag);
    return 0;
}

// ----------------------------------------------------------------- verify
struct VerifyBlock {
    std::string name;
    long long checked = 0;
    long long failed = 0;
};

int cmd_verify(const std::string& command, const std::string& corpus,
               const std::string& inject_fault, int trials, const std::string& out_path) {
    const bool exhaustive = corpus == "exhaustive-n6";
    if (!exhaustive && corpus != "default")
        throw ParameterError("verify: corpus must be 'default' or 'exhaustive-n6'");
    PinRule rule = PinRule::EdgeCompare;
    if (inject_fault == "literal-pinning") rule = PinRule::LiteralLastStep;
    else if (!inject_fault.empty() && inject_fault != "none")
        throw ParameterError("verify: unknown fault '" + inject_fault + "'");

    const int n_max = exhaustive ? 6 : 4;
    const std::vector<Rational> lambdas{Rational(1, 2), Rational(1), Rational(2)};
    std::vector<VerifyBlock> blocks;

    if (exhaustive) {
        VerifyBlock b{"census-counts"};
        const std::vector<size_t> expected{1, 1, 2, 6, 21, 112};
        for (int n = 1; n <= 6; ++n) {
            ++b.checked;
            if (connected_census(n).size() != expected[n - 1]) ++b.failed;
        }
        blocks.push_back(b);
    }

    std::vector<Graph> corpus_graphs;
    for (int n = 1; n <= n_max; ++n)
        for (const Graph& g : connected_census(n)) corpus_graphs.push_back(g);

    {
        VerifyBlock weitz{"weitz-root-ratio"};
        VerifyBlock signed_id{"signed-influence-identity"};
        for (const Graph& g : corpus_graphs)
            for (const Rational& lam : lambdas) {
                GibbsModel m = hardcore(g, lam);
                auto table = influence_matrix<Rational>(m);
                for (int r = 0; r < g.n; ++r) {
                    SawTree t = build_saw_tree(g, r, std::nullopt, rule);
                    auto ratios = tree_ratios<Rational>(t, m);
                    auto truth = marginal_ratio<Rational>(m, r);
                    ++weitz.checked;
                    if (ratios[t.root].pinned_plus || truth.infinite ||
                        ratios[t.root].value != truth.value)
                        ++weitz.failed;
                    auto inf = tree_influence_row<Rational>(t, ratios);
                    for (int v = 0; v < g.n; ++v) {
                        if (v == r) continue;
                        Rational sum(0);
                        for (int u : t.copies[v]) sum += inf[u];
                        ++signed_id.checked;
                        if (sum != table.entries[r][v]) ++signed_id.failed;
                    }
                }
            }
        blocks.push_back(weitz);
        blocks.push_back(signed_id);
    }

    {
        VerifyBlock si{"spectral-independence"};
        const double chi2 = potential_params(2.0).chi;
        const double chi3 = potential_params(3.0).chi;
        for (const Graph& g : corpus_graphs) {
            if (g.n < 2) continue;
            std::vector<int> degrees(g.n);
            for (int v = 0; v < g.n; ++v) degrees[v] = g.degree(v);
            for (const Rational& lam : lambdas) {
                GibbsModel m = hardcore(g, lam);
                double lam_d = to_double(lam);
                SICertificate cert = certify_spectral_independence(m, 1e9);
                ++si.checked;
                if (!(cert.eta_observed >= 0.0)) ++si.failed;
                auto table = influence_matrix<double>(m);
                Eigen::MatrixXd a = abs_influence(table);
                for (double chi : {chi2, chi3}) {
                    ++si.checked;
                    if (spectral_radius(a) > weighted_inf_norm(a, degrees, chi) + 1e-8)
                        ++si.failed;
                }
                for (const auto& row : table.entries)
                    for (double e : row)
                        if (std::abs(e) > lam_d / (1.0 + lam_d) + 1e-12) ++si.failed;
            }
        }
        blocks.push_back(si);
    }

    {
        VerifyBlock stab{"marginal-stability"};
        for (const Graph& g : corpus_graphs) {
            if (g.n < 2) continue;
            for (const Rational& lam : lambdas) {
                double lam_d = to_double(lam);
                StabilityReport rep = stability_report(hardcore(g, lam), lam_d);
                ++stab.checked;
                if (rep.max_ratio > lam_d + 1e-12 || !rep.lower_bound_ok) ++stab.failed;
                if (g.edge_count() <= 6 && g.edge_count() >= 1) {
                    double zeta = std::pow(lam_d + 2.0, 3.0) * g.max_degree() * g.max_degree();
                    ++stab.checked;
                    if (!stability_report(monomer_dimer(g, lam), zeta).pass) ++stab.failed;
                }
            }
        }
        blocks.push_back(stab);
    }

    {
        VerifyBlock ent{"entropy-tensorization"};
        for (const Graph& g : corpus_graphs) {
            if (g.n < 2) continue;
            for (const Rational& lam : lambdas) {
                GibbsModel m = hardcore(g, lam);
                double c_at = at_bound_hardcore(g.n, to_double(lam));
                ++ent.checked;
                if (!verify_tensorization(m, c_at, trials, 11).pass) ++ent.failed;
                ++ent.checked;
                if (!verify_component_decomposition(m, std::min(trials, 100), 13).pass)
                    ++ent.failed;
            }
        }
        blocks.push_back(ent);
    }

    {
        VerifyBlock cheeger{"cheeger-chain"};
        for (const Graph& g : corpus_graphs) {
            if (g.n > 5) continue;
            for (const Rational& lam : lambdas) {
                GibbsModel m = hardcore(g, lam);
                double lam_d = to_double(lam);
                ChainDiagnostics diag = diagnose(m);
                ++cheeger.checked;
                double floor = std::min(1.0, std::pow(lam_d, m.site_count())) /
                               std::pow(1.0 + lam_d, m.site_count());
                bool ok = diag.pi_min >= floor - 1e-12;
                if (diag.support >= 2) {
                    ok = ok && diag.gap >= diag.conductance * diag.conductance / 2.0 - 1e-12;
                    if (diag.conductance_is_exact)
                        ok = ok && diag.conductance >= 2.0 * diag.pi_min / m.site_count() *
                                                           min_update_probability(m) -
                                                       1e-12;
                    // spectral-independence gap bound stays below the exact gap
                    SICertificate cert = certify_spectral_independence(m, 1e9);
                    double phi = 0.0;
                    for (size_t k = 0; k < cert.eta_by_pinned_count.size(); ++k)
                        phi = std::max(phi, cert.eta_by_pinned_count[k] /
                                                std::max(1, m.site_count() - int(k) - 1));
                    if (phi < 1.0)
                        ok = ok && si_gap_bound(m.site_count(), cert.eta_observed, phi) <=
                                       diag.gap + 1e-12;
                }
                if (!ok) ++cheeger.failed;
            }
        }
        blocks.push_back(cheeger);
    }

    OutputFile out(out_path);
    metadata_block(out.stream, command, 0);
    long long total_failed = 0;
    for (const auto& b : blocks) {
        out.stream << b.name << ": checked " << b.checked << ", "
                   << (b.failed == 0 ? "pass" : "FAIL") << " (" << b.failed << " failures)\n";
        total_failed += b.failed;
    }
    out.stream << (total_failed == 0 ? "ALL PASS" : "VERIFICATION FAILED") << "\n";
    return total_failed == 0 ? 0 : 4;
}

// ----------------------------------------------------------------- experiment
int cmd_experiment(const std::string& command, const std::string& config_path) {
    auto kv = read_config(config_path);
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParameterError("config: missing key '" + key + "'");
        return it->second;
    };
    const std::string mode = need("mode");
    if (mode != "hardcore-scaling" && mode != "matching-scaling")
        throw ParameterError("config: mode must be hardcore-scaling or matching-scaling");
    const int n_min = std::stoi(need("n_min"));
    const int n_max = std::stoi(need("n_max"));
    const double d = std::stod(need("d"));
    const double lambda = std::stod(need("lambda"));
    const int seeds = std::stoi(need("seeds"));
    const uint64_t seed0 = kv.count("seed0") ? std::stoull(kv["seed0"]) : 1;
    const std::string out_path = kv.count("out") ? kv["out"] : "";
    if (n_min < 1 || n_max < n_min || seeds < 1) throw ParameterError("config: bad sweep range");
    if (!(lambda > 0.0)) throw ParameterError("config: lambda must be positive");
    if (!(d >= 0.0)) throw ParameterError("config: d must be nonnegative");

    struct Row {
        int n;
        uint64_t seed;
        ChainDiagnostics diag;
        bool ok = false;
        std::string error;
    };
    std::vector<Row> rows;
    for (int n = n_min; n <= n_max; ++n)
        for (int s = 0; s < seeds; ++s) rows.push_back({n, seed0 + uint64_t(s), {}, false, ""});

    parallel_for(static_cast<int>(rows.size()), [&](int i) {
        Row& row = rows[i];
        try {
            SplitMix64 base(row.seed);
            uint64_t graph_seed =
                base.substream("experiment-graph", static_cast<uint64_t>(row.n)).next();
            Graph g = generate_gnp(row.n, d, graph_seed);
            GibbsModel m = mode == "matching-scaling" ? monomer_dimer(g, lambda)
                                                      : hardcore(g, lambda);
            row.diag = diagnose(m);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });

    OutputFile out(out_path);
    metadata_block(out.stream, command, seed0);
    for (const auto& [key, value] : kv) out.stream << "# config: " << key << " = " << value << "\n";
    out.stream << "# columns: n,d,lambda,seed,t_mix,gap,conductance,pi_min\n";
    out.stream << "# conductance: exact when the support has <= 20 states, otherwise the "
                  "stationary-floor lower bound\n";
    out.stream << std::setprecision(17);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    long long fitted = 0;
    for (const Row& row : rows) {  // already ordered by (n, seed)
        if (!row.ok) {
            out.stream << "# skipped n=" << row.n << " seed=" << row.seed << ": " << row.error
                       << "\n";
            continue;
        }
        write_diag_row(out.stream, row.n, d, lambda, row.seed, row.diag);
        double x = std::log(static_cast<double>(row.n));
        double y = std::log(static_cast<double>(row.diag.t_mix));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++fitted;
    }
    if (fitted >= 2) {
        double denom = fitted * sxx - sx * sx;
        double slope = (fitted * sxy - sx * sy) / denom;
        double intercept = (sy - slope * sx) / fitted;
        double ss_res = syy - 2 * slope * sxy - 2 * intercept * sy + slope * slope * sxx +
                        2 * slope * intercept * sx + intercept * intercept * fitted;
        double ss_tot = syy - sy * sy / fitted;
        out.stream << "# fit: log(t_mix) = " << slope << " * log(n) + " << intercept << "\n";
        out.stream << "# fit: points=" << fitted
                   << " r_squared=" << (ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0) << "\n";
        std::cout << "fitted exponent: " << slope << " over " << fitted << " chains\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - Glauber dynamics sampler and verification toolkit for hard-core and "
                 "monomer-dimer models"};
    app.require_subcommand(1);
    const std::string command = joined_command(argc, argv);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a sparse random graph G(n, d/n)");
    int gen_n = 100;
    double gen_d = 2.0;
    uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--d", gen_d, "expected degree (edge probability d/n)")->required();
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output edge-list path (default stdout)");
    std::string gen_dot;
    gen->add_option("--dot", gen_dot, "also write a DOT rendering here");

    // shared model options
    auto add_model_options = [](CLI::App* cmd, ModelSpec& spec, std::string& model_file) {
        cmd->add_option("graph", spec.graph_path, "edge-list file");
        cmd->add_option("--model", spec.kind, "hardcore or matching")
            ->check(CLI::IsMember({"hardcore", "matching"}));
        cmd->add_option("--lambda", spec.lambda, "activity/fugacity");
        cmd->add_option("--model-file", model_file,
                        "model description file (overrides graph/model/lambda)");
    };

    // sample
    auto* sample = app.add_subcommand("sample", "run Glauber dynamics and emit a time series");
    ModelSpec sample_spec;
    std::string sample_model_file;
    long long sample_steps = 1000, sample_burnin = 0, sample_thin = 1;
    uint64_t sample_seed = 1;
    std::string sample_out;
    add_model_options(sample, sample_spec, sample_model_file);
    sample->add_option("--steps", sample_steps, "number of single-site updates");
    sample->add_option("--burnin", sample_burnin, "updates to discard first");
    sample->add_option("--thin", sample_thin, "record every thin-th step");
    sample->add_option("--seed", sample_seed, "rng seed");
    sample->add_option("--out", sample_out, "output CSV path (default stdout)");

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "exact transition-matrix diagnostics");
    ModelSpec diag_spec;
    std::string diag_model_file;
    uint64_t diag_seed = 0;
    int diag_cap = kDefaultSiteCap;
    std::string diag_out;
    add_model_options(diag, diag_spec, diag_model_file);
    diag->add_option("--seed", diag_seed, "seed column for the CSV row");
    diag->add_option("--caps", diag_cap, "site cap for exact enumeration");
    diag->add_option("--out", diag_out, "output CSV path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
    std::string verify_corpus = "default", verify_fault = "none", verify_out;
    int verify_trials = 500;
    verify->add_option("--corpus", verify_corpus, "default or exhaustive-n6");
    verify->add_option("--inject-fault", verify_fault,
                       "literal-pinning flips the cycle-closing rule to the literal variant");
    verify->add_option("--trials", verify_trials, "random test functions per model");
    verify->add_option("--out", verify_out, "report path (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "scaling sweep driven by a config file");
    std::string exp_config;
    exp->add_option("--config", exp_config, "key = value config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(command, gen_n, gen_d, gen_seed, gen_out, gen_dot);
        if (sample->parsed()) {
            if (!sample_model_file.empty()) sample_spec = read_model_file(sample_model_file);
            else if (sample_spec.graph_path.empty())
                throw ParameterError("sample: provide a graph file or --model-file");
            return cmd_sample(command, sample_spec, sample_steps, sample_burnin, sample_thin,
                              sample_seed, sample_out);
        }
        if (diag->parsed()) {
            if (!diag_model_file.empty()) diag_spec = read_model_file(diag_model_file);
            else if (diag_spec.graph_path.empty())
                throw ParameterError("diagnose: provide a graph file or --model-file");
            return cmd_diagnose(command, diag_spec, diag_seed, diag_cap, diag_out);
        }
        if (verify->parsed())
            return cmd_verify(command, verify_corpus, verify_fault, verify_trials, verify_out);
        if (exp->parsed()) return cmd_experiment(command, exp_config);
    } catch (const SizeCapError& e) {
        std::cerr << "size cap: " << e.what() << "\n";
        return 3;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
