#include "glauber/model.hpp"

#include <algorithm>
#include <cmath>

namespace glauber {

double lambda_critical(double d) {
    if (!(d > 1.0)) throw ParameterError("lambda_critical: need d > 1");
    return std::exp(d * std::log(d) - (d + 1.0) * std::log(d - 1.0));
}

PotentialParams potential_params(double d) {
    if (!(d > 1.0)) throw ParameterError("potential_params: need d > 1");
    PotentialParams p;
    p.d = d;
    p.chi = 1.0 / (1.0 - (d - 1.0) / 2.0 * std::log1p(1.0 / (d - 1.0)));
    p.a = p.chi / (p.chi - 1.0);
    return p;
}

namespace {

GibbsModel make_model(ModelKind kind, Graph sites, std::vector<Rational> activities) {
    for (const auto& a : activities)
        if (!(a > 0)) throw ParameterError("model: activities must be strictly positive");
    GibbsModel m;
    m.kind = kind;
    m.sites = std::move(sites);
    m.activities = std::move(activities);
    m.activities_d.reserve(m.activities.size());
    for (const auto& a : m.activities) m.activities_d.push_back(to_double(a));
    return m;
}

}  // namespace

GibbsModel hardcore(const Graph& g, const Rational& lambda) {
    return make_model(ModelKind::HardcoreVertices, g, std::vector<Rational>(g.n, lambda));
}

GibbsModel hardcore(const Graph& g, double lambda) { return hardcore(g, exact_rational(lambda)); }

GibbsModel hardcore(const Graph& g, std::vector<Rational> per_vertex) {
    if (static_cast<int>(per_vertex.size()) != g.n)
        throw ParameterError("hardcore: one activity per vertex required");
    return make_model(ModelKind::HardcoreVertices, g, std::move(per_vertex));
}

GibbsModel monomer_dimer(const Graph& g, const Rational& lambda) {
    LineGraph lg = line_graph(g);
    GibbsModel m = make_model(ModelKind::MatchingEdges, std::move(lg.graph),
                              std::vector<Rational>(g.edge_count(), lambda));
    m.site_edges = std::move(lg.edge_of_vertex);
    m.base_n = g.n;
    return m;
}

GibbsModel monomer_dimer(const Graph& g, double lambda) {
    return monomer_dimer(g, exact_rational(lambda));
}

PinnedReduction apply_pinning(const GibbsModel& m, const Pinning& p) {
    const int n = m.site_count();
    for (const auto& [site, value] : p.assignments) {
        if (site < 0 || site >= n) throw ParameterError("pinning: site out of range");
        if (value != 1 && value != -1) throw ParameterError("pinning: values must be +1 or -1");
    }
    for (const auto& [site, value] : p.assignments) {
        if (value != 1) continue;
        for (int w : m.sites.adjacency[site]) {
            auto it = p.assignments.find(w);
            if (it != p.assignments.end() && it->second == 1)
                throw FeasibilityError("pinning: two adjacent sites pinned +1");
        }
    }
    PinnedReduction red;
    red.site_map.assign(n, -1);
    red.forced_off.assign(n, 0);
    std::vector<char> removed(n, 0);
    for (const auto& [site, value] : p.assignments) {
        removed[site] = 1;
        if (value == 1)
            for (int w : m.sites.adjacency[site])
                if (!p.pins(w)) {
                    removed[w] = 1;
                    red.forced_off[w] = 1;
                }
    }
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) {
            red.site_map[v] = static_cast<int>(keep.size());
            keep.push_back(v);
        }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : m.sites.edges)
        if (!removed[u] && !removed[v]) edges.emplace_back(red.site_map[u], red.site_map[v]);
    std::vector<Rational> acts;
    acts.reserve(keep.size());
    for (int v : keep) acts.push_back(m.activities[v]);
    red.model = make_model(ModelKind::HardcoreVertices,
                           Graph::from_edges(static_cast<int>(keep.size()), std::move(edges)),
                           std::move(acts));
    return red;
}

GibbsModel magnetize(const GibbsModel& m, const std::vector<Rational>& fields) {
    if (static_cast<int>(fields.size()) != m.site_count())
        throw ParameterError("magnetize: one field per site required");
    for (const auto& f : fields)
        if (!(f > 0)) throw ParameterError("magnetize: fields must be strictly positive");
    GibbsModel out = m;
    for (int v = 0; v < m.site_count(); ++v) {
        out.activities[v] = m.activities[v] * fields[v];
        out.activities_d[v] = to_double(out.activities[v]);
    }
    return out;
}

GibbsModel magnetize(const GibbsModel& m, const std::vector<double>& fields) {
    std::vector<Rational> q;
    q.reserve(fields.size());
    for (double f : fields) q.push_back(exact_rational(f));
    return magnetize(m, q);
}

}  // namespace glauber
