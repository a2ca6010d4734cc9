#pragma once

#include <map>
#include <optional>
#include <vector>

#include "glauber/graph.hpp"
#include "glauber/numeric.hpp"

namespace glauber {

enum class ModelKind { HardcoreVertices, MatchingEdges };

// Gibbs model over {-1,+1}^sites supported on the independent sets of the
// site graph. Hard-core models live directly on their graph; monomer-dimer
// models are materialized as hard-core on the line graph, with sites
// indexing the edges of the base graph. Activities are kept exactly (every
// double is a dyadic rational) so oracle checks can run in rational mode.
struct GibbsModel {
    ModelKind kind = ModelKind::HardcoreVertices;
    Graph sites;                                      // site graph (normal form)
    std::vector<std::pair<int, int>> site_edges;      // matching: base edge per site
    int base_n = 0;                                   // matching: base vertex count
    std::vector<Rational> activities;
    std::vector<double> activities_d;

    int site_count() const { return sites.n; }

    template <class T>
    T activity(int site) const {
        return scalar_from_rational<T>(activities[site]);
    }
};

// site -> +1/-1
struct Pinning {
    std::map<int, int> assignments;

    bool pins(int site) const { return assignments.count(site) != 0; }
    int value(int site) const { return assignments.at(site); }
    bool empty() const { return assignments.empty(); }
};

struct PotentialParams {
    double d = 0.0;
    double chi = 0.0;  // in (1,2) for every d > 1
    double a = 0.0;    // 1/a + 1/chi = 1
    std::optional<double> kappa_estimate;
};

// Tree uniqueness threshold d^d/(d-1)^(d+1).
double lambda_critical(double d);

PotentialParams potential_params(double d);

GibbsModel hardcore(const Graph& g, const Rational& lambda);
GibbsModel hardcore(const Graph& g, double lambda);
GibbsModel hardcore(const Graph& g, std::vector<Rational> per_vertex);

GibbsModel monomer_dimer(const Graph& g, const Rational& lambda);
GibbsModel monomer_dimer(const Graph& g, double lambda);

// Conditioning as reduction: pinned -1 sites are deleted, pinned +1 sites are
// deleted together with their neighbors. The reduced model's distribution is
// the conditional law restricted to surviving sites.
struct PinnedReduction {
    GibbsModel model;
    std::vector<int> site_map;    // original site -> reduced index, or -1
    std::vector<char> forced_off; // unpinned sites deleted by a +1 neighbor
};
PinnedReduction apply_pinning(const GibbsModel& m, const Pinning& p);

GibbsModel magnetize(const GibbsModel& m, const std::vector<Rational>& fields);
GibbsModel magnetize(const GibbsModel& m, const std::vector<double>& fields);

}  // namespace glauber
