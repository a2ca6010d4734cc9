#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "glauber/numeric.hpp"
#include "glauber/rng.hpp"

namespace glauber {

// Simple undirected graph. Vertices are 0..n-1 and this integer order is the
// total order used everywhere (tree pinnings, tie-breaks).
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
    std::vector<std::vector<int>> adjacency; // sorted neighbor lists

    static Graph from_edges(int n, std::vector<std::pair<int, int>> edge_list);

    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
    int max_degree() const;
    int edge_count() const { return static_cast<int>(edges.size()); }
    bool has_edge(int u, int v) const;
    bool is_connected() const;
};

Graph generate_gnp(int n, double d, uint64_t seed);

struct LineGraph {
    Graph graph;                                  // one vertex per edge of the source
    std::vector<std::pair<int, int>> edge_of_vertex; // which source edge each vertex is
};
LineGraph line_graph(const Graph& g);

// N[l] = number of simple paths with l+1 vertices starting at v; N[0] = 1.
std::vector<BigInt> count_simple_paths(const Graph& g, int v, int l_max);

struct BranchingReport {
    int vertex = 0;
    double d = 0.0;
    std::vector<BigInt> path_counts;
    double value = 0.0;
    bool truncated = false;
};

// value = sum_l N[l]/d^l, Kahan-compensated; l_max < 0 means the exact
// default l_max = n (no simple path has more than n vertices).
BranchingReport branching_value(const Graph& g, int v, double d, int l_max = -1);

// Fast truncated branching sum with 64-bit level counts, for whole-graph
// scans on large sparse graphs. Throws on counter overflow.
double truncated_branching_sum(const Graph& g, int v, double d, int l_max);

// Draws S uniformly from all ell-subsets of V and returns |C_v| in g[S]
// (0 if v is not in S). Membership is decided lazily, so a draw costs
// O(component boundary) instead of O(n).
class BlockComponentSampler {
  public:
    BlockComponentSampler(const Graph& g, long long ell);
    int sample(int v, SplitMix64& rng);

  private:
    const Graph& g_;
    long long ell_;
    std::vector<uint32_t> epoch_seen_;
    std::vector<uint8_t> in_subset_;
    std::vector<int> queue_;
    uint32_t epoch_ = 0;
};

int sample_block_component(const Graph& g, long long ell, int v, uint64_t seed);

struct DegreeProfile {
    int max_degree = 0;
    std::vector<long long> histogram;  // histogram[k] = #vertices of degree k
};
DegreeProfile max_degree_profile(const Graph& g);

// Edge-list text format: optional '#'-prefixed comment lines, then "n m",
// then m lines "u v" with 0 <= u < v < n. The reader rejects violations.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list_file(const std::string& path);
std::string to_dot(const Graph& g);

// All connected graphs on exactly n vertices, one representative per
// isomorphism class (n <= 7; cost grows as 2^C(n,2) * n!).
std::vector<Graph> connected_census(int n);

// Random connected graphs: uniform labeled tree plus Bernoulli(extra_p) edges.
std::vector<Graph> random_connected_graphs(int n, int count, double extra_p, uint64_t seed);

}  // namespace glauber
