#include "glauber/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace glauber {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 0) throw ParameterError("graph: negative vertex count");
    Graph g;
    g.n = n;
    for (auto& [u, v] : edge_list) {
        if (u == v) throw ParameterError("graph: self-loop");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw ParameterError("graph: vertex out of range");
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw ParameterError("graph: duplicate edge");
    g.edges = std::move(edge_list);
    g.adjacency.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& nbrs : adjacency) best = std::max(best, static_cast<int>(nbrs.size()));
    return best;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
    const auto& nbrs = adjacency[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::is_connected() const {
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adjacency[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

Graph generate_gnp(int n, double d, uint64_t seed) {
    if (n < 1) throw ParameterError("generate_gnp: n must be >= 1");
    if (!(d >= 0.0) || d > static_cast<double>(n))
        throw ParameterError("generate_gnp: need 0 <= d <= n");
    const double p = d / static_cast<double>(n);
    std::vector<std::pair<int, int>> edges;
    SplitMix64 rng = SplitMix64(seed).substream("gnp-edges");
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    auto pair_of_index = [n](long long k) {
        // Pairs in row-major order: (0,1),(0,2),...,(0,n-1),(1,2),...
        long long i = 0;
        long long row = n - 1;
        while (k >= row) {
            k -= row;
            ++i;
            --row;
        }
        return std::pair<int, int>(static_cast<int>(i), static_cast<int>(i + 1 + k));
    };
    if (p >= 1.0) {
        for (long long k = 0; k < total; ++k) edges.push_back(pair_of_index(k));
    } else if (p > 0.0) {
        // Geometric skipping over the pair sequence: O(m) expected draws.
        const double log_q = std::log1p(-p);
        long long k = -1;
        for (;;) {
            double u = 1.0 - rng.uniform();  // in (0,1]
            k += 1 + static_cast<long long>(std::floor(std::log(u) / log_q));
            if (k < 0 || k >= total) break;  // < 0 guards overflow of huge skips
            edges.push_back(pair_of_index(k));
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

LineGraph line_graph(const Graph& g) {
    LineGraph lg;
    lg.edge_of_vertex = g.edges;
    const int m = g.edge_count();
    std::vector<std::pair<int, int>> edges;
    // Two line vertices are adjacent iff the source edges share an endpoint.
    std::vector<std::vector<int>> incident(g.n);
    for (int e = 0; e < m; ++e) {
        incident[g.edges[e].first].push_back(e);
        incident[g.edges[e].second].push_back(e);
    }
    for (const auto& inc : incident)
        for (size_t a = 0; a < inc.size(); ++a)
            for (size_t b = a + 1; b < inc.size(); ++b)
                edges.emplace_back(std::min(inc[a], inc[b]), std::max(inc[a], inc[b]));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    lg.graph = Graph::from_edges(m, std::move(edges));
    return lg;
}

namespace {

template <class Count>
void path_count_dfs(const Graph& g, int v, int depth, int l_max, std::vector<char>& visited,
                    std::vector<Count>& counts) {
    counts[depth] += 1;
    if (depth == l_max) return;
    visited[v] = 1;
    for (int w : g.adjacency[v])
        if (!visited[w]) path_count_dfs(g, w, depth + 1, l_max, visited, counts);
    visited[v] = 0;
}

}  // namespace

std::vector<BigInt> count_simple_paths(const Graph& g, int v, int l_max) {
    if (v < 0 || v >= g.n) throw ParameterError("count_simple_paths: vertex out of range");
    if (l_max < 0) throw ParameterError("count_simple_paths: l_max must be >= 0");
    std::vector<BigInt> counts(l_max + 1, BigInt(0));
    std::vector<char> visited(g.n, 0);
    path_count_dfs(g, v, 0, l_max, visited, counts);
    return counts;
}

BranchingReport branching_value(const Graph& g, int v, double d, int l_max) {
    if (!(d > 1.0)) throw ParameterError("branching_value: need d > 1");
    if (l_max < 0) l_max = g.n;  // no simple path has more than n vertices
    BranchingReport rep;
    rep.vertex = v;
    rep.d = d;
    rep.path_counts = count_simple_paths(g, v, l_max);
    KahanSum sum;
    double scale = 1.0;
    for (int l = 0; l <= l_max; ++l) {
        if (rep.path_counts[l] != 0) sum.add(to_double(rep.path_counts[l]) * scale);
        scale /= d;
    }
    rep.value = sum.value();
    rep.truncated = rep.path_counts[l_max] != 0;
    return rep;
}

double truncated_branching_sum(const Graph& g, int v, double d, int l_max) {
    if (!(d > 1.0)) throw ParameterError("truncated_branching_sum: need d > 1");
    std::vector<uint64_t> counts(l_max + 1, 0);
    std::vector<char> visited(g.n, 0);
    path_count_dfs<uint64_t>(g, v, 0, l_max, visited, counts);
    KahanSum sum;
    double scale = 1.0;
    for (int l = 0; l <= l_max; ++l) {
        if (counts[l] > (uint64_t(1) << 62))
            throw TruncationError("truncated_branching_sum: level count overflow");
        sum.add(static_cast<double>(counts[l]) * scale);
        scale /= d;
    }
    return sum.value();
}

BlockComponentSampler::BlockComponentSampler(const Graph& g, long long ell) : g_(g), ell_(ell) {
    if (ell < 1 || ell > g.n) throw ParameterError("sample_block_component: need 1 <= ell <= n");
    epoch_seen_.assign(g.n, 0);
    in_subset_.assign(g.n, 0);
}

int BlockComponentSampler::sample(int v, SplitMix64& rng) {
    if (v < 0 || v >= g_.n) throw ParameterError("sample_block_component: vertex out of range");
    ++epoch_;
    long long remaining_in = ell_;
    long long remaining_total = g_.n;
    // Sequential membership: each undecided vertex joins S with probability
    // remaining_in/remaining_total, which realizes a uniform ell-subset.
    auto decide = [&](int u) {
        epoch_seen_[u] = epoch_;
        bool in = rng.uniform() * static_cast<double>(remaining_total)
                  < static_cast<double>(remaining_in);
        in_subset_[u] = in;
        remaining_total -= 1;
        if (in) remaining_in -= 1;
        return in;
    };
    if (!decide(v)) return 0;
    queue_.clear();
    queue_.push_back(v);
    int size = 1;
    for (size_t head = 0; head < queue_.size(); ++head) {
        int u = queue_[head];
        for (int w : g_.adjacency[u]) {
            if (epoch_seen_[w] == epoch_) continue;  // decided already (member or not)
            if (decide(w)) {
                queue_.push_back(w);
                ++size;
            }
        }
    }
    return size;
}

int sample_block_component(const Graph& g, long long ell, int v, uint64_t seed) {
    BlockComponentSampler sampler(g, ell);
    SplitMix64 rng = SplitMix64(seed).substream("block-component");
    return sampler.sample(v, rng);
}

DegreeProfile max_degree_profile(const Graph& g) {
    DegreeProfile p;
    p.max_degree = g.max_degree();
    p.histogram.assign(p.max_degree + 1, 0);
    for (int v = 0; v < g.n; ++v) p.histogram[g.degree(v)] += 1;
    return p;
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    auto next_data_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };
    std::string header;
    if (!next_data_line(header)) throw ParameterError("edge list: missing header");
    std::istringstream hs(header);
    long long n = 0, m = 0;
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra)) throw ParameterError("edge list: malformed header");
    if (n < 0 || m < 0) throw ParameterError("edge list: negative header field");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (long long i = 0; i < m; ++i) {
        std::string row;
        if (!next_data_line(row)) throw ParameterError("edge list: fewer edges than header");
        std::istringstream rs(row);
        long long u = 0, v = 0;
        if (!(rs >> u >> v) || (rs >> extra)) throw ParameterError("edge list: malformed edge line");
        if (!(0 <= u && u < v && v < n)) throw ParameterError("edge list: edge requires 0 <= u < v < n");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    std::string tail;
    if (next_data_line(tail) && !tail.empty()) throw ParameterError("edge list: trailing data");
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.n << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream ifs(path);
    if (!ifs) throw ParameterError("cannot open graph file: " + path);
    return read_edge_list(ifs);
}

std::string to_dot(const Graph& g) {
    std::ostringstream out;
    out << "graph g {\n";
    for (int v = 0; v < g.n; ++v) out << "  " << v << ";\n";
    for (auto [u, v] : g.edges) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

uint64_t canonical_edge_mask(int n, uint64_t mask, const std::vector<std::vector<int>>& perms,
                             const std::vector<std::vector<int>>& pair_index) {
    uint64_t best = 0;
    const int m_bits = n * (n - 1) / 2;
    for (const auto& perm : perms) {
        uint64_t relabeled = 0;
        for (int b = 0; b < m_bits; ++b) {
            if (!(mask >> b & 1)) continue;
            int u = pair_index[b][0], v = pair_index[b][1];
            int pu = perm[u], pv = perm[v];
            if (pu > pv) std::swap(pu, pv);
            relabeled |= uint64_t(1) << pair_index[pu][2 + pv];
        }
        best = std::max(best, relabeled);
    }
    return best;
}

}  // namespace

std::vector<Graph> connected_census(int n) {
    if (n < 1 || n > 7) throw SizeCapError("connected_census: supported for 1 <= n <= 7");
    const int m_bits = n * (n - 1) / 2;
    // pair_index[b] = {u, v}; pair_index[u][2 + v] = bit of pair (u,v).
    std::vector<std::vector<int>> pair_index(std::max(n, m_bits), std::vector<int>(2 + n, -1));
    {
        int b = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v, ++b) {
                pair_index[b][0] = u;
                pair_index[b][1] = v;
                pair_index[u][2 + v] = b;
            }
    }
    std::vector<std::vector<int>> perms;
    {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::unordered_set<uint64_t> seen;
    std::vector<Graph> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << m_bits); ++mask) {
        // connectivity check on the mask
        std::vector<int> comp(n, -1);
        std::vector<int> stack{0};
        comp[0] = 0;
        int reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                if (v == u || comp[v] == 0) continue;
                int b = pair_index[std::min(u, v)][2 + std::max(u, v)];
                if (mask >> b & 1) {
                    comp[v] = 0;
                    ++reached;
                    stack.push_back(v);
                }
            }
        }
        if (reached != n) continue;
        uint64_t canon = canonical_edge_mask(n, mask, perms, pair_index);
        if (!seen.insert(canon).second) continue;
        std::vector<std::pair<int, int>> edges;
        for (int b = 0; b < m_bits; ++b)
            if (canon >> b & 1) edges.emplace_back(pair_index[b][0], pair_index[b][1]);
        out.push_back(Graph::from_edges(n, std::move(edges)));
    }
    return out;
}

std::vector<Graph> random_connected_graphs(int n, int count, double extra_p, uint64_t seed) {
    if (n < 1) throw ParameterError("random_connected_graphs: n >= 1");
    std::vector<Graph> out;
    SplitMix64 base(seed);
    for (int i = 0; i < count; ++i) {
        SplitMix64 rng = base.substream("random-connected", static_cast<uint64_t>(i));
        std::vector<std::pair<int, int>> edges;
        if (n >= 2) {
            // Uniform labeled tree from a Prufer sequence.
            std::vector<int> prufer(std::max(0, n - 2));
            for (auto& x : prufer) x = static_cast<int>(rng.uniform_below(n));
            std::vector<int> deg(n, 1);
            for (int x : prufer) deg[x] += 1;
            std::vector<char> used(n, 0);
            std::vector<int> leafs;
            for (int v = 0; v < n; ++v)
                if (deg[v] == 1) leafs.push_back(v);
            std::sort(leafs.begin(), leafs.end(), std::greater<int>());
            for (int x : prufer) {
                int leaf = leafs.back();
                leafs.pop_back();
                edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
                if (--deg[x] == 1) {
                    leafs.push_back(x);
                    std::sort(leafs.begin(), leafs.end(), std::greater<int>());
                }
            }
            if (leafs.size() >= 2)
                edges.emplace_back(std::min(leafs[0], leafs[1]), std::max(leafs[0], leafs[1]));
            std::sort(edges.begin(), edges.end());
            const size_t tree_edges = edges.size();
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    std::pair<int, int> e{u, v};
                    bool in_tree = std::binary_search(edges.begin(), edges.begin() + tree_edges, e);
                    if (!in_tree && rng.bernoulli(extra_p)) edges.push_back(e);
                }
        }
        out.push_back(Graph::from_edges(n, std::move(edges)));
    }
    return out;
}

}  // namespace glauber
