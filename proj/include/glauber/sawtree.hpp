#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glauber/model.hpp"
#include "glauber/oracle.hpp"

namespace glauber {

// Cycle-closing pinning rule. EdgeCompare pins +1 iff the closing step enters
// the revisited vertex from a larger neighbor than the one the walk first
// left it by; LiteralLastStep compares the walk's last two vertices instead
// and exists for fault injection (it fails root-ratio validation on K3).
enum class PinRule { EdgeCompare, LiteralLastStep };

struct SawNode {
    int vertex = 0;   // the graph vertex this walk ends at ("copy of")
    int parent = -1;
    int depth = 0;
    int pin = 0;      // 0 free, +1/-1 cycle-closing pin
    std::vector<int> children;
};

struct SawTree {
    int graph_n = 0;
    int root = 0;
    std::vector<SawNode> nodes;             // parents precede children
    std::vector<std::vector<int>> copies;   // graph vertex -> node ids
    std::vector<int> pinned;                // node ids of cycle-closing leaves

    int depth() const;
    std::vector<long long> nodes_per_depth() const;  // simple paths from root
};

// Tree of all walks from r that are self-avoiding or self-avoiding until a
// single cycle-closing step (cycles of length >= 3). Finite without a cap;
// depth_cap is a safety valve and exceeding it throws TruncationError.
SawTree build_saw_tree(const Graph& g, int r, std::optional<int> depth_cap = std::nullopt,
                       PinRule rule = PinRule::EdgeCompare);

// Per-node marginal ratio of the subtree hanging at the node, with the
// node's activity taken from the graph vertex it copies. A pinned +1 node
// carries ratio infinity, encoded by the flag.
template <class W>
struct NodeRatio {
    bool pinned_plus = false;
    W value{};
};

template <class W>
std::vector<NodeRatio<W>> tree_ratios(const SawTree& t, const GibbsModel& m) {
    std::vector<NodeRatio<W>> r(t.nodes.size());
    const W one = scalar_from_double<W>(1.0);
    for (int i = static_cast<int>(t.nodes.size()) - 1; i >= 0; --i) {
        const SawNode& node = t.nodes[i];
        if (node.pin == 1) {
            r[i].pinned_plus = true;
            continue;
        }
        if (node.pin == -1) {
            r[i].value = W{};  // deleted: contributes factor 1 to the parent
            continue;
        }
        W prod = m.activity<W>(node.vertex);
        for (int c : node.children) {
            if (r[c].pinned_plus) {
                prod = W{};
                break;
            }
            prod = prod / (one + r[c].value);
        }
        r[i].value = prod;
    }
    return r;
}

template <class W>
NodeRatio<W> tree_root_ratio(const SawTree& t, const GibbsModel& m) {
    return tree_ratios<W>(t, m)[t.root];
}

// Signed influence of the root on every node: the product over the root
// path of per-edge factors -R_y/(1+R_y), with pinned nodes at zero.
template <class W>
std::vector<W> tree_influence_row(const SawTree& t, const std::vector<NodeRatio<W>>& ratios) {
    std::vector<W> inf(t.nodes.size(), W{});
    const W one = scalar_from_double<W>(1.0);
    std::vector<W> path(t.nodes.size(), one);  // product up to and including node
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        const SawNode& node = t.nodes[i];
        if (static_cast<int>(i) == t.root) continue;
        if (node.pin != 0 || ratios[i].pinned_plus) {
            path[i] = W{};
            continue;  // frozen assignment: the root has no influence here
        }
        W edge = -(ratios[i].value / (one + ratios[i].value));
        path[i] = path[node.parent] * edge;
        inf[i] = path[i];
    }
    return inf;
}

// Signed graph influence row I_G(r, .) assembled by summing the tree
// influences over all copies of each graph vertex.
template <class W>
std::vector<W> graph_influence_row_via_tree(const Graph& g, int r, const GibbsModel& m,
                                            std::optional<int> depth_cap = std::nullopt,
                                            PinRule rule = PinRule::EdgeCompare) {
    SawTree t = build_saw_tree(g, r, depth_cap, rule);
    auto ratios = tree_ratios<W>(t, m);
    auto inf = tree_influence_row<W>(t, ratios);
    std::vector<W> row(g.n, W{});
    for (int v = 0; v < g.n; ++v) {
        if (v == r) continue;
        for (int u : t.copies[v]) row[v] += inf[u];
    }
    return row;
}

// Full signed influence table assembled from per-root tree rows; carries
// "saw-tree" provenance in contrast to the enumeration-backed table.
template <class W>
InfluenceTable<W> influence_table_via_tree(const Graph& g, const GibbsModel& m) {
    InfluenceTable<W> out;
    out.provenance = "saw-tree";
    out.sites.resize(g.n);
    for (int v = 0; v < g.n; ++v) out.sites[v] = v;
    out.entries.assign(g.n, std::vector<W>(g.n, W{}));
    for (int r = 0; r < g.n; ++r) out.entries[r] = graph_influence_row_via_tree<W>(g, r, m);
    return out;
}

std::string to_dot(const SawTree& t);

}  // namespace glauber
