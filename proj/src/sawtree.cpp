#include "glauber/sawtree.hpp"

#include <algorithm>
#include <sstream>

namespace glauber {

int SawTree::depth() const {
    int d = 0;
    for (const auto& node : nodes) d = std::max(d, node.depth);
    return d;
}

std::vector<long long> SawTree::nodes_per_depth() const {
    std::vector<long long> counts(depth() + 1, 0);
    for (const auto& node : nodes) counts[node.depth] += 1;
    return counts;
}

SawTree build_saw_tree(const Graph& g, int r, std::optional<int> depth_cap, PinRule rule) {
    if (r < 0 || r >= g.n) throw ParameterError("build_saw_tree: root out of range");
    SawTree t;
    t.graph_n = g.n;
    t.root = 0;
    t.copies.assign(g.n, {});
    std::vector<int> walk;          // graph vertices of the current walk
    std::vector<int> walk_pos(g.n, -1);

    auto add_node = [&](int vertex, int parent, int depth, int pin) {
        int id = static_cast<int>(t.nodes.size());
        t.nodes.push_back({vertex, parent, depth, pin, {}});
        if (parent >= 0) t.nodes[parent].children.push_back(id);
        t.copies[vertex].push_back(id);
        if (pin != 0) t.pinned.push_back(id);
        return id;
    };

    auto expand = [&](auto&& self, int node_id) -> void {
        const int v = t.nodes[node_id].vertex;
        const int depth = t.nodes[node_id].depth;
        const int ell = depth;  // walk is w_0..w_ell
        for (int u : g.adjacency[v]) {
            int j = walk_pos[u];
            if (j < 0) {
                if (depth_cap && depth + 1 > *depth_cap)
                    throw TruncationError("build_saw_tree: depth cap exceeded");
                int child = add_node(u, node_id, depth + 1, 0);
                walk.push_back(u);
                walk_pos[u] = ell + 1;
                self(self, child);
                walk.pop_back();
                walk_pos[u] = -1;
            } else if (j <= ell - 2) {
                // cycle-closing walk; pinned leaf (shortest closure is a triangle)
                if (depth_cap && depth + 1 > *depth_cap)
                    throw TruncationError("build_saw_tree: depth cap exceeded");
                int pin;
                if (rule == PinRule::EdgeCompare) {
                    // compare the entering neighbor against the neighbor by
                    // which the walk first left the revisited vertex
                    pin = v > walk[j + 1] ? 1 : -1;
                } else {
                    pin = u > v ? -1 : 1;
                }
                add_node(u, node_id, depth + 1, pin);
            }
            // j == ell - 1 is the walk's own previous vertex: not an extension
        }
    };

    int root_id = add_node(r, -1, 0, 0);
    walk.push_back(r);
    walk_pos[r] = 0;
    expand(expand, root_id);
    return t;
}

std::string to_dot(const SawTree& t) {
    std::ostringstream out;
    out << "graph sawtree {\n";
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        out << "  n" << i << " [label=\"" << t.nodes[i].vertex;
        if (t.nodes[i].pin != 0) out << (t.nodes[i].pin > 0 ? " +" : " -");
        out << "\"];\n";
    }
    for (size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].parent >= 0) out << "  n" << t.nodes[i].parent << " -- n" << i << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace glauber
