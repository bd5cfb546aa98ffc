#include "sse/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace sse {

namespace {

// c * log2(num/den) with the 0*log convention: zero coefficients and empty
// volumes contribute exactly 0.
double entropy_term(double c, double num, double den) {
    if (c == 0.0 || num <= 0.0 || den <= 0.0) return 0.0;
    return c * std::log2(num / den);
}

struct NodeScratch {
    double volume = 0.0;
    double cut = 0.0;
    double rel_cut = 0.0;
    int leaf_count = 0;
    int parent = -1;
};

// From-scratch per-node stats for every alive node, ignoring the tree caches.
std::vector<NodeScratch> recompute_node_stats(const WeightedGraph& g, const RelationGraph& gp,
                                              const EncodingTree& t) {
    std::vector<NodeScratch> stats(t.nodes.size());
    // Post-order accumulation of leaf lists.
    std::vector<std::vector<int>> verts(t.nodes.size());
    std::vector<std::pair<int, bool>> stack{{t.root, false}};
    std::vector<int> order;
    while (!stack.empty()) {
        auto [id, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            order.push_back(id);
            continue;
        }
        stack.emplace_back(id, true);
        for (int c : t.nodes[id].children) stack.emplace_back(c, false);
    }
    std::vector<char> mark(g.n, 0);
    for (int id : order) {
        const TreeNode& nd = t.nodes[id];
        stats[id].parent = nd.parent;
        if (nd.is_leaf()) {
            verts[id] = {nd.vertex};
        } else {
            for (int c : nd.children)
                verts[id].insert(verts[id].end(), verts[c].begin(), verts[c].end());
        }
        stats[id].leaf_count = static_cast<int>(verts[id].size());
        double vol = 0.0, ct = 0.0, rel = 0.0;
        for (int v : verts[id]) mark[v] = 1;
        for (int v : verts[id]) {
            vol += g.degree[v];
            for (const auto& nb : g.adj[v])
                if (!mark[nb.to]) ct += nb.w;
            if (gp.n > 0)
                for (const auto& nb : gp.adj[v])
                    if (!mark[nb.to]) rel += nb.w;
        }
        for (int v : verts[id]) mark[v] = 0;
        stats[id].volume = vol;
        stats[id].cut = ct;
        stats[id].rel_cut = rel;
    }
    return stats;
}

}  // namespace

double node_entropy(const WeightedGraph& g, const EncodingTree& t, int node) {
    if (node == t.root) throw std::invalid_argument("node_entropy: root has no assigned entropy");
    if (!t.is_alive(node)) throw std::invalid_argument("node_entropy: dead node");
    auto verts = t.collect_vertices(node);
    auto parent_verts = t.collect_vertices(t.nodes[node].parent);
    double g_a = cut(g, verts);
    double v_a = volume(g, verts);
    double v_p = volume(g, parent_verts);
    return -entropy_term(g_a / g.total_volume, v_a, v_p);
}

double tree_entropy(const WeightedGraph& g, const EncodingTree& t) {
    if (g.total_volume <= 0.0) return 0.0;
    RelationGraph none;
    auto stats = recompute_node_stats(g, none, t);
    double acc = 0.0;
    for (std::size_t id = 0; id < t.nodes.size(); ++id) {
        if (!t.alive[id] || static_cast<int>(id) == t.root) continue;
        acc -= entropy_term(stats[id].cut / g.total_volume, stats[id].volume,
                            stats[stats[id].parent].volume);
    }
    return acc;
}

double partition_entropy(const WeightedGraph& g, const Partition& p) {
    if (g.total_volume <= 0.0) return 0.0;
    const double vg = g.total_volume;
    double acc = 0.0;
    for (const auto& members : p.modules) {
        double v_x = volume(g, members);
        double g_x = cut(g, members);
        for (int v : members) acc -= entropy_term(g.degree[v] / vg, g.degree[v], v_x);
        acc -= entropy_term(g_x / vg, v_x, vg);
    }
    return acc;
}

double partition_penalty(const WeightedGraph& g, const RelationGraph& gp, const Partition& p) {
    if (g.total_volume <= 0.0 || gp.n == 0) return 0.0;
    const double vg = g.total_volume;
    double acc = 0.0;
    for (const auto& members : p.modules) {
        double v_x = volume(g, members);
        double gp_x = cut(gp, members);
        acc -= entropy_term(gp_x / vg, v_x, vg);
    }
    return acc;
}

double partition_objective(const WeightedGraph& g, const RelationGraph& gp, const Partition& p,
                           double phi) {
    return partition_entropy(g, p) + phi * partition_penalty(g, gp, p);
}

double tree_penalty(const WeightedGraph& g, const RelationGraph& gp, const EncodingTree& t) {
    if (g.total_volume <= 0.0 || gp.n == 0) return 0.0;
    auto stats = recompute_node_stats(g, gp, t);
    double acc = 0.0;
    for (std::size_t id = 0; id < t.nodes.size(); ++id) {
        if (!t.alive[id] || static_cast<int>(id) == t.root) continue;
        if (stats[id].leaf_count <= 1 || stats[id].leaf_count >= t.n) continue;
        acc -= entropy_term(stats[id].rel_cut / g.total_volume, stats[id].volume,
                            stats[stats[id].parent].volume);
    }
    return acc;
}

double tree_objective(const WeightedGraph& g, const RelationGraph& gp, const EncodingTree& t,
                      double phi) {
    return tree_entropy(g, t) + phi * tree_penalty(g, gp, t);
}

double partial_partition_objective(const WeightedGraph& g, const RelationGraph& gp,
                                   const std::vector<std::vector<int>>& modules, double phi) {
    if (g.total_volume <= 0.0) return 0.0;
    const double vg = g.total_volume;
    std::vector<char> covered(g.n, 0);
    double acc = 0.0;
    for (const auto& members : modules) {
        double v_x = volume(g, members);
        double g_x = cut(g, members);
        double gp_x = gp.n > 0 ? cut(gp, members) : 0.0;
        for (int v : members) {
            if (covered[v]) throw std::invalid_argument("partial objective: modules overlap");
            covered[v] = 1;
            acc -= entropy_term(g.degree[v] / vg, g.degree[v], v_x);
        }
        acc -= entropy_term(g_x / vg, v_x, vg);
        acc -= entropy_term(phi * gp_x / vg, v_x, vg);
    }
    // Uncovered vertices score as provisional singletons with no G' term.
    for (int v = 0; v < g.n; ++v)
        if (!covered[v]) acc -= entropy_term(g.degree[v] / vg, g.degree[v], vg);
    return acc;
}

}  // namespace sse
