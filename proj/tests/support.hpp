#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "sse/constraints.hpp"
#include "sse/encoding_tree.hpp"
#include "sse/flat_optimizer.hpp"
#include "sse/graph.hpp"
#include "sse/objective.hpp"
#include "sse/partition.hpp"

namespace testsup {

// Unit-weight triangle on vertices {0,1,2}; d_i = 2, V_G = 6.
inline sse::WeightedGraph triangle() {
    return sse::WeightedGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

// Unit-weight path 0-1-2-3.
inline sse::WeightedGraph path4() {
    return sse::WeightedGraph::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
}

// Two unit triangles {0,1,2} and {3,4,5} joined by one weak edge.
inline sse::WeightedGraph two_triangles(double bridge = 0.1) {
    return sse::WeightedGraph::from_edges(6, {{0, 1, 1.0},
                                              {1, 2, 1.0},
                                              {0, 2, 1.0},
                                              {3, 4, 1.0},
                                              {4, 5, 1.0},
                                              {3, 5, 1.0},
                                              {2, 3, bridge}});
}

inline sse::RelationGraph no_rel(int n) { return sse::RelationGraph::from_edges(n, {}); }

inline sse::RelationGraph rel_edge(int n, int a, int b, double w) {
    return sse::RelationGraph::from_edges(n, {{a, b, w}});
}

inline sse::Partition partition_of(const std::vector<std::vector<int>>& mods,
                                   const sse::WeightedGraph& g, const sse::RelationGraph& gp) {
    std::vector<int> assign(g.n, -1);
    for (std::size_t id = 0; id < mods.size(); ++id)
        for (int v : mods[id]) assign[v] = static_cast<int>(id);
    return sse::Partition::from_assignment(assign, g, gp);
}

// Engine-pinned test RNG: raw mt19937_64 draws only, no library distributions.
struct TestRng {
    std::mt19937_64 eng;
    explicit TestRng(std::uint64_t seed) : eng(seed) {}

    double uniform(double a, double b) {
        double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        return a + u * (b - a);
    }
    int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
    bool chance(double p) { return uniform(0.0, 1.0) < p; }

    double normal() {
        double u1 = uniform(1e-12, 1.0);
        double u2 = uniform(0.0, 1.0);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
};

inline sse::WeightedGraph random_graph(int n, TestRng& rng, double edge_prob = -1.0) {
    if (edge_prob < 0) edge_prob = rng.uniform(0.12, 0.5);
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(edge_prob)) edges.emplace_back(i, j, rng.uniform(0.1, 2.0));
    return sse::WeightedGraph::from_edges(n, edges);
}

inline sse::RelationGraph random_relation(int n, TestRng& rng, double edge_prob = 0.15) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(edge_prob)) edges.emplace_back(i, j, rng.uniform(-1.5, 1.5));
    return sse::RelationGraph::from_edges(n, edges);
}

inline std::vector<int> random_assignment(int n, TestRng& rng) {
    int max_mods = 1 + rng.below(n);
    std::vector<int> a(n);
    for (int v = 0; v < n; ++v) a[v] = rng.below(max_mods);
    return a;
}

inline std::vector<std::vector<int>> modules_of(const std::vector<int>& assignment) {
    int top = 0;
    for (int a : assignment) top = std::max(top, a);
    std::vector<std::vector<int>> mods(top + 1);
    for (int v = 0; v < static_cast<int>(assignment.size()); ++v) mods[assignment[v]].push_back(v);
    std::erase_if(mods, [](const auto& m) { return m.empty(); });
    return mods;
}

inline sse::ModuleStats stats_of(const std::vector<int>& members, const sse::WeightedGraph& g,
                                 const sse::RelationGraph& gp) {
    sse::ModuleStats s;
    s.volume = sse::volume(g, members);
    s.cut = sse::cut(g, members);
    s.rel_cut = gp.n > 0 ? sse::cut(gp, members) : 0.0;
    for (int v : members)
        if (g.degree[v] > 0) s.deg_log_deg += g.degree[v] * std::log2(g.degree[v]);
    s.size = static_cast<int>(members.size());
    return s;
}

inline sse::VertexStats vertex_stats(int v, const sse::WeightedGraph& g,
                                     const sse::RelationGraph& gp) {
    return {g.degree[v], gp.n > 0 ? gp.strength[v] : 0.0};
}

// Random encoding tree grown by stretching random sister pairs anywhere.
inline sse::EncodingTree random_tree(const sse::WeightedGraph& g, const sse::RelationGraph& gp,
                                     TestRng& rng, int extra_stretches = -1) {
    sse::EncodingTree t = sse::EncodingTree::flat(g, gp);
    if (extra_stretches < 0) extra_stretches = rng.below(std::max(1, 2 * g.n));
    for (int s = 0; s < extra_stretches; ++s) {
        std::vector<int> candidates;
        for (int id = 0; id < static_cast<int>(t.nodes.size()); ++id)
            if (t.is_alive(id) && !t.nodes[id].is_leaf() && t.nodes[id].children.size() >= 2)
                candidates.push_back(id);
        if (candidates.empty()) break;
        int parent = candidates[rng.below(static_cast<int>(candidates.size()))];
        const auto& kids = t.nodes[parent].children;
        int ia = rng.below(static_cast<int>(kids.size()));
        int ib = rng.below(static_cast<int>(kids.size()) - 1);
        if (ib >= ia) ++ib;
        int a = kids[ia], b = kids[ib];
        auto va = t.collect_vertices(a);
        auto vb = t.collect_vertices(b);
        double w = sse::between_weight(g, va, vb);
        double wrel = gp.n > 0 ? sse::between_weight(gp, va, vb) : 0.0;
        t.stretch(a, b, w, wrel);
    }
    return t;
}

struct Blobs {
    sse::DataMatrix data;
    std::vector<int> labels;
};

// k gaussian blobs in the plane, centers on a circle sized so neighboring
// centers sit `center_dist` apart.
inline Blobs make_blobs(int n, int k, double center_dist, double spread, std::uint64_t seed,
                        int dim = 2) {
    TestRng rng(seed);
    Blobs b;
    b.data.rows = n;
    b.data.cols = dim;
    b.data.values.resize(static_cast<std::size_t>(n) * dim);
    b.labels.resize(n);
    double radius = k == 1 ? 0.0 : center_dist / (2.0 * std::sin(3.141592653589793 / k));
    for (int i = 0; i < n; ++i) {
        int c = i % k;
        double angle = 6.283185307179586 * c / k;
        b.labels[i] = c;
        for (int d = 0; d < dim; ++d) {
            double center = d == 0 ? radius * std::cos(angle)
                                   : (d == 1 ? radius * std::sin(angle) : 0.0);
            b.data.values[static_cast<std::size_t>(i) * dim + d] = center + spread * rng.normal();
        }
    }
    b.data.labels = b.labels;
    return b;
}

}  // namespace testsup
