#pragma once

#include <string>
#include <vector>

#include "sse/graph.hpp"
#include "sse/partition.hpp"

namespace sse {

struct TreeNode {
    int parent = -1;
    std::vector<int> children;  // ordered
    int vertex = -1;            // leaf payload, -1 for internal nodes
    int leaf_count = 0;         // |T_alpha|
    double volume = 0.0;        // V_alpha in G
    double cut = 0.0;           // g_alpha in G
    double rel_cut = 0.0;       // g'_alpha in G'

    bool is_leaf() const { return vertex >= 0; }
};

// Rooted encoding tree over the vertices of G: one leaf per vertex (node ids
// 0..n-1), the root covers V, and every node's children partition its vertex
// set. Compressed-out nodes are tombstoned so ids stay stable.
struct EncodingTree {
    int n = 0;
    int root = -1;
    std::vector<TreeNode> nodes;
    std::vector<char> alive;

    static EncodingTree flat(const WeightedGraph& g, const RelationGraph& gp);
    static EncodingTree from_partition(const Partition& p, const WeightedGraph& g,
                                       const RelationGraph& gp);

    bool is_alive(int id) const { return id >= 0 && id < static_cast<int>(alive.size()) && alive[id]; }
    int node_count() const;
    int height() const;  // max root-to-leaf edge count
    std::vector<int> collect_vertices(int node) const;
    std::vector<std::vector<int>> root_child_vertex_sets() const;

    // Inserts a new parent over sister nodes a and b; w_ab / w_rel_ab are the
    // total G / G' edge weights between their vertex sets. Returns the new id.
    int stretch(int a, int b, double w_ab, double w_rel_ab);

    // Splices out internal non-root node a, attaching its children to a's parent.
    void compress(int a);

    // Structural checks plus cache-vs-recompute agreement.
    void validate(const WeightedGraph& g, const RelationGraph& gp, double rel_tol = 1e-9) const;

    // Leaf names are vertex indices, e.g. "((0,1),2);".
    std::string to_newick() const;
};

// Total G edge weight between two disjoint vertex sets (test/construction helper).
double between_weight(const WeightedGraph& g, std::span<const int> a, std::span<const int> b);
double between_weight(const RelationGraph& g, std::span<const int> a, std::span<const int> b);

}  // namespace sse
