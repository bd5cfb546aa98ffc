#pragma once

#include <cstdint>

#include "sse/encoding_tree.hpp"
#include "sse/partition.hpp"

namespace sse {

struct Hyperparams {
    double phi = 2.0;            // penalty weight
    int height = 2;              // target tree height K
    int max_sweeps = 100;        // moving-stage sweep cap
    double tol = 1e-12;          // strict-improvement threshold
    std::uint64_t seed = 0;
    std::size_t max_merges = 0;  // 0 = let the objective decide
};

// All evaluators below recompute volumes and cuts from the graphs; they keep
// no incremental state and serve as the ground truth for the operator deltas.
// Convention everywhere: terms with a zero coefficient or zero volume
// contribute exactly 0, so isolated vertices never produce NaN or infinities.

// -(g_a / V_G) * log2(V_a / V_parent) for a non-root node.
double node_entropy(const WeightedGraph& g, const EncodingTree& t, int node);

// Sum of node_entropy over all non-root nodes.
double tree_entropy(const WeightedGraph& g, const EncodingTree& t);

// Two-level structural entropy of a partition:
//   - sum_X sum_{v in X} (d_v/V_G) log2(d_v/V_X) - sum_X (g_X/V_G) log2(V_X/V_G)
double partition_entropy(const WeightedGraph& g, const Partition& p);

// Constraint penalty of a partition: - sum_X (g'_X/V_G) log2(V_X/V_G).
// Signed; negative values reward satisfied cannot-links.
double partition_penalty(const WeightedGraph& g, const RelationGraph& gp, const Partition& p);

// L^P = partition_entropy + phi * partition_penalty.
double partition_objective(const WeightedGraph& g, const RelationGraph& gp, const Partition& p,
                           double phi);

// Constraint penalty of a tree, summed over nodes with 1 < |T_alpha| < |V|
// (leaves and the root are excluded): -(g'_a/V_G) log2(V_a/V_parent).
double tree_penalty(const WeightedGraph& g, const RelationGraph& gp, const EncodingTree& t);

// L^T = tree_entropy + phi * tree_penalty.
double tree_objective(const WeightedGraph& g, const RelationGraph& gp, const EncodingTree& t,
                      double phi);

// Objective of a disjoint module family that need not cover V. Vertices not
// covered by any module are scored as provisional singletons without a
// relation-graph term, which is exactly the state the removing / inserting
// deltas transition through.
double partial_partition_objective(const WeightedGraph& g, const RelationGraph& gp,
                                   const std::vector<std::vector<int>>& modules, double phi);

}  // namespace sse
