#pragma once

#include <functional>
#include <vector>

#include "sse/objective.hpp"

namespace sse {

// Decrease of L^T from inserting a new parent over sister nodes a and b;
// w_ab / w_rel_ab are the total G / G' edge weights between their vertex sets.
double delta_stretch(const EncodingTree& t, int a, int b, double w_ab, double w_rel_ab,
                     double phi);

// Decrease of L^T from splicing out internal non-root node a.
double delta_compress(const EncodingTree& t, int a, double phi);

struct HierResult {
    EncodingTree binary_tree;            // after stretching
    EncodingTree tree_k;                 // after compressing to height <= K
    std::vector<double> stretch_trace;   // objective after each stretch
    std::vector<double> compress_trace;  // objective after each compress
    double objective_binary = 0.0;
    double objective_k = 0.0;
};

using TreeObserver = std::function<void(const EncodingTree&)>;

// Greedy high-d minimization: stretch the best root-child pair until the root
// has two children, then compress the best internal node until the height is
// at most hp.height.
HierResult minimize_highd(const WeightedGraph& g, const RelationGraph& gp, const Hyperparams& hp,
                          const TreeObserver& on_step = {});

// Compresses a copy of `t` until its height is at most `target_height` and
// returns the partition formed by the root children's vertex sets.
Partition extract_partition(const EncodingTree& t, const WeightedGraph& g,
                            const RelationGraph& gp, double phi, int target_height = 2);

}  // namespace sse
