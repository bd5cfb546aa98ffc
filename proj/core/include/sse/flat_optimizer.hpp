#pragma once

#include <functional>
#include <vector>

#include "sse/objective.hpp"

namespace sse {

// Running totals for one module of the working partition.
struct ModuleStats {
    double volume = 0.0;       // V_X
    double cut = 0.0;          // g_X
    double rel_cut = 0.0;      // g'_X
    double deg_log_deg = 0.0;  // sum over members of d_v * log2(d_v)
    int size = 0;
};

struct VertexStats {
    double degree = 0.0;        // d_v
    double rel_strength = 0.0;  // signed G' cut of {v}
};

// Decrease of L^P from merging X and Y; w_* are the total G / G' edge weights
// between the two modules.
double delta_merge(const ModuleStats& x, const ModuleStats& y, double w_between,
                   double w_rel_between, double total_volume, double phi);

// Decrease of L^P from taking v out of X; w_* are the edge weights between v
// and the rest of X.
double delta_remove(const ModuleStats& x, const VertexStats& v, double w_v_rest,
                    double w_rel_v_rest, double total_volume, double phi);

// Increase of L^P from inserting v into Y; w_* are the edge weights between v
// and Y. The gain of a full move is delta_remove - delta_insert.
double delta_insert(const ModuleStats& y, const VertexStats& v, double w_v_y, double w_rel_v_y,
                    double total_volume, double phi);

struct FlatResult {
    Partition partition;
    EncodingTree tree;          // height-2 view of the partition
    std::vector<double> trace;  // objective after init and each accepted step
    double objective = 0.0;
    bool converged = true;
    int merges = 0;
    int sweeps = 0;
};

using PartitionObserver = std::function<void(const Partition&)>;

// Greedy 2-d minimization: merging stage (best-first module merges while the
// gain stays positive) followed by moving sweeps until a sweep makes no move
// or hp.max_sweeps is reached.
FlatResult minimize_2d(const WeightedGraph& g, const RelationGraph& gp, const Hyperparams& hp,
                       const PartitionObserver& on_step = {});

}  // namespace sse
