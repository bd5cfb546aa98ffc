#pragma once

#include <cmath>
#include <functional>

#include "sse/constraints.hpp"
#include "sse/objective.hpp"

// Deliberately slow and simple reference implementations, kept independent of
// the code paths they check.
namespace sse::oracle {

// Visits every set partition of {0..n-1} as a restricted-growth string, in
// lexicographic order.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit);

struct BruteForceResult {
    Partition partition;
    double objective = 0.0;
};

// Exhaustive minimum of L^P over all partitions; first enumerated assignment
// wins ties. Requires n <= 10.
BruteForceResult brute_force_min_2d(const WeightedGraph& g, const RelationGraph& gp, double phi);

// Residual of a reported operator delta against a from-scratch difference.
inline double recompute_check(double objective_before, double objective_after,
                              double reported_delta) {
    return std::abs((objective_before - objective_after) - reported_delta);
}

// Union-find based closure, written independently of constraints::closure.
PairwiseConstraints transitive_closure_reference(const std::vector<VertexPair>& must_link,
                                                 const std::vector<VertexPair>& cannot_link);

}  // namespace sse::oracle
