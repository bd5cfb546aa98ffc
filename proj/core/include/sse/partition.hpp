#pragma once

#include <vector>

#include "sse/graph.hpp"

namespace sse {

struct ModuleCache {
    double volume = 0.0;   // V_X in G
    double cut = 0.0;      // g_X in G
    double rel_cut = 0.0;  // g'_X in G'
};

// A flat clustering P = {X_1, ..., X_L}. Module ids are dense and ordered by
// each module's smallest vertex; caches are filled at construction.
struct Partition {
    std::vector<int> assignment;             // vertex -> module id
    std::vector<std::vector<int>> modules;   // module id -> sorted members
    std::vector<ModuleCache> caches;

    int num_modules() const { return static_cast<int>(modules.size()); }

    static Partition from_assignment(const std::vector<int>& raw, const WeightedGraph& g,
                                     const RelationGraph& gp);

    // Disjoint cover plus cache-vs-recompute agreement (relative tolerance).
    void validate(const WeightedGraph& g, const RelationGraph& gp, double rel_tol = 1e-9) const;
};

}  // namespace sse
