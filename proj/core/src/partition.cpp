#include "sse/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "sse/errors.hpp"

namespace sse {

namespace {

ModuleCache compute_cache(const std::vector<int>& members, const WeightedGraph& g,
                          const RelationGraph& gp) {
    ModuleCache c;
    c.volume = volume(g, members);
    c.cut = cut(g, members);
    c.rel_cut = gp.n > 0 ? cut(gp, members) : 0.0;
    return c;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Partition Partition::from_assignment(const std::vector<int>& raw, const WeightedGraph& g,
                                     const RelationGraph& gp) {
    if (static_cast<int>(raw.size()) != g.n)
        throw std::invalid_argument("assignment size does not match vertex count");
    Partition p;
    p.assignment.assign(g.n, -1);
    std::unordered_map<int, int> remap;  // raw id -> dense id, by first appearance
    for (int v = 0; v < g.n; ++v) {
        int r = raw[v];
        if (r < 0) throw std::invalid_argument("negative module id");
        auto [it, inserted] = remap.emplace(r, static_cast<int>(p.modules.size()));
        if (inserted) p.modules.emplace_back();
        p.assignment[v] = it->second;
        p.modules[it->second].push_back(v);
    }
    p.caches.reserve(p.modules.size());
    for (const auto& m : p.modules) p.caches.push_back(compute_cache(m, g, gp));
    return p;
}

void Partition::validate(const WeightedGraph& g, const RelationGraph& gp, double rel_tol) const {
    if (static_cast<int>(assignment.size()) != g.n)
        throw std::logic_error("partition: assignment size mismatch");
    if (caches.size() != modules.size())
        throw std::logic_error("partition: cache count mismatch");
    std::vector<char> covered(g.n, 0);
    for (int id = 0; id < num_modules(); ++id) {
        const auto& m = modules[id];
        if (m.empty()) throw std::logic_error("partition: empty module");
        for (int v : m) {
            if (v < 0 || v >= g.n) throw std::logic_error("partition: vertex out of range");
            if (covered[v]) throw std::logic_error("partition: modules overlap");
            covered[v] = 1;
            if (assignment[v] != id) throw std::logic_error("partition: assignment mismatch");
        }
        ModuleCache r = compute_cache(m, g, gp);
        if (!close_rel(caches[id].volume, r.volume, rel_tol) ||
            !close_rel(caches[id].cut, r.cut, rel_tol) ||
            !close_rel(caches[id].rel_cut, r.rel_cut, rel_tol))
            throw std::logic_error("partition: stale module cache");
    }
    for (int v = 0; v < g.n; ++v)
        if (!covered[v]) throw std::logic_error("partition: vertex not covered");
}

}  // namespace sse
