#include "sse/flat_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>

namespace sse {

namespace {

double entropy_term(double c, double num, double den) {
    if (c == 0.0 || num <= 0.0 || den <= 0.0) return 0.0;
    return c * std::log2(num / den);
}

double dlog2d(double d) { return d > 0.0 ? d * std::log2(d) : 0.0; }

// Full objective contribution of one module: vertex terms, the module cut
// term, and the phi-weighted relation cut term.
double module_contrib(const ModuleStats& m, double vg, double phi) {
    if (m.size <= 0 || m.volume <= 0.0 || vg <= 0.0) return 0.0;
    double acc = -(m.deg_log_deg - m.volume * std::log2(m.volume)) / vg;
    acc -= entropy_term(m.cut / vg, m.volume, vg);
    acc -= entropy_term(phi * m.rel_cut / vg, m.volume, vg);
    return acc;
}

// Score of a vertex between modules: a provisional singleton without the
// relation term. Removing and inserting both pass through this state, so the
// terms cancel over a full move.
double limbo_term(double degree, double vg) {
    if (degree <= 0.0 || vg <= 0.0) return 0.0;
    return -(degree / vg) * std::log2(degree / vg);
}

ModuleStats merge_stats(const ModuleStats& x, const ModuleStats& y, double w, double wrel) {
    ModuleStats m;
    m.volume = x.volume + y.volume;
    m.cut = x.cut + y.cut - 2.0 * w;
    m.rel_cut = x.rel_cut + y.rel_cut - 2.0 * wrel;
    m.deg_log_deg = x.deg_log_deg + y.deg_log_deg;
    m.size = x.size + y.size;
    return m;
}

}  // namespace

double delta_merge(const ModuleStats& x, const ModuleStats& y, double w_between,
                   double w_rel_between, double total_volume, double phi) {
    ModuleStats m = merge_stats(x, y, w_between, w_rel_between);
    return module_contrib(x, total_volume, phi) + module_contrib(y, total_volume, phi) -
           module_contrib(m, total_volume, phi);
}

double delta_remove(const ModuleStats& x, const VertexStats& v, double w_v_rest,
                    double w_rel_v_rest, double total_volume, double phi) {
    ModuleStats r;
    r.size = x.size - 1;
    if (r.size > 0) {
        r.volume = x.volume - v.degree;
        r.cut = x.cut - v.degree + 2.0 * w_v_rest;
        r.rel_cut = x.rel_cut - v.rel_strength + 2.0 * w_rel_v_rest;
        r.deg_log_deg = x.deg_log_deg - dlog2d(v.degree);
    }
    return module_contrib(x, total_volume, phi) - module_contrib(r, total_volume, phi) -
           limbo_term(v.degree, total_volume);
}

double delta_insert(const ModuleStats& y, const VertexStats& v, double w_v_y, double w_rel_v_y,
                    double total_volume, double phi) {
    ModuleStats a;
    a.volume = y.volume + v.degree;
    a.cut = y.cut + v.degree - 2.0 * w_v_y;
    a.rel_cut = y.rel_cut + v.rel_strength - 2.0 * w_rel_v_y;
    a.deg_log_deg = y.deg_log_deg + dlog2d(v.degree);
    a.size = y.size + 1;
    return module_contrib(a, total_volume, phi) - module_contrib(y, total_volume, phi) -
           limbo_term(v.degree, total_volume);
}

namespace {

struct PairW {
    double w = 0.0;
    double wrel = 0.0;
};

struct QEntry {
    double delta;
    int a, b;
    std::uint32_t sa, sb;
};

struct QCmp {
    bool operator()(const QEntry& x, const QEntry& y) const {
        if (x.delta != y.delta) return x.delta < y.delta;  // max-heap on the gain
        if (x.a != y.a) return x.a > y.a;                  // then smallest pair
        return x.b > y.b;
    }
};

}  // namespace

FlatResult minimize_2d(const WeightedGraph& g, const RelationGraph& gp, const Hyperparams& hp,
                       const PartitionObserver& on_step) {
    if (gp.n != 0 && gp.n != g.n)
        throw std::invalid_argument("relation graph vertex count mismatch");
    const int n = g.n;
    const double vg = g.total_volume;
    const double phi = hp.phi;
    const bool has_rel = gp.n > 0;

    std::vector<ModuleStats> stats(n);
    std::vector<VertexStats> vstats(n);
    std::vector<int> assignment(n);
    std::vector<std::vector<int>> members(n);
    std::vector<char> alive(n, 1);
    std::vector<std::uint32_t> stamps(n, 0);
    std::vector<std::map<int, PairW>> nbr(n);

    for (int v = 0; v < n; ++v) {
        double d = g.degree[v];
        double s = has_rel ? gp.strength[v] : 0.0;
        vstats[v] = {d, s};
        stats[v] = {d, d, s, dlog2d(d), 1};
        assignment[v] = v;
        members[v] = {v};
        for (const auto& nb : g.adj[v])
            if (nb.to > v) nbr[v][nb.to].w = nb.w;
        if (has_rel)
            for (const auto& nb : gp.adj[v])
                if (nb.to > v) nbr[v][nb.to].wrel = nb.w;
    }
    // Mirror the upper-triangle entries.
    for (int v = 0; v < n; ++v)
        for (const auto& [t, pw] : nbr[v])
            if (t > v) nbr[t][v] = pw;

    FlatResult res;
    double objective = 0.0;
    for (int v = 0; v < n; ++v) objective += module_contrib(stats[v], vg, phi);
    res.trace.push_back(objective);

    auto emit = [&]() {
        if (on_step) on_step(Partition::from_assignment(assignment, g, gp));
    };

    // Merging stage: best-first merges with lazy queue invalidation.
    std::priority_queue<QEntry, std::vector<QEntry>, QCmp> pq;
    auto push_pair = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        const PairW& pw = nbr[a].at(b);
        double delta = delta_merge(stats[a], stats[b], pw.w, pw.wrel, vg, phi);
        pq.push({delta, a, b, stamps[a], stamps[b]});
    };
    for (int v = 0; v < n; ++v)
        for (const auto& [t, pw] : nbr[v]) {
            (void)pw;
            if (t > v) push_pair(v, t);
        }

    while (!pq.empty()) {
        if (hp.max_merges > 0 && static_cast<std::size_t>(res.merges) >= hp.max_merges) break;
        QEntry e = pq.top();
        pq.pop();
        if (!alive[e.a] || !alive[e.b] || stamps[e.a] != e.sa || stamps[e.b] != e.sb) continue;
        if (e.delta <= hp.tol) break;
        int a = e.a, b = e.b;
        PairW pw = nbr[a].at(b);
        stats[a] = merge_stats(stats[a], stats[b], pw.w, pw.wrel);
        stats[b] = ModuleStats{};
        for (int v : members[b]) assignment[v] = a;
        members[a].insert(members[a].end(), members[b].begin(), members[b].end());
        members[b].clear();
        alive[b] = 0;
        nbr[a].erase(b);
        for (const auto& [t, tw] : nbr[b]) {
            if (t == a) continue;
            nbr[t].erase(b);
            PairW& f = nbr[t][a];
            f.w += tw.w;
            f.wrel += tw.wrel;
            PairW& r = nbr[a][t];
            r.w += tw.w;
            r.wrel += tw.wrel;
        }
        nbr[b].clear();
        ++stamps[a];
        ++stamps[b];
        objective -= e.delta;
        res.trace.push_back(objective);
        ++res.merges;
        for (const auto& [t, tw] : nbr[a]) {
            (void)tw;
            push_pair(a, t);
        }
        emit();
    }

    // Moving stage: ascending-index sweeps until one makes no move.
    res.converged = false;
    while (res.sweeps < hp.max_sweeps) {
        ++res.sweeps;
        int moved = 0;
        for (int v = 0; v < n; ++v) {
            int x = assignment[v];
            std::map<int, PairW> to;  // module -> weights from v
            for (const auto& nb : g.adj[v]) to[assignment[nb.to]].w += nb.w;
            if (has_rel)
                for (const auto& nb : gp.adj[v]) to[assignment[nb.to]].wrel += nb.w;
            PairW self = to.count(x) ? to[x] : PairW{};
            double dr = delta_remove(stats[x], vstats[v], self.w, self.wrel, vg, phi);
            int best = -1;
            double best_gain = hp.tol;
            for (const auto& [t, tw] : to) {
                if (t == x) continue;
                double gain = dr - delta_insert(stats[t], vstats[v], tw.w, tw.wrel, vg, phi);
                if (gain > best_gain) {
                    best_gain = gain;
                    best = t;
                }
            }
            if (best < 0) continue;
            // apply the move v: x -> best
            ModuleStats& sx = stats[x];
            sx.size -= 1;
            if (sx.size == 0) {
                sx = ModuleStats{};
                alive[x] = 0;
            } else {
                sx.volume -= vstats[v].degree;
                sx.cut += -vstats[v].degree + 2.0 * self.w;
                sx.rel_cut += -vstats[v].rel_strength + 2.0 * self.wrel;
                sx.deg_log_deg -= dlog2d(vstats[v].degree);
            }
            PairW tw = to.count(best) ? to[best] : PairW{};
            ModuleStats& sy = stats[best];
            sy.volume += vstats[v].degree;
            sy.cut += vstats[v].degree - 2.0 * tw.w;
            sy.rel_cut += vstats[v].rel_strength - 2.0 * tw.wrel;
            sy.deg_log_deg += dlog2d(vstats[v].degree);
            sy.size += 1;
            assignment[v] = best;
            objective -= best_gain;
            res.trace.push_back(objective);
            ++moved;
            emit();
        }
        if (moved == 0) {
            res.converged = true;
            break;
        }
    }

    res.partition = Partition::from_assignment(assignment, g, gp);
    res.tree = EncodingTree::from_partition(res.partition, g, gp);
    res.objective = objective;
    return res;
}

}  // namespace sse
