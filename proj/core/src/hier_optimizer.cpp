#include "sse/hier_optimizer.hpp"

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

// Objective terms owned by one node under a given parent volume. The relation
// term only exists for nodes with 1 < |T_alpha| < |V|.
double node_term(double vol, double cut, double rel_cut, int leaves, double parent_vol,
                 double vg, double phi, int n_total) {
    double acc = -entropy_term(cut / vg, vol, parent_vol);
    if (leaves > 1 && leaves < n_total)
        acc -= entropy_term(phi * rel_cut / vg, vol, parent_vol);
    return acc;
}

}  // namespace

double delta_stretch(const EncodingTree& t, int a, int b, double w_ab, double w_rel_ab,
                     double phi) {
    if (!t.is_alive(a) || !t.is_alive(b) || a == b)
        throw std::invalid_argument("delta_stretch: bad node pair");
    const TreeNode& na = t.nodes[a];
    const TreeNode& nb = t.nodes[b];
    if (na.parent < 0 || na.parent != nb.parent)
        throw std::invalid_argument("delta_stretch: nodes are not sisters");
    const double vg = t.nodes[t.root].volume;
    const double vp = t.nodes[na.parent].volume;
    const double dv = na.volume + nb.volume;
    const double dc = na.cut + nb.cut - 2.0 * w_ab;
    const double drel = na.rel_cut + nb.rel_cut - 2.0 * w_rel_ab;
    const int dl = na.leaf_count + nb.leaf_count;

    double before = node_term(na.volume, na.cut, na.rel_cut, na.leaf_count, vp, vg, phi, t.n) +
                    node_term(nb.volume, nb.cut, nb.rel_cut, nb.leaf_count, vp, vg, phi, t.n);
    double after = node_term(na.volume, na.cut, na.rel_cut, na.leaf_count, dv, vg, phi, t.n) +
                   node_term(nb.volume, nb.cut, nb.rel_cut, nb.leaf_count, dv, vg, phi, t.n) +
                   node_term(dv, dc, drel, dl, vp, vg, phi, t.n);
    return before - after;
}

double delta_compress(const EncodingTree& t, int a, double phi) {
    if (!t.is_alive(a) || a == t.root || t.nodes[a].is_leaf())
        throw std::invalid_argument("delta_compress: need an internal non-root node");
    const TreeNode& na = t.nodes[a];
    const double vg = t.nodes[t.root].volume;
    const double vp = t.nodes[na.parent].volume;
    double before = node_term(na.volume, na.cut, na.rel_cut, na.leaf_count, vp, vg, phi, t.n);
    double after = 0.0;
    for (int c : na.children) {
        const TreeNode& nc = t.nodes[c];
        before += node_term(nc.volume, nc.cut, nc.rel_cut, nc.leaf_count, na.volume, vg, phi, t.n);
        after += node_term(nc.volume, nc.cut, nc.rel_cut, nc.leaf_count, vp, vg, phi, t.n);
    }
    return before - after;
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
        if (x.delta != y.delta) return x.delta < y.delta;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

// Greedy compressing until the height bound holds. Every candidate is an
// internal non-root node; the best delta is applied even when negative
// because the height constraint is hard.
void compress_to_height(EncodingTree& t, int max_height, double phi, double& objective,
                        std::vector<double>* trace, const TreeObserver& on_step) {
    while (t.height() > max_height) {
        int best = -1;
        double best_delta = 0.0;
        for (int id = 0; id < static_cast<int>(t.nodes.size()); ++id) {
            if (!t.is_alive(id) || id == t.root || t.nodes[id].is_leaf()) continue;
            double d = delta_compress(t, id, phi);
            if (best == -1 || d > best_delta) {
                best = id;
                best_delta = d;
            }
        }
        if (best == -1) break;
        t.compress(best);
        objective -= best_delta;
        if (trace) trace->push_back(objective);
        if (on_step) on_step(t);
    }
}

}  // namespace

HierResult minimize_highd(const WeightedGraph& g, const RelationGraph& gp, const Hyperparams& hp,
                          const TreeObserver& on_step) {
    if (hp.height < 2) throw std::invalid_argument("tree height K must be >= 2");
    if (gp.n != 0 && gp.n != g.n)
        throw std::invalid_argument("relation graph vertex count mismatch");
    const int n = g.n;
    const double phi = hp.phi;
    const bool has_rel = gp.n > 0;

    EncodingTree t = EncodingTree::flat(g, gp);
    HierResult res;
    double objective = tree_objective(g, gp, t, phi);

    // Pair weights between current root children, keyed by node id.
    std::size_t cap = static_cast<std::size_t>(2 * n + 1);
    std::vector<std::map<int, PairW>> nbr(cap);
    std::vector<std::uint32_t> stamps(cap, 0);
    for (int v = 0; v < n; ++v) {
        for (const auto& nb : g.adj[v])
            if (nb.to > v) {
                nbr[v][nb.to].w = nb.w;
                nbr[nb.to][v].w = nb.w;
            }
        if (has_rel)
            for (const auto& nb : gp.adj[v])
                if (nb.to > v) {
                    nbr[v][nb.to].wrel = nb.w;
                    nbr[nb.to][v].wrel = nb.w;
                }
    }

    std::priority_queue<QEntry, std::vector<QEntry>, QCmp> pq;
    auto push_pair = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        const PairW& pw = nbr[a].at(b);
        pq.push({delta_stretch(t, a, b, pw.w, pw.wrel, phi), a, b, stamps[a], stamps[b]});
    };
    for (int v = 0; v < n; ++v)
        for (const auto& [u, pw] : nbr[v]) {
            (void)pw;
            if (u > v) push_pair(v, u);
        }

    while (static_cast<int>(t.nodes[t.root].children.size()) > 2) {
        int a = -1, b = -1;
        double delta = 0.0;
        PairW pw{};
        while (!pq.empty()) {
            QEntry e = pq.top();
            pq.pop();
            if (stamps[e.a] != e.sa || stamps[e.b] != e.sb) continue;
            a = e.a;
            b = e.b;
            delta = e.delta;
            pw = nbr[a].at(b);
            break;
        }
        if (a == -1) {
            // No connected pair left among the root children; fall back to the
            // best pair overall so the root still reaches degree two.
            std::vector<int> kids = t.nodes[t.root].children;
            std::sort(kids.begin(), kids.end());
            for (std::size_t i = 0; i < kids.size(); ++i)
                for (std::size_t j = i + 1; j < kids.size(); ++j) {
                    double d = delta_stretch(t, kids[i], kids[j], 0.0, 0.0, phi);
                    if (a == -1 || d > delta) {
                        a = kids[i];
                        b = kids[j];
                        delta = d;
                    }
                }
            pw = PairW{};
        }

        int d = t.stretch(a, b, pw.w, pw.wrel);
        if (static_cast<std::size_t>(d) >= nbr.size()) {
            nbr.resize(d + 1);
            stamps.resize(d + 1, 0);
        }
        for (const auto& [u, uw] : nbr[a]) {
            if (u == b) continue;
            nbr[u].erase(a);
            PairW& f = nbr[u][d];
            f.w += uw.w;
            f.wrel += uw.wrel;
            PairW& r = nbr[d][u];
            r.w += uw.w;
            r.wrel += uw.wrel;
        }
        for (const auto& [u, uw] : nbr[b]) {
            if (u == a) continue;
            nbr[u].erase(b);
            PairW& f = nbr[u][d];
            f.w += uw.w;
            f.wrel += uw.wrel;
            PairW& r = nbr[d][u];
            r.w += uw.w;
            r.wrel += uw.wrel;
        }
        nbr[a].clear();
        nbr[b].clear();
        ++stamps[a];
        ++stamps[b];
        objective -= delta;
        res.stretch_trace.push_back(objective);
        for (const auto& [u, uw] : nbr[d]) {
            (void)uw;
            push_pair(std::min(d, u), std::max(d, u));
        }
        if (on_step) on_step(t);
    }

    res.binary_tree = t;
    res.objective_binary = objective;

    EncodingTree tk = t;
    double objective_k = objective;
    compress_to_height(tk, hp.height, phi, objective_k, &res.compress_trace, on_step);
    res.tree_k = std::move(tk);
    res.objective_k = objective_k;
    return res;
}

Partition extract_partition(const EncodingTree& t, const WeightedGraph& g,
                            const RelationGraph& gp, double phi, int target_height) {
    EncodingTree c = t;
    double objective = 0.0;  // trajectory value not needed here
    compress_to_height(c, target_height, phi, objective, nullptr, {});
    std::vector<int> assign(c.n, -1);
    int next = 0;
    for (int child : c.nodes[c.root].children) {
        for (int v : c.collect_vertices(child)) assign[v] = next;
        ++next;
    }
    return Partition::from_assignment(assign, g, gp);
}

}  // namespace sse
