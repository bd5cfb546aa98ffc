#include "sse/encoding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sse {

namespace {

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

EncodingTree EncodingTree::flat(const WeightedGraph& g, const RelationGraph& gp) {
    EncodingTree t;
    t.n = g.n;
    t.nodes.resize(g.n + 1);
    t.alive.assign(g.n + 1, 1);
    t.root = g.n;
    TreeNode& root = t.nodes[t.root];
    root.vertex = -1;
    root.leaf_count = g.n;
    root.volume = g.total_volume;
    root.cut = 0.0;
    root.rel_cut = 0.0;
    root.children.reserve(g.n);
    for (int v = 0; v < g.n; ++v) {
        TreeNode& leaf = t.nodes[v];
        leaf.parent = t.root;
        leaf.vertex = v;
        leaf.leaf_count = 1;
        leaf.volume = g.degree[v];
        leaf.cut = g.degree[v];  // no self-loops, so the cut of {v} is d_v
        leaf.rel_cut = gp.n > 0 ? gp.strength[v] : 0.0;
        root.children.push_back(v);
    }
    return t;
}

EncodingTree EncodingTree::from_partition(const Partition& p, const WeightedGraph& g,
                                          const RelationGraph& gp) {
    EncodingTree t = flat(g, gp);
    if (p.num_modules() == g.n) return t;  // all singletons: already the flat tree
    TreeNode& root = t.nodes[t.root];
    root.children.clear();
    for (int id = 0; id < p.num_modules(); ++id) {
        const auto& members = p.modules[id];
        int mid = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        t.alive.push_back(1);
        TreeNode& m = t.nodes[mid];
        m.parent = t.root;
        m.vertex = -1;
        m.leaf_count = static_cast<int>(members.size());
        m.volume = p.caches[id].volume;
        m.cut = p.caches[id].cut;
        m.rel_cut = p.caches[id].rel_cut;
        m.children.assign(members.begin(), members.end());
        for (int v : members) t.nodes[v].parent = mid;
        t.nodes[t.root].children.push_back(mid);
    }
    return t;
}

int EncodingTree::node_count() const {
    int c = 0;
    for (char a : alive) c += a;
    return c;
}

int EncodingTree::height() const {
    int best = 0;
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const TreeNode& node = nodes[id];
        if (node.children.empty()) {
            best = std::max(best, depth);
        } else {
            for (int c : node.children) stack.emplace_back(c, depth + 1);
        }
    }
    return best;
}

std::vector<int> EncodingTree::collect_vertices(int node) const {
    std::vector<int> out;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        const TreeNode& nd = nodes[id];
        if (nd.is_leaf())
            out.push_back(nd.vertex);
        else
            for (int c : nd.children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> EncodingTree::root_child_vertex_sets() const {
    std::vector<std::vector<int>> out;
    for (int c : nodes[root].children) out.push_back(collect_vertices(c));
    return out;
}

int EncodingTree::stretch(int a, int b, double w_ab, double w_rel_ab) {
    if (!is_alive(a) || !is_alive(b) || a == b)
        throw std::logic_error("stretch: bad node pair");
    int parent = nodes[a].parent;
    if (parent < 0 || parent != nodes[b].parent)
        throw std::logic_error("stretch: nodes are not sisters");

    int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    alive.push_back(1);
    TreeNode& d = nodes[id];
    d.parent = parent;
    d.vertex = -1;
    d.children = {a, b};
    d.leaf_count = nodes[a].leaf_count + nodes[b].leaf_count;
    d.volume = nodes[a].volume + nodes[b].volume;
    d.cut = nodes[a].cut + nodes[b].cut - 2.0 * w_ab;
    d.rel_cut = nodes[a].rel_cut + nodes[b].rel_cut - 2.0 * w_rel_ab;

    auto& pc = nodes[parent].children;
    auto ia = std::find(pc.begin(), pc.end(), a);
    auto ib = std::find(pc.begin(), pc.end(), b);
    if (ia == pc.end() || ib == pc.end()) throw std::logic_error("stretch: broken child links");
    // The new node takes the earlier slot; the later one is removed.
    if (ia - pc.begin() > ib - pc.begin()) std::swap(ia, ib);
    *ia = id;
    pc.erase(ib);
    nodes[a].parent = id;
    nodes[b].parent = id;
    return id;
}

void EncodingTree::compress(int a) {
    if (!is_alive(a)) throw std::logic_error("compress: dead node");
    if (a == root) throw std::logic_error("compress: cannot remove the root");
    TreeNode& node = nodes[a];
    if (node.is_leaf()) throw std::logic_error("compress: cannot remove a leaf");
    int parent = node.parent;
    auto& pc = nodes[parent].children;
    auto it = std::find(pc.begin(), pc.end(), a);
    if (it == pc.end()) throw std::logic_error("compress: broken child link");
    std::size_t pos = static_cast<std::size_t>(it - pc.begin());
    std::vector<int> moved = node.children;
    pc.erase(pc.begin() + pos);
    pc.insert(pc.begin() + pos, moved.begin(), moved.end());
    for (int c : moved) nodes[c].parent = parent;
    node.children.clear();
    alive[a] = 0;
}

void EncodingTree::validate(const WeightedGraph& g, const RelationGraph& gp,
                            double rel_tol) const {
    if (!is_alive(root) || nodes[root].parent != -1)
        throw std::logic_error("tree: bad root");
    std::vector<char> seen(nodes.size(), 0);
    std::vector<char> vertex_seen(n, 0);
    std::vector<int> stack{root};
    int reached = 0;
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        if (!is_alive(id)) throw std::logic_error("tree: dead node reachable");
        if (seen[id]) throw std::logic_error("tree: node reached twice");
        seen[id] = 1;
        ++reached;
        const TreeNode& nd = nodes[id];
        if (nd.is_leaf()) {
            if (!nd.children.empty()) throw std::logic_error("tree: leaf with children");
            if (nd.vertex < 0 || nd.vertex >= n || vertex_seen[nd.vertex])
                throw std::logic_error("tree: bad leaf vertex");
            vertex_seen[nd.vertex] = 1;
        } else {
            if (nd.children.empty() && id != root)
                throw std::logic_error("tree: internal node without children");
            for (int c : nd.children) {
                if (!is_alive(c) || nodes[c].parent != id)
                    throw std::logic_error("tree: parent/child mismatch");
                stack.push_back(c);
            }
        }
    }
    if (reached != node_count()) throw std::logic_error("tree: unreachable alive nodes");
    for (int v = 0; v < n; ++v)
        if (!vertex_seen[v]) throw std::logic_error("tree: vertex missing from leaves");

    // Cache agreement, recomputed from the graphs.
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        if (!alive[id]) continue;
        auto verts = collect_vertices(static_cast<int>(id));
        const TreeNode& nd = nodes[id];
        if (static_cast<int>(verts.size()) != nd.leaf_count)
            throw std::logic_error("tree: stale leaf count");
        double vol = volume(g, verts);
        double ct = cut(g, verts);
        double rel = gp.n > 0 ? cut(gp, verts) : 0.0;
        if (!close_rel(nd.volume, vol, rel_tol) || !close_rel(nd.cut, ct, rel_tol) ||
            !close_rel(nd.rel_cut, rel, rel_tol))
            throw std::logic_error("tree: stale node cache");
    }
}

namespace {

void newick_rec(const EncodingTree& t, int id, std::string& out) {
    const TreeNode& nd = t.nodes[id];
    if (nd.is_leaf()) {
        out += std::to_string(nd.vertex);
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < nd.children.size(); ++i) {
        if (i > 0) out += ',';
        newick_rec(t, nd.children[i], out);
    }
    out += ')';
}

}  // namespace

std::string EncodingTree::to_newick() const {
    std::string out;
    newick_rec(*this, root, out);
    out += ';';
    return out;
}

namespace {

template <typename Graph>
double between_weight_impl(const Graph& g, std::span<const int> a, std::span<const int> b) {
    std::vector<char> in_b(g.n, 0);
    for (int v : b) in_b[v] = 1;
    double acc = 0.0;
    for (int v : a)
        for (const auto& nb : g.adj[v])
            if (in_b[nb.to]) acc += nb.w;
    return acc;
}

}  // namespace

double between_weight(const WeightedGraph& g, std::span<const int> a, std::span<const int> b) {
    return between_weight_impl(g, a, b);
}
double between_weight(const RelationGraph& g, std::span<const int> a, std::span<const int> b) {
    return between_weight_impl(g, a, b);
}

}  // namespace sse
