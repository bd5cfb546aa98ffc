#pragma once

#include <json.hpp>

#include "sse/encoding_tree.hpp"
#include "sse/errors.hpp"

namespace sse::cli {

// Nested tree serialization: leaves are {"vertex": i}, internal nodes are
// {"children": [...]}.
inline nlohmann::json tree_to_json(const EncodingTree& t, int id) {
    const TreeNode& nd = t.nodes[id];
    nlohmann::json j;
    if (nd.is_leaf()) {
        j["vertex"] = nd.vertex;
        return j;
    }
    nlohmann::json kids = nlohmann::json::array();
    for (int c : nd.children) kids.push_back(tree_to_json(t, c));
    j["children"] = std::move(kids);
    return j;
}

inline nlohmann::json tree_to_json(const EncodingTree& t) { return tree_to_json(t, t.root); }

namespace detail {

inline int build_node(const nlohmann::json& j, EncodingTree& t, std::vector<char>& seen) {
    if (j.contains("vertex")) {
        int v = j.at("vertex").get<int>();
        if (v < 0 || v >= t.n || seen[v]) throw InputError("tree json: bad or repeated vertex");
        seen[v] = 1;
        t.nodes[v].vertex = v;
        t.nodes[v].leaf_count = 1;
        return v;
    }
    if (!j.contains("children") || !j.at("children").is_array() || j.at("children").empty())
        throw InputError("tree json: node needs a vertex or a non-empty children array");
    int id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    t.alive.push_back(1);
    for (const auto& cj : j.at("children")) {
        int c = build_node(cj, t, seen);
        t.nodes[id].children.push_back(c);
        t.nodes[c].parent = id;
        t.nodes[id].leaf_count += t.nodes[c].leaf_count;
    }
    return id;
}

inline void count_leaves(const nlohmann::json& j, int& n) {
    if (j.contains("vertex")) {
        ++n;
        return;
    }
    if (j.contains("children"))
        for (const auto& c : j.at("children")) count_leaves(c, n);
}

}  // namespace detail

// Rebuilds the tree structure (caches stay zero; dendrogram purity and
// serialization only need the shape).
inline EncodingTree tree_from_json(const nlohmann::json& j) {
    int n = 0;
    detail::count_leaves(j, n);
    if (n < 1) throw InputError("tree json: no leaves");
    EncodingTree t;
    t.n = n;
    t.nodes.resize(n);
    t.alive.assign(n, 1);
    std::vector<char> seen(n, 0);
    t.root = detail::build_node(j, t, seen);
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw InputError("tree json: vertex missing from leaves");
    return t;
}

}  // namespace sse::cli
