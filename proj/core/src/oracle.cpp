#include "sse/oracle.hpp"

#include <algorithm>
#include <map>

#include "sse/errors.hpp"

namespace sse::oracle {

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
    if (n <= 0) return;
    // Restricted-growth strings in lexicographic order.
    std::vector<int> a(n, 0);
    std::vector<int> b(n, 0);  // b[i] = max(a[0..i])
    while (true) {
        visit(a);
        int i = n - 1;
        while (i > 0 && a[i] == b[i - 1] + 1) --i;
        if (i == 0) break;
        ++a[i];
        b[i] = std::max(b[i - 1], a[i]);
        for (int j = i + 1; j < n; ++j) {
            a[j] = 0;
            b[j] = b[j - 1];
        }
    }
}

BruteForceResult brute_force_min_2d(const WeightedGraph& g, const RelationGraph& gp, double phi) {
    if (g.n > 10) throw InputError("brute_force_min_2d handles n <= 10 only");
    if (g.n < 1) throw InputError("brute_force_min_2d needs at least one vertex");
    BruteForceResult best;
    bool first = true;
    for_each_partition(g.n, [&](const std::vector<int>& assignment) {
        Partition p = Partition::from_assignment(assignment, g, gp);
        double obj = partition_objective(g, gp, p, phi);
        if (first || obj < best.objective) {
            best.partition = std::move(p);
            best.objective = obj;
            first = false;
        }
    });
    return best;
}

namespace {

struct UnionFind {
    std::vector<int> parent, rank_;
    explicit UnionFind(int n) : parent(n), rank_(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
    }
};

}  // namespace

PairwiseConstraints transitive_closure_reference(const std::vector<VertexPair>& must_link,
                                                 const std::vector<VertexPair>& cannot_link) {
    int max_v = -1;
    for (const auto& [a, b] : must_link) max_v = std::max({max_v, a, b});
    for (const auto& [a, b] : cannot_link) max_v = std::max({max_v, a, b});
    UnionFind uf(max_v + 1);
    for (const auto& [a, b] : must_link) uf.unite(a, b);

    std::map<int, std::vector<int>> comp_members;
    for (const auto& [a, b] : must_link) {
        comp_members[uf.find(a)];
        comp_members[uf.find(b)];
    }
    for (auto& [root, members] : comp_members)
        for (int v = 0; v <= max_v; ++v)
            if (uf.find(v) == root) members.push_back(v);

    PairwiseConstraints out;
    for (const auto& [root, members] : comp_members) {
        (void)root;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                out.must_link.push_back(make_pair_normalized(members[i], members[j]));
    }
    std::sort(out.must_link.begin(), out.must_link.end());
    out.must_link.erase(std::unique(out.must_link.begin(), out.must_link.end()),
                        out.must_link.end());

    auto members_of = [&](int v) {
        auto it = comp_members.find(uf.find(v));
        if (it == comp_members.end()) return std::vector<int>{v};
        return it->second;
    };
    for (const auto& [a, b] : cannot_link) {
        if (uf.find(a) == uf.find(b))
            throw ConstraintConflict(a, b, "cannot-link inside a must-link component");
        for (int x : members_of(a))
            for (int y : members_of(b)) out.cannot_link.push_back(make_pair_normalized(x, y));
    }
    std::sort(out.cannot_link.begin(), out.cannot_link.end());
    out.cannot_link.erase(std::unique(out.cannot_link.begin(), out.cannot_link.end()),
                          out.cannot_link.end());
    return out;
}

}  // namespace sse::oracle
