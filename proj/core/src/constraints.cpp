#include "sse/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace sse {

VertexPair make_pair_normalized(int a, int b) {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

namespace {

void sort_unique_pairs(std::vector<VertexPair>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_pair_range(const std::vector<VertexPair>& pairs, int n, const char* what) {
    for (const auto& [a, b] : pairs) {
        if (a == b) throw InputError(std::string(what) + ": pair endpoints must differ");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw InputError(std::string(what) + ": vertex index out of range");
    }
}

// Deterministic RNG helpers. mt19937_64's raw stream is pinned by the
// standard; std::uniform_int_distribution is not, so draws go through an
// explicit rejection step.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t r;
        do {
            r = eng();
        } while (r >= limit);
        return r % bound;
    }
};

template <typename T>
void partial_shuffle(std::vector<T>& v, std::size_t count, Rng& rng) {
    count = std::min(count, v.size());
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + rng.below(v.size() - i);
        std::swap(v[i], v[j]);
    }
}

}  // namespace

void ConstraintSet::normalize(int n) {
    for (auto& p : must_link) p = make_pair_normalized(p.first, p.second);
    for (auto& p : cannot_link) p = make_pair_normalized(p.first, p.second);
    sort_unique_pairs(must_link);
    sort_unique_pairs(cannot_link);
    std::sort(positive_labels.begin(), positive_labels.end());
    positive_labels.erase(std::unique(positive_labels.begin(), positive_labels.end()),
                          positive_labels.end());
    std::sort(negative_labels.begin(), negative_labels.end());
    negative_labels.erase(std::unique(negative_labels.begin(), negative_labels.end()),
                          negative_labels.end());

    check_pair_range(must_link, n, "must-link");
    check_pair_range(cannot_link, n, "cannot-link");
    for (const auto& [v, y] : positive_labels) {
        (void)y;
        if (v < 0 || v >= n) throw InputError("positive label: vertex index out of range");
    }
    for (const auto& [v, y] : negative_labels) {
        (void)y;
        if (v < 0 || v >= n) throw InputError("negative label: vertex index out of range");
    }
    for (const auto& p : must_link)
        if (std::binary_search(cannot_link.begin(), cannot_link.end(), p))
            throw ConstraintConflict(p.first, p.second,
                                     "pair (" + std::to_string(p.first) + ", " +
                                         std::to_string(p.second) +
                                         ") is both must-link and cannot-link");
    for (const auto& pl : positive_labels)
        if (std::binary_search(negative_labels.begin(), negative_labels.end(), pl))
            throw InputError("vertex " + std::to_string(pl.first) + " has label " +
                             std::to_string(pl.second) + " both asserted and denied");
}

PairwiseConstraints labels_to_pairwise(const ConstraintSet& cs) {
    PairwiseConstraints out;
    const auto& P = cs.positive_labels;
    const auto& N = cs.negative_labels;
    for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = i + 1; j < P.size(); ++j) {
            if (P[i].first == P[j].first) continue;
            auto pair = make_pair_normalized(P[i].first, P[j].first);
            if (P[i].second == P[j].second)
                out.must_link.push_back(pair);
            else
                out.cannot_link.push_back(pair);
        }
    }
    for (const auto& [vp, yp] : P) {
        for (const auto& [vn, yn] : N) {
            if (vp == vn || yp != yn) continue;
            out.cannot_link.push_back(make_pair_normalized(vp, vn));
        }
    }
    sort_unique_pairs(out.must_link);
    sort_unique_pairs(out.cannot_link);
    return out;
}

PairwiseConstraints closure(const std::vector<VertexPair>& must_link,
                            const std::vector<VertexPair>& cannot_link) {
    // Component discovery over the ML graph (BFS; the reference oracle uses
    // union-find instead).
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : must_link) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::map<int, int> comp;            // vertex -> component id
    std::vector<std::vector<int>> members;
    for (const auto& [v, nbrs] : adj) {
        (void)nbrs;
        if (comp.count(v)) continue;
        int id = static_cast<int>(members.size());
        members.emplace_back();
        std::queue<int> q;
        q.push(v);
        comp[v] = id;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            members[id].push_back(u);
            for (int w : adj[u])
                if (!comp.count(w)) {
                    comp[w] = id;
                    q.push(w);
                }
        }
    }
    for (auto& m : members) std::sort(m.begin(), m.end());

    PairwiseConstraints out;
    for (const auto& m : members)
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j)
                out.must_link.emplace_back(m[i], m[j]);
    sort_unique_pairs(out.must_link);

    // Entailment: ML(a,x) and CL(x,y) imply CL(a,y); with full components this
    // is the component-against-component product.
    auto members_of = [&](int v) -> std::vector<int> {
        auto it = comp.find(v);
        if (it == comp.end()) return {v};
        return members[it->second];
    };
    for (const auto& [a, b] : cannot_link) {
        auto ca = comp.count(a) ? comp[a] : -1;
        auto cb = comp.count(b) ? comp[b] : -1;
        if (ca != -1 && ca == cb)
            throw ConstraintConflict(a, b, "cannot-link (" + std::to_string(a) + ", " +
                                               std::to_string(b) +
                                               ") contradicts must-link transitivity");
        for (int x : members_of(a))
            for (int y : members_of(b)) out.cannot_link.push_back(make_pair_normalized(x, y));
    }
    sort_unique_pairs(out.cannot_link);

    // Sequential application is idempotent by construction; verify that no
    // pair ended up on both sides.
    for (const auto& p : out.cannot_link)
        if (std::binary_search(out.must_link.begin(), out.must_link.end(), p))
            throw ConstraintConflict(p.first, p.second,
                                     "pair (" + std::to_string(p.first) + ", " +
                                         std::to_string(p.second) +
                                         ") is both must-link and cannot-link after closure");
    return out;
}

WeightPolicy make_weight_policy(const SimilarityMatrix& s, std::size_t ml_count,
                                std::size_t cl_count) {
    WeightPolicy wp;
    wp.w_max = s.max_offdiag();
    wp.w_min = s.min_offdiag();
    wp.rho = (ml_count > 0 && cl_count > 0)
                 ? static_cast<double>(ml_count) / static_cast<double>(cl_count)
                 : 1.0;
    return wp;
}

RelationGraph build_relation_graph(const PairwiseConstraints& closed, const SimilarityMatrix& s) {
    WeightPolicy wp = make_weight_policy(s, closed.must_link.size(), closed.cannot_link.size());
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(closed.must_link.size() + closed.cannot_link.size());
    for (const auto& [a, b] : closed.must_link)
        edges.emplace_back(a, b, wp.gamma_must(s.at(a, b)));
    for (const auto& [a, b] : closed.cannot_link)
        edges.emplace_back(a, b, wp.gamma_cannot(s.at(a, b)));
    return RelationGraph::from_edges(s.n, edges);
}

RelationGraph relation_from_constraints(const ConstraintSet& cs, const SimilarityMatrix& s) {
    auto converted = labels_to_pairwise(cs);
    auto ml = cs.must_link;
    auto cl = cs.cannot_link;
    ml.insert(ml.end(), converted.must_link.begin(), converted.must_link.end());
    cl.insert(cl.end(), converted.cannot_link.begin(), converted.cannot_link.end());
    sort_unique_pairs(ml);
    sort_unique_pairs(cl);
    return build_relation_graph(closure(ml, cl), s);
}

namespace {

// Class member lists keyed by label value, in sorted label order.
std::vector<std::vector<int>> group_by_label(const std::vector<int>& labels) {
    std::map<int, std::vector<int>> by_label;
    for (int v = 0; v < static_cast<int>(labels.size()); ++v) by_label[labels[v]].push_back(v);
    std::vector<std::vector<int>> groups;
    groups.reserve(by_label.size());
    for (auto& [y, members] : by_label) {
        (void)y;
        groups.push_back(std::move(members));
    }
    return groups;
}

std::vector<VertexPair> sample_same_label_pairs(const std::vector<std::vector<int>>& groups,
                                                std::size_t want, Rng& rng) {
    std::vector<double> pair_counts;
    double total = 0;
    for (const auto& g : groups) {
        double c = 0.5 * static_cast<double>(g.size()) * (static_cast<double>(g.size()) - 1);
        pair_counts.push_back(c);
        total += c;
    }
    auto total_sz = static_cast<std::size_t>(total);
    if (want * 3 >= total_sz) {
        std::vector<VertexPair> all;
        for (const auto& g : groups)
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = i + 1; j < g.size(); ++j) all.emplace_back(g[i], g[j]);
        partial_shuffle(all, want, rng);
        all.resize(std::min(want, all.size()));
        return all;
    }
    std::set<VertexPair> chosen;
    while (chosen.size() < want) {
        double r = static_cast<double>(rng.below(total_sz));
        std::size_t cls = 0;
        while (cls + 1 < groups.size() && r >= pair_counts[cls]) {
            r -= pair_counts[cls];
            ++cls;
        }
        const auto& g = groups[cls];
        std::size_t u = rng.below(g.size());
        std::size_t v = rng.below(g.size() - 1);
        if (v >= u) ++v;
        chosen.insert(make_pair_normalized(g[u], g[v]));
    }
    return {chosen.begin(), chosen.end()};
}

std::vector<VertexPair> sample_cross_label_pairs(const std::vector<int>& labels, std::size_t want,
                                                 std::size_t cross_total, Rng& rng) {
    const std::size_t n = labels.size();
    if (want * 3 >= cross_total) {
        std::vector<VertexPair> all;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (labels[i] != labels[j]) all.emplace_back(static_cast<int>(i),
                                                             static_cast<int>(j));
        partial_shuffle(all, want, rng);
        all.resize(std::min(want, all.size()));
        return all;
    }
    std::set<VertexPair> chosen;
    while (chosen.size() < want) {
        std::size_t u = rng.below(n);
        std::size_t v = rng.below(n - 1);
        if (v >= u) ++v;
        if (labels[u] == labels[v]) continue;
        chosen.insert(make_pair_normalized(static_cast<int>(u), static_cast<int>(v)));
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace

ConstraintSet generate_constraints(const std::vector<int>& labels, ConstraintKind kind,
                                   double amount, std::uint64_t seed, Warnings* warnings) {
    const std::size_t n = labels.size();
    if (n == 0) throw InputError("constraint generation needs labels");
    if (amount < 0.0 || amount > 1.0) throw InputError("constraint amount must be in [0, 1]");
    std::size_t want = static_cast<std::size_t>(std::ceil(amount * static_cast<double>(n)));

    Rng rng(seed);
    ConstraintSet cs;
    if (want == 0) return cs;

    if (kind == ConstraintKind::pairwise) {
        auto groups = group_by_label(labels);
        std::size_t same_total = 0;
        for (const auto& g : groups) same_total += g.size() * (g.size() - 1) / 2;
        std::size_t cross_total = n * (n - 1) / 2 - same_total;

        std::size_t want_ml = want;
        if (want_ml > same_total) {
            want_ml = same_total;
            if (warnings)
                warnings->push_back("must-link request capped at " + std::to_string(want_ml) +
                                    " (no more same-label pairs)");
        }
        std::size_t want_cl = want;
        if (want_cl > cross_total) {
            want_cl = cross_total;
            if (warnings)
                warnings->push_back("cannot-link request capped at " + std::to_string(want_cl) +
                                    " (no more cross-label pairs)");
        }
        cs.must_link = sample_same_label_pairs(groups, want_ml, rng);
        cs.cannot_link = sample_cross_label_pairs(labels, want_cl, cross_total, rng);
        std::sort(cs.must_link.begin(), cs.must_link.end());
        std::sort(cs.cannot_link.begin(), cs.cannot_link.end());
    } else {
        std::vector<int> distinct = labels;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        std::size_t want_p = std::min(want, n);
        if (want_p < want && warnings)
            warnings->push_back("positive-label request capped at " + std::to_string(want_p));
        std::vector<int> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
        partial_shuffle(order, want_p, rng);
        for (std::size_t i = 0; i < want_p; ++i)
            cs.positive_labels.emplace_back(order[i], labels[order[i]]);

        std::size_t want_n = std::min(want, n);
        if (distinct.size() < 2) {
            want_n = 0;
            if (warnings)
                warnings->push_back(
                    "negative-label request capped at 0 (only one distinct label)");
        } else if (want_n < want && warnings) {
            warnings->push_back("negative-label request capped at " + std::to_string(want_n));
        }
        if (want_n > 0) {
            std::vector<int> order2(n);
            for (std::size_t i = 0; i < n; ++i) order2[i] = static_cast<int>(i);
            partial_shuffle(order2, want_n, rng);
            for (std::size_t i = 0; i < want_n; ++i) {
                int v = order2[i];
                std::size_t idx = rng.below(distinct.size() - 1);
                int wrong = distinct[idx];
                if (wrong == labels[v]) wrong = distinct.back();
                cs.negative_labels.emplace_back(v, wrong);
            }
        }
        std::sort(cs.positive_labels.begin(), cs.positive_labels.end());
        std::sort(cs.negative_labels.begin(), cs.negative_labels.end());
    }
    return cs;
}

ConstraintSet parse_constraints(std::istream& in, int n) {
    ConstraintSet cs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        int a, b;
        if (!(ls >> a >> b))
            throw InputError("constraint line " + std::to_string(lineno) +
                             ": expected two integers after tag");
        std::string extra;
        if (ls >> extra)
            throw InputError("constraint line " + std::to_string(lineno) + ": trailing tokens");
        if (tag == "ML")
            cs.must_link.push_back(make_pair_normalized(a, b));
        else if (tag == "CL")
            cs.cannot_link.push_back(make_pair_normalized(a, b));
        else if (tag == "PL")
            cs.positive_labels.emplace_back(a, b);
        else if (tag == "NL")
            cs.negative_labels.emplace_back(a, b);
        else
            throw InputError("constraint line " + std::to_string(lineno) + ": unknown tag '" +
                             tag + "'");
    }
    cs.normalize(n);
    return cs;
}

ConstraintSet load_constraints(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open constraint file: " + path);
    return parse_constraints(in, n);
}

void write_constraints(std::ostream& out, const ConstraintSet& cs) {
    for (const auto& [a, b] : cs.must_link) out << "ML " << a << ' ' << b << '\n';
    for (const auto& [a, b] : cs.cannot_link) out << "CL " << a << ' ' << b << '\n';
    for (const auto& [v, y] : cs.positive_labels) out << "PL " << v << ' ' << y << '\n';
    for (const auto& [v, y] : cs.negative_labels) out << "NL " << v << ' ' << y << '\n';
}

}  // namespace sse
