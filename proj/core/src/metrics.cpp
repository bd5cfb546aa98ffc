#include "sse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sse/errors.hpp"

namespace sse {

namespace {

// Dense relabeling in order of first appearance.
std::vector<int> densify(const std::vector<int>& labels, int& k) {
    std::map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()));
        (void)inserted;
        out[i] = it->second;
    }
    k = static_cast<int>(remap.size());
    return out;
}

double comb2(double m) { return 0.5 * m * (m - 1.0); }

}  // namespace

double ari(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size() || pred.empty())
        throw InputError("ari: labelings must be non-empty and of equal length");
    int kp = 0, kt = 0;
    auto p = densify(pred, kp);
    auto t = densify(truth, kt);
    std::vector<double> cont(static_cast<std::size_t>(kp) * kt, 0.0);
    std::vector<double> rows(kp, 0.0), cols(kt, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        cont[static_cast<std::size_t>(p[i]) * kt + t[i]] += 1.0;
        rows[p[i]] += 1.0;
        cols[t[i]] += 1.0;
    }
    double sum_ij = 0.0;
    for (double c : cont) sum_ij += comb2(c);
    double sum_i = 0.0, sum_j = 0.0;
    for (double r : rows) sum_i += comb2(r);
    for (double c : cols) sum_j += comb2(c);
    double total = comb2(static_cast<double>(p.size()));
    double expected = total > 0.0 ? sum_i * sum_j / total : 0.0;
    double maximum = 0.5 * (sum_i + sum_j);
    double denom = maximum - expected;
    if (denom == 0.0) return 1.0;  // both labelings trivially aligned
    return (sum_ij - expected) / denom;
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size() || pred.empty())
        throw InputError("nmi: labelings must be non-empty and of equal length");
    int kp = 0, kt = 0;
    auto p = densify(pred, kp);
    auto t = densify(truth, kt);
    const double n = static_cast<double>(p.size());
    std::vector<double> cont(static_cast<std::size_t>(kp) * kt, 0.0);
    std::vector<double> rows(kp, 0.0), cols(kt, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        cont[static_cast<std::size_t>(p[i]) * kt + t[i]] += 1.0;
        rows[p[i]] += 1.0;
        cols[t[i]] += 1.0;
    }
    double hu = 0.0, hv = 0.0, mi = 0.0;
    for (double r : rows)
        if (r > 0) hu -= (r / n) * std::log(r / n);
    for (double c : cols)
        if (c > 0) hv -= (c / n) * std::log(c / n);
    for (int i = 0; i < kp; ++i)
        for (int j = 0; j < kt; ++j) {
            double c = cont[static_cast<std::size_t>(i) * kt + j];
            if (c > 0) mi += (c / n) * std::log(c * n / (rows[i] * cols[j]));
        }
    if (hu == 0.0 && hv == 0.0) return 1.0;  // both sides trivial: perfect match
    if (mi <= 0.0 || hu == 0.0 || hv == 0.0) return 0.0;
    return mi / std::sqrt(hu * hv);
}

double dendrogram_purity(const EncodingTree& t, const std::vector<int>& truth) {
    if (static_cast<int>(truth.size()) != t.n)
        throw InputError("dendrogram_purity: label count must match leaf count");
    int k = 0;
    auto labels = densify(truth, k);

    std::vector<double> totals(k, 0.0);
    for (int c : labels) totals[c] += 1.0;
    double denom = 0.0;
    for (double c : totals) denom += comb2(c);
    if (denom == 0.0) throw InputError("dendrogram_purity: no class has two members");

    // Post-order walk. Same-class pairs whose LCA is a node are the pairs that
    // span two of its children; each contributes the node's class fraction.
    std::vector<std::vector<double>> counts(t.nodes.size());
    std::vector<std::pair<int, bool>> stack{{t.root, false}};
    double num = 0.0;
    while (!stack.empty()) {
        auto [id, expanded] = stack.back();
        stack.pop_back();
        const TreeNode& nd = t.nodes[id];
        if (!expanded) {
            stack.emplace_back(id, true);
            for (int c : nd.children) stack.emplace_back(c, false);
            continue;
        }
        auto& mine = counts[id];
        mine.assign(k, 0.0);
        if (nd.is_leaf()) {
            mine[labels[nd.vertex]] = 1.0;
            continue;
        }
        std::vector<double> child_sq(k, 0.0);
        for (int c : nd.children) {
            for (int y = 0; y < k; ++y) {
                mine[y] += counts[c][y];
                child_sq[y] += counts[c][y] * counts[c][y];
            }
            counts[c].clear();
            counts[c].shrink_to_fit();
        }
        double leaves = 0.0;
        for (int y = 0; y < k; ++y) leaves += mine[y];
        for (int y = 0; y < k; ++y) {
            double pairs_here = 0.5 * (mine[y] * mine[y] - child_sq[y]);
            if (pairs_here > 0.0 && leaves > 0.0) num += pairs_here * (mine[y] / leaves);
        }
    }
    return num / denom;
}

}  // namespace sse
