#include "sse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sse/errors.hpp"

namespace sse {

double SimilarityMatrix::max_offdiag() const {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) best = std::max(best, at(i, j));
    return best;
}

double SimilarityMatrix::min_offdiag() const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) best = std::min(best, at(i, j));
    return best;
}

namespace {

template <typename Graph>
void fill_adjacency(Graph& g, int n, const std::vector<std::tuple<int, int, double>>& edges,
                    bool allow_negative, bool drop_zero) {
    g.n = n;
    g.adj.assign(n, {});
    // Accumulate duplicate pairs additively.
    std::vector<std::tuple<int, int, double>> norm;
    norm.reserve(edges.size());
    for (const auto& [a, b, w] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw InputError("edge endpoint out of range");
        if (a == b) throw InputError("self-loop edge rejected");
        if (!std::isfinite(w)) throw InputError("non-finite edge weight");
        if (!allow_negative && w < 0) throw InputError("negative edge weight rejected");
        norm.emplace_back(std::min(a, b), std::max(a, b), w);
    }
    std::sort(norm.begin(), norm.end(),
              [](const auto& x, const auto& y) {
                  return std::tie(std::get<0>(x), std::get<1>(x)) <
                         std::tie(std::get<0>(y), std::get<1>(y));
              });
    g.edge_count = 0;
    std::size_t i = 0;
    while (i < norm.size()) {
        auto [a, b, w] = norm[i];
        std::size_t j = i + 1;
        while (j < norm.size() && std::get<0>(norm[j]) == a && std::get<1>(norm[j]) == b) {
            w += std::get<2>(norm[j]);
            ++j;
        }
        i = j;
        if (drop_zero && w == 0.0) continue;
        g.adj[a].push_back({b, w});
        g.adj[b].push_back({a, w});
        ++g.edge_count;
    }
    for (auto& nb : g.adj)
        std::sort(nb.begin(), nb.end(), [](const Neighbor& x, const Neighbor& y) {
            return x.to < y.to;
        });
}

template <typename Graph>
double lookup_weight(const Graph& g, int i, int j) {
    if (i < 0 || i >= g.n || j < 0 || j >= g.n || i == j) return 0.0;
    const auto& nb = g.adj[i];
    auto it = std::lower_bound(nb.begin(), nb.end(), j,
                               [](const Neighbor& a, int v) { return a.to < v; });
    return (it != nb.end() && it->to == j) ? it->w : 0.0;
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(int n,
                                        const std::vector<std::tuple<int, int, double>>& edges) {
    WeightedGraph g;
    fill_adjacency(g, n, edges, /*allow_negative=*/false, /*drop_zero=*/true);
    g.degree.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (const auto& nb : g.adj[i]) g.degree[i] += nb.w;
    g.total_volume = std::accumulate(g.degree.begin(), g.degree.end(), 0.0);
    return g;
}

double WeightedGraph::weight(int i, int j) const { return lookup_weight(*this, i, j); }

RelationGraph RelationGraph::from_edges(int n,
                                        const std::vector<std::tuple<int, int, double>>& edges) {
    RelationGraph g;
    fill_adjacency(g, n, edges, /*allow_negative=*/true, /*drop_zero=*/false);
    g.strength.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (const auto& nb : g.adj[i]) g.strength[i] += nb.w;
    return g;
}

double RelationGraph::weight(int i, int j) const { return lookup_weight(*this, i, j); }

SimilarityMatrix build_similarity(const DataMatrix& data, const KernelSpec& kernel,
                                  Warnings* warnings) {
    const int n = data.rows;
    const int d = data.cols;
    if (n < 2) throw InputError("need at least 2 data points");
    for (double v : data.values)
        if (!std::isfinite(v)) throw InputError("non-finite feature value");
    if (kernel.kind == KernelSpec::Kind::gaussian && !(kernel.sigma > 0))
        throw InputError("gaussian kernel width must be positive");

    SimilarityMatrix s;
    s.n = n;
    s.s.assign(static_cast<std::size_t>(n) * n, 0.0);

    if (kernel.kind == KernelSpec::Kind::gaussian) {
        const double denom = 2.0 * kernel.sigma * kernel.sigma;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double dist2 = 0.0;
                const double* xi = data.values.data() + static_cast<std::size_t>(i) * d;
                const double* xj = data.values.data() + static_cast<std::size_t>(j) * d;
                for (int k = 0; k < d; ++k) {
                    double diff = xi[k] - xj[k];
                    dist2 += diff * diff;
                }
                double v = std::exp(-dist2 / denom);
                s.at(i, j) = v;
                s.at(j, i) = v;
            }
        }
    } else {
        std::vector<double> norm(n, 0.0);
        int zero_rows = 0;
        for (int i = 0; i < n; ++i) {
            const double* xi = data.values.data() + static_cast<std::size_t>(i) * d;
            double acc = 0.0;
            for (int k = 0; k < d; ++k) acc += xi[k] * xi[k];
            norm[i] = std::sqrt(acc);
            if (norm[i] == 0.0) ++zero_rows;
        }
        if (zero_rows > 0 && warnings)
            warnings->push_back("cosine kernel: " + std::to_string(zero_rows) +
                                " zero-norm row(s), their similarities are 0");
        for (int i = 0; i < n; ++i) {
            if (norm[i] == 0.0) continue;
            const double* xi = data.values.data() + static_cast<std::size_t>(i) * d;
            for (int j = i + 1; j < n; ++j) {
                if (norm[j] == 0.0) continue;
                const double* xj = data.values.data() + static_cast<std::size_t>(j) * d;
                double dot = 0.0;
                for (int k = 0; k < d; ++k) dot += xi[k] * xj[k];
                double v = std::max(0.0, dot / (norm[i] * norm[j]));
                s.at(i, j) = v;
                s.at(j, i) = v;
            }
        }
    }
    return s;
}

WeightedGraph sparsify_knn(const SimilarityMatrix& s, int p) {
    const int n = s.n;
    if (p < 1) throw InputError("p must be >= 1");
    if (p >= n) throw InputError("p must be < n");

    std::vector<std::pair<int, int>> kept;  // directed selections, normalized later
    std::vector<int> candidates(n);
    for (int i = 0; i < n; ++i) {
        candidates.clear();
        for (int j = 0; j < n; ++j)
            if (j != i && s.at(i, j) > 0.0) candidates.push_back(j);
        auto stronger = [&](int a, int b) {
            double sa = s.at(i, a), sb = s.at(i, b);
            if (sa != sb) return sa > sb;
            return a < b;  // p-th rank ties go to the smaller index
        };
        int take = std::min<int>(p, static_cast<int>(candidates.size()));
        if (take < static_cast<int>(candidates.size()))
            std::nth_element(candidates.begin(), candidates.begin() + take, candidates.end(),
                             stronger);
        for (int t = 0; t < take; ++t) {
            int j = candidates[t];
            kept.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(kept.size());
    for (auto [a, b] : kept) edges.emplace_back(a, b, s.at(a, b));
    return WeightedGraph::from_edges(n, edges);
}

int default_p(int k, int n) {
    if (k < 1) throw InputError("cluster count must be >= 1");
    if (n < 2) throw InputError("vertex count must be >= 2");
    double lg = std::log2(static_cast<double>(n));
    return static_cast<int>(std::floor(20.0 * k / (lg * lg))) + 1;
}

namespace {

template <typename Graph>
double cut_impl(const Graph& g, std::span<const int> set) {
    std::vector<char> in(g.n, 0);
    for (int v : set) in[v] = 1;
    double acc = 0.0;
    for (int v : set)
        for (const auto& nb : g.adj[v])
            if (!in[nb.to]) acc += nb.w;
    return acc;
}

}  // namespace

double volume(const WeightedGraph& g, std::span<const int> set) {
    double acc = 0.0;
    for (int v : set) acc += g.degree[v];
    return acc;
}

double cut(const WeightedGraph& g, std::span<const int> set) { return cut_impl(g, set); }
double cut(const RelationGraph& g, std::span<const int> set) { return cut_impl(g, set); }

}  // namespace sse
