#pragma once

#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "sse/dataset.hpp"

namespace sse {

using Warnings = std::vector<std::string>;

struct Neighbor {
    int to;
    double w;
};

// Dense symmetric similarity matrix with a zero diagonal.
struct SimilarityMatrix {
    int n = 0;
    std::vector<double> s;

    double at(int i, int j) const { return s[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return s[static_cast<std::size_t>(i) * n + j]; }
    double max_offdiag() const;
    double min_offdiag() const;
};

struct KernelSpec {
    enum class Kind { gaussian, cosine };
    Kind kind = Kind::gaussian;
    double sigma = 10.0;  // gaussian width, ignored by cosine
};

// The data graph G = (V, E, W): sparse, symmetric, positive weights, no
// self-loops. Degrees and the total volume are cached at construction.
struct WeightedGraph {
    int n = 0;
    std::vector<std::vector<Neighbor>> adj;  // sorted by neighbor id
    std::vector<double> degree;              // d_i
    double total_volume = 0.0;               // V_G = sum of degrees
    std::size_t edge_count = 0;

    double weight(int i, int j) const;  // 0 when the edge is absent
    static WeightedGraph from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges);
};

// The relation graph G' = (V, E', W'): same vertex set as G, signed weights.
// Positive entries encode must-link strength, negative entries cannot-link.
struct RelationGraph {
    int n = 0;
    std::vector<std::vector<Neighbor>> adj;
    std::vector<double> strength;  // signed cut of {v}, i.e. sum_j W'_vj
    std::size_t edge_count = 0;

    bool empty() const { return edge_count == 0; }
    double weight(int i, int j) const;
    static RelationGraph from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges);
};

// S_ij = exp(-|x_i-x_j|^2 / (2 sigma^2)) for gaussian, max(0, cos(x_i, x_j))
// for cosine. Zero-norm rows under cosine get all-zero similarities (warned).
SimilarityMatrix build_similarity(const DataMatrix& data, const KernelSpec& kernel,
                                  Warnings* warnings = nullptr);

// p-nearest-neighbor sparsification with union symmetrization: the edge (i,j)
// survives iff j is among i's p strongest similarities or vice versa. Ties at
// the p-th rank go to the smaller vertex index; zero similarities are dropped.
WeightedGraph sparsify_knn(const SimilarityMatrix& s, int p);

// floor(20k / log2(n)^2) + 1
int default_p(int k, int n);

// Sum of degrees of `set`, measured in G.
double volume(const WeightedGraph& g, std::span<const int> set);

// Weight of edges with exactly one endpoint in `set`; signed for G'.
double cut(const WeightedGraph& g, std::span<const int> set);
double cut(const RelationGraph& g, std::span<const int> set);

}  // namespace sse
