#pragma once

#include <vector>

#include "sse/encoding_tree.hpp"

namespace sse {

// Hubert-Arabie adjusted Rand index, in [-1, 1].
double ari(const std::vector<int>& pred, const std::vector<int>& truth);

// Mutual information normalized by the geometric mean of the label entropies.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

// Mean over same-class leaf pairs (i, j) of the class fraction at LCA(i, j).
// Exact all-pairs computation; truth[i] labels vertex i.
double dendrogram_purity(const EncodingTree& t, const std::vector<int>& truth);

}  // namespace sse
