#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "sse/errors.hpp"
#include "sse/graph.hpp"

namespace sse {

// Unordered vertex pair, stored normalized with first < second.
using VertexPair = std::pair<int, int>;

VertexPair make_pair_normalized(int a, int b);

// Raw prior knowledge: pairwise must-link / cannot-link sets plus
// positive / negative label constraints (vertex, label).
struct ConstraintSet {
    std::vector<VertexPair> must_link;
    std::vector<VertexPair> cannot_link;
    std::vector<std::pair<int, int>> positive_labels;
    std::vector<std::pair<int, int>> negative_labels;

    bool empty() const {
        return must_link.empty() && cannot_link.empty() && positive_labels.empty() &&
               negative_labels.empty();
    }
    // Sorts, dedupes, and checks the basic consistency invariants.
    void normalize(int n);
};

struct PairwiseConstraints {
    std::vector<VertexPair> must_link;
    std::vector<VertexPair> cannot_link;
};

// Label conversion rules: same positive label -> ML, different positive
// labels -> CL, positive + negative of that same label -> CL.
PairwiseConstraints labels_to_pairwise(const ConstraintSet& cs);

// Transitive closure of ML (components fully linked) followed by entailment
// of CL (component-against-component expansion). Throws ConstraintConflict
// when a pair lands on both sides.
PairwiseConstraints closure(const std::vector<VertexPair>& must_link,
                            const std::vector<VertexPair>& cannot_link);

// Numbers that turn closed constraint pairs into signed relation weights:
//   must-link   W'_ij += max(W) - W_ij
//   cannot-link W'_ij += rho * (min(W) - W_ij)
// rho balances the two sign classes; it defaults to 1 when one class is empty.
struct WeightPolicy {
    double w_max = 0.0;
    double w_min = 0.0;
    double rho = 1.0;

    double gamma_must(double w_ij) const { return w_max - w_ij; }
    double gamma_cannot(double w_ij) const { return rho * (w_min - w_ij); }
};

WeightPolicy make_weight_policy(const SimilarityMatrix& s, std::size_t ml_count,
                                std::size_t cl_count);

// Materializes G' from closed pairwise constraints; `s` supplies W_ij lookups
// and the extrema used by the weight policy.
RelationGraph build_relation_graph(const PairwiseConstraints& closed, const SimilarityMatrix& s);

// Full pipeline: label conversion, merge with explicit pairs, closure, weighting.
RelationGraph relation_from_constraints(const ConstraintSet& cs, const SimilarityMatrix& s);

enum class ConstraintKind { pairwise, label };

// Samples ceil(amount*n) must-link pairs from same-label pairs and equally
// many cannot-link pairs from cross-label pairs (pairwise kind), or
// ceil(amount*n) positive plus equally many negative label constraints
// (label kind). Deterministic for a fixed seed; capped with a warning when a
// class of pairs runs out.
ConstraintSet generate_constraints(const std::vector<int>& labels, ConstraintKind kind,
                                   double amount, std::uint64_t seed,
                                   Warnings* warnings = nullptr);

// Text format, one constraint per line, 0-based indices, '#' comments:
//   ML i j | CL i j | PL i label | NL i label
ConstraintSet parse_constraints(std::istream& in, int n);
ConstraintSet load_constraints(const std::string& path, int n);
void write_constraints(std::ostream& out, const ConstraintSet& cs);

}  // namespace sse
