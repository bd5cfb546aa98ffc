#include <doctest.h>

#include <sstream>

#include "sse/constraints.hpp"
#include "sse/oracle.hpp"
#include "support.hpp"

using namespace sse;

TEST_SUITE_BEGIN("constraints");

TEST_CASE("label conversion rules") {
    ConstraintSet cs;
    SUBCASE("same positive label -> must-link") {
        cs.positive_labels = {{0, 0}, {1, 0}};
        auto pw = labels_to_pairwise(cs);
        CHECK(pw.must_link == std::vector<VertexPair>{{0, 1}});
        CHECK(pw.cannot_link.empty());
    }
    SUBCASE("different positive labels -> cannot-link") {
        cs.positive_labels = {{0, 0}, {1, 1}};
        auto pw = labels_to_pairwise(cs);
        CHECK(pw.cannot_link == std::vector<VertexPair>{{0, 1}});
        CHECK(pw.must_link.empty());
    }
    SUBCASE("positive + negative of the same label -> cannot-link") {
        cs.positive_labels = {{0, 0}};
        cs.negative_labels = {{1, 0}};
        auto pw = labels_to_pairwise(cs);
        CHECK(pw.cannot_link == std::vector<VertexPair>{{0, 1}});
        CHECK(pw.must_link.empty());
    }
    SUBCASE("positive + negative of different labels -> nothing") {
        cs.positive_labels = {{0, 0}};
        cs.negative_labels = {{1, 1}};
        auto pw = labels_to_pairwise(cs);
        CHECK(pw.must_link.empty());
        CHECK(pw.cannot_link.empty());
    }
    SUBCASE("two negative labels -> nothing") {
        cs.negative_labels = {{0, 0}, {1, 0}};
        auto pw = labels_to_pairwise(cs);
        CHECK(pw.must_link.empty());
        CHECK(pw.cannot_link.empty());
    }
}

TEST_CASE("closure: transitivity links whole components") {
    auto out = closure({{1, 2}, {2, 3}}, {});
    CHECK(out.must_link == std::vector<VertexPair>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("closure: entailment expands cannot-links against components") {
    auto out = closure({{1, 2}}, {{2, 3}});
    CHECK(out.cannot_link == std::vector<VertexPair>{{1, 3}, {2, 3}});
}

TEST_CASE("closure: direct contradiction raises a conflict") {
    CHECK_THROWS_AS(closure({{1, 2}}, {{1, 2}}), ConstraintConflict);
    CHECK_THROWS_AS(closure({{1, 2}, {2, 3}}, {{1, 3}}), ConstraintConflict);
}

TEST_CASE("closure matches the union-find reference on random inputs") {
    testsup::TestRng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 4 + rng.below(20);
        std::vector<VertexPair> ml, cl;
        for (int e = 0; e < rng.below(n); ++e) {
            int a = rng.below(n), b = rng.below(n - 1);
            if (b >= a) ++b;
            ml.push_back(make_pair_normalized(a, b));
        }
        for (int e = 0; e < rng.below(n); ++e) {
            int a = rng.below(n), b = rng.below(n - 1);
            if (b >= a) ++b;
            cl.push_back(make_pair_normalized(a, b));
        }
        std::sort(ml.begin(), ml.end());
        ml.erase(std::unique(ml.begin(), ml.end()), ml.end());
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());

        bool threw_a = false, threw_b = false;
        PairwiseConstraints a, b;
        try {
            a = closure(ml, cl);
        } catch (const ConstraintConflict&) {
            threw_a = true;
        }
        try {
            b = oracle::transitive_closure_reference(ml, cl);
        } catch (const ConstraintConflict&) {
            threw_b = true;
        }
        REQUIRE(threw_a == threw_b);
        if (!threw_a) {
            CHECK(a.must_link == b.must_link);
            CHECK(a.cannot_link == b.cannot_link);
            // idempotence: a second pass adds nothing
            auto again = closure(a.must_link, a.cannot_link);
            CHECK(again.must_link == a.must_link);
            CHECK(again.cannot_link == a.cannot_link);
        }
    }
}

TEST_CASE("weight policy: gamma zero cases and rho counting") {
    SimilarityMatrix s;
    s.n = 3;
    s.s = {0, .9, .2, .9, 0, .5, .2, .5, 0};
    SUBCASE("must-link at max similarity contributes 0") {
        PairwiseConstraints pc;
        pc.must_link = {{0, 1}};
        auto gp = build_relation_graph(pc, s);
        CHECK(gp.weight(0, 1) == 0.0);
        CHECK(gp.edge_count == 1);
    }
    SUBCASE("cannot-link at min similarity contributes 0") {
        PairwiseConstraints pc;
        pc.cannot_link = {{0, 2}};
        auto gp = build_relation_graph(pc, s);
        CHECK(gp.weight(0, 2) == 0.0);
    }
    SUBCASE("rho is the ML/CL entry ratio") {
        auto wp = make_weight_policy(s, 10, 20);
        CHECK(wp.rho == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(make_weight_policy(s, 10, 0).rho == 1.0);
        CHECK(make_weight_policy(s, 0, 20).rho == 1.0);
    }
    SUBCASE("signs: ML entries >= 0, CL entries <= 0") {
        PairwiseConstraints pc;
        pc.must_link = {{0, 2}};
        pc.cannot_link = {{0, 1}, {1, 2}};
        auto gp = build_relation_graph(pc, s);
        CHECK(gp.weight(0, 2) >= 0.0);
        CHECK(gp.weight(0, 1) <= 0.0);
        CHECK(gp.weight(1, 2) <= 0.0);
        // rho = 1/2, gamma_C = 0.5*(min(W) - W_ij) with min(W) = 0.2
        CHECK(gp.weight(0, 1) == doctest::Approx(0.5 * (0.2 - 0.9)).epsilon(1e-12));
    }
}

TEST_CASE("relation graph from an empty constraint set has no edges") {
    SimilarityMatrix s;
    s.n = 3;
    s.s = {0, .9, .2, .9, 0, .5, .2, .5, 0};
    ConstraintSet cs;
    auto gp = relation_from_constraints(cs, s);
    CHECK(gp.edge_count == 0);
    CHECK(gp.empty());
}

TEST_CASE("generate_constraints: pairwise counts and determinism") {
    std::vector<int> labels{0, 0, 1, 1};
    auto cs1 = generate_constraints(labels, ConstraintKind::pairwise, 0.25, 99);
    auto cs2 = generate_constraints(labels, ConstraintKind::pairwise, 0.25, 99);
    CHECK(cs1.must_link.size() == 1);
    CHECK(cs1.cannot_link.size() == 1);
    CHECK(cs1.must_link == cs2.must_link);
    CHECK(cs1.cannot_link == cs2.cannot_link);
    // admissible pools
    CHECK((cs1.must_link[0] == VertexPair{0, 1} || cs1.must_link[0] == VertexPair{2, 3}));
    for (auto [a, b] : cs1.cannot_link) CHECK(labels[a] != labels[b]);
}

TEST_CASE("generate_constraints: amount 0 gives an empty set") {
    std::vector<int> labels{0, 0, 1, 1};
    auto cs = generate_constraints(labels, ConstraintKind::pairwise, 0.0, 1);
    CHECK(cs.empty());
}

TEST_CASE("generate_constraints: all labels equal caps cannot-links at 0") {
    std::vector<int> labels{5, 5, 5, 5};
    Warnings w;
    auto cs = generate_constraints(labels, ConstraintKind::pairwise, 0.5, 1, &w);
    CHECK(cs.cannot_link.empty());
    CHECK(cs.must_link.size() == 2);
    CHECK(!w.empty());
}

TEST_CASE("generate_constraints: label kind uses true labels positively") {
    std::vector<int> labels{0, 0, 1, 1, 2, 2};
    auto cs = generate_constraints(labels, ConstraintKind::label, 0.5, 7);
    CHECK(cs.positive_labels.size() == 3);
    CHECK(cs.negative_labels.size() == 3);
    for (auto [v, y] : cs.positive_labels) CHECK(y == labels[v]);
    for (auto [v, y] : cs.negative_labels) CHECK(y != labels[v]);
}

TEST_CASE("generate_constraints: requests beyond the pool are capped") {
    std::vector<int> labels{0, 0, 1};
    Warnings w;
    auto cs = generate_constraints(labels, ConstraintKind::pairwise, 1.0, 3, &w);
    CHECK(cs.must_link.size() == 1);   // only (0,1) exists
    CHECK(cs.cannot_link.size() == 2); // (0,2), (1,2)
    CHECK(w.size() == 2);
}

TEST_CASE("constraint file round-trip") {
    std::vector<int> labels{0, 0, 1, 1, 2, 2, 0, 1};
    auto cs = generate_constraints(labels, ConstraintKind::pairwise, 0.3, 5);
    auto cs2 = generate_constraints(labels, ConstraintKind::label, 0.3, 5);
    cs.positive_labels = cs2.positive_labels;
    cs.negative_labels = cs2.negative_labels;
    std::ostringstream out;
    write_constraints(out, cs);
    std::istringstream in(out.str());
    auto parsed = parse_constraints(in, 8);
    CHECK(parsed.must_link == cs.must_link);
    CHECK(parsed.cannot_link == cs.cannot_link);
    CHECK(parsed.positive_labels == cs.positive_labels);
    CHECK(parsed.negative_labels == cs.negative_labels);
}

TEST_CASE("constraint parsing: comments, errors, conflicts") {
    SUBCASE("comments and blank lines are ignored") {
        std::istringstream in("# header\nML 0 1\n\nCL 2 3 # trailing comment\n");
        auto cs = parse_constraints(in, 4);
        CHECK(cs.must_link == std::vector<VertexPair>{{0, 1}});
        CHECK(cs.cannot_link == std::vector<VertexPair>{{2, 3}});
    }
    SUBCASE("unknown tag") {
        std::istringstream in("XX 0 1\n");
        CHECK_THROWS_AS(parse_constraints(in, 4), InputError);
    }
    SUBCASE("out-of-range vertex") {
        std::istringstream in("ML 0 9\n");
        CHECK_THROWS_AS(parse_constraints(in, 4), InputError);
    }
    SUBCASE("same pair on both sides is a conflict") {
        std::istringstream in("ML 0 1\nCL 1 0\n");
        CHECK_THROWS_AS(parse_constraints(in, 4), ConstraintConflict);
    }
    SUBCASE("same (vertex,label) asserted and denied") {
        std::istringstream in("PL 0 2\nNL 0 2\n");
        CHECK_THROWS_AS(parse_constraints(in, 4), InputError);
    }
}

TEST_CASE("relation graph is symmetric and self-loop free on random inputs") {
    testsup::TestRng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 6 + rng.below(12);
        std::vector<int> labels(n);
        for (int& l : labels) l = rng.below(3);
        bool distinct = false;
        for (int v = 1; v < n; ++v) distinct = distinct || labels[v] != labels[0];
        if (!distinct) labels[0] = 1 + labels[0];
        SimilarityMatrix s;
        s.n = n;
        s.s.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double v = rng.uniform(0.0, 1.0);
                s.at(i, j) = v;
                s.at(j, i) = v;
            }
        auto cs = generate_constraints(labels, ConstraintKind::pairwise, 0.3,
                                       static_cast<std::uint64_t>(trial));
        auto gp = relation_from_constraints(cs, s);
        for (int i = 0; i < n; ++i)
            for (const auto& nb : gp.adj[i]) {
                CHECK(nb.to != i);
                CHECK(gp.weight(nb.to, i) == nb.w);
            }
    }
}

TEST_SUITE_END();
