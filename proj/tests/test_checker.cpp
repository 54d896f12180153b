#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "upb/checker.hpp"
#include "upb/construct.hpp"
#include "upb/fixtures.hpp"
#include "upb/notation.hpp"

using namespace upb;

namespace {

OrthogonalityGraph seven_state_example() {
    OrthogonalityGraph g;
    g.p = 3;
    g.s = 7;
    g.qubits.push_back(QubitFactorization::normalized({{0}, {1, 6}, {2}, {4}, {3}, {5}},
                                                      {{0, 1}, {2, 3}, {4, 5}}));
    g.qubits.push_back(
        QubitFactorization::normalized({{0}, {2, 3, 4, 5}, {1}, {6}}, {{0, 1}, {2, 3}}));
    g.qubits.push_back(
        QubitFactorization::normalized({{0, 1, 6}, {3, 4}, {2}, {5}}, {{0, 1}, {2, 3}}));
    return g;
}

OrthogonalityGraph graph_of(const std::string& ket) {
    return graph_from_states(parse_basis(ket));
}

}  // namespace

TEST_CASE("seven-state example misses the (v2,v3) pair") {
    auto missing = missing_orthogonal_pairs(seven_state_example());
    CHECK_FALSE(missing.empty());
    bool found = false;
    for (auto [u, v] : missing)
        if (u == 1 && v == 2) found = true;
    CHECK(found);
}

TEST_CASE("shifts is mutually orthogonal and unextendible") {
    auto g = graph_of("000,1aA,A1a,aA1");
    CHECK(is_mutually_orthogonal(g));
    CHECK_FALSE(extension_witness(g).has_value());
    CHECK(classify(g).is_upb());
}

TEST_CASE("a single state is vacuously orthogonal but extendible") {
    auto g = graph_of("0");
    CHECK(is_mutually_orthogonal(g));
    auto w = extension_witness(g);
    REQUIRE(w.has_value());
    CHECK(witness_covers_all(g, *w));
}

TEST_CASE("seven-state example admits an extension") {
    auto g = seven_state_example();
    auto w = extension_witness(g);
    REQUIRE(w.has_value());
    CHECK(witness_covers_all(g, *w));
    CHECK(testing::naive_extension_witness(g).has_value());
    CHECK(classify(g).kind == Verdict::Kind::not_pairwise_orthogonal);
}

TEST_CASE("standard bases leave no orthogonal product state") {
    for (int p = 1; p <= 3; ++p) {
        auto g = graph_from_states(standard_basis(p));
        CHECK_FALSE(extension_witness(g).has_value());
        CHECK(classify(g).is_upb());
    }
}

TEST_CASE("three of four two-qubit basis states are extendible") {
    auto v = classify(graph_of("00,01,10"));
    CHECK(v.kind == Verdict::Kind::extendible);
    REQUIRE(v.witness.has_value());
    CHECK(witness_covers_all(graph_of("00,01,10"), *v.witness));
}

TEST_CASE("seven-state four-qubit set is a UPB") {
    CHECK(classify(graph_of(fixture("upb_4q_7").ket)).is_upb());
}

TEST_CASE("witness search agrees with the naive cover oracle, exhaustively for tiny graphs") {
    for (int s = 1; s <= 4; ++s) {
        auto factorizations = testing::all_factorizations(s);
        for (const auto& f1 : factorizations) {
            for (const auto& f2 : factorizations) {
                OrthogonalityGraph g;
                g.p = 2;
                g.s = s;
                g.qubits = {f1, f2};
                auto fast = extension_witness(g);
                auto slow = testing::naive_extension_witness(g);
                CHECK(fast.has_value() == slow.has_value());
                if (fast) CHECK(witness_covers_all(g, *fast));
            }
        }
    }
}

TEST_CASE("witness search agrees with the naive cover oracle on random graphs") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10000; ++i) {
        int p = 1 + static_cast<int>(rng() % 4);
        int s = 1 + static_cast<int>(rng() % 8);
        auto g = testing::random_graph(rng, p, s);
        auto fast = extension_witness(g);
        auto slow = testing::naive_extension_witness(g);
        CHECK(fast.has_value() == slow.has_value());
        if (fast) CHECK(witness_covers_all(g, *fast));
    }
}

TEST_CASE("splitting a region never makes an unextendible graph extendible") {
    std::mt19937_64 rng(19);
    int tested = 0;
    for (int i = 0; i < 4000 && tested < 200; ++i) {
        auto g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 3),
                                       2 + static_cast<int>(rng() % 7));
        if (extension_witness(g).has_value()) continue;
        ++tested;
        // split the first region of size >= 2 into two, new half unmatched
        for (int q = 0; q < g.p; ++q) {
            const auto& f = g.qubits[q];
            for (size_t r = 0; r < f.regions.size(); ++r) {
                if (f.regions[r].size() < 2) continue;
                auto regions = f.regions;
                std::vector<Vertex> half(regions[r].begin() + regions[r].size() / 2,
                                         regions[r].end());
                regions[r].resize(regions[r].size() - half.size());
                regions.push_back(half);
                OrthogonalityGraph h = g;
                h.qubits[q] = QubitFactorization::normalized(regions, f.matching);
                REQUIRE(validate_graph(h).ok());
                CHECK_FALSE(extension_witness(h).has_value());
                q = g.p;
                break;
            }
        }
    }
    CHECK(tested > 50);
}

TEST_CASE("numeric crosscheck agrees on reference sets") {
    CHECK(numeric_crosscheck(graph_of("000,1aA,A1a,aA1"), 1).agree);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rep = numeric_crosscheck(graph_of(fixture("upb_4q_6").ket), seed);
        CHECK(rep.agree);
    }
    CHECK(numeric_crosscheck(seven_state_example(), 3).agree);
    CHECK(numeric_crosscheck(graph_of("00,01,10"), 4).agree);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        auto g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 3),
                                       1 + static_cast<int>(rng() % 6));
        CHECK(numeric_crosscheck(g, i).agree);
    }
}
