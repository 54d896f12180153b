#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "upb/canon.hpp"
#include "upb/fixtures.hpp"
#include "upb/notation.hpp"

using namespace upb;

namespace {
OrthogonalityGraph graph_of(const std::string& ket) {
    return graph_from_states(parse_basis(ket));
}
}  // namespace

TEST_CASE("canonical key survives qubit rotation") {
    auto g = graph_of("000,1aA,A1a,aA1");
    std::vector<int> vid(g.s);
    std::iota(vid.begin(), vid.end(), 0);
    auto rotated = relabel(g, vid, {1, 2, 0});
    CHECK(canonical_key(g) == canonical_key(rotated));
    CHECK(are_equivalent(g, rotated));
}

TEST_CASE("the two stacked eight-state variants are inequivalent") {
    auto g1 = graph_of(fixture("upb_4q_8_pair_shared").ket);
    auto g2 = graph_of(fixture("upb_4q_8_pair_fresh").ket);
    CHECK_FALSE(are_equivalent(g1, g2));
    CHECK(canonical_key(g1) != canonical_key(g2));
}

TEST_CASE("the eleven nine-state sets have eleven distinct keys") {
    std::set<CanonicalKey> keys;
    for (const auto& f : fixture_corpus()) {
        if (f.name.rfind("upb_4q_9_", 0) != 0) continue;
        keys.insert(canonical_key(graph_of(f.ket)));
    }
    CHECK(keys.size() == 11);
}

TEST_CASE("keys are invariant under random relabelings of every fixture") {
    std::mt19937_64 rng(29);
    for (const auto& f : fixture_corpus()) {
        auto g = graph_of(f.ket);
        auto key = canonical_key(g);
        for (int i = 0; i < 20; ++i) {
            auto moved = relabel(g, testing::random_permutation(rng, g.s),
                                 testing::random_permutation(rng, g.p));
            CHECK(canonical_key(moved) == key);
        }
    }
}

TEST_CASE("a key decodes to an equivalent representative") {
    for (const char* name : {"upb_4q_6", "upb_5q_8", "shifts_3q"}) {
        auto g = graph_of(fixture(name).ket);
        auto key = canonical_key(g);
        CHECK(are_equivalent(decode_graph(key.bytes), g));
        CHECK(canonical_key(decode_graph(key.bytes)) == key);
    }
}

TEST_CASE("size mismatch short-circuits equivalence") {
    CHECK_FALSE(are_equivalent(graph_of(fixture("upb_4q_6").ket),
                               graph_of(fixture("upb_4q_7").ket)));
}

TEST_CASE("key equality matches the naive exhaustive minimum's classes") {
    std::mt19937_64 rng(31);
    std::vector<OrthogonalityGraph> graphs;
    for (int i = 0; i < 60; ++i)
        graphs.push_back(testing::random_graph(rng, 1 + static_cast<int>(rng() % 3),
                                               1 + static_cast<int>(rng() % 5)));
    std::map<std::string, std::set<int>> naive_classes;
    std::map<CanonicalKey, std::set<int>> our_classes;
    for (int i = 0; i < static_cast<int>(graphs.size()); ++i) {
        naive_classes[testing::naive_min_encoding(graphs[i])].insert(i);
        our_classes[canonical_key(graphs[i])].insert(i);
    }
    std::set<std::set<int>> a, b;
    for (auto& [k, members] : naive_classes) a.insert(members);
    for (auto& [k, members] : our_classes) b.insert(members);
    CHECK(a == b);
}

TEST_CASE("dedupe collapses relabeled copies and keeps multiplicity") {
    std::mt19937_64 rng(37);
    auto g = graph_of("000,1aA,A1a,aA1");
    std::vector<OrthogonalityGraph> stream;
    for (int i = 0; i < 5; ++i)
        stream.push_back(relabel(g, testing::random_permutation(rng, g.s),
                                 testing::random_permutation(rng, g.p)));
    auto classes = dedupe(stream);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].multiplicity == 5);
    CHECK(are_equivalent(classes[0].representative, g));
}

TEST_CASE("dedupe of an empty stream is empty") {
    CHECK(dedupe({}).empty());
}

TEST_CASE("dedupe rejects mixed dimensions") {
    Deduper d;
    d.add(graph_of("00,11"));
    CHECK_THROWS_AS(d.add(graph_of("000,111")), MixedDimensions);
}

TEST_CASE("dedupe agrees with the naive oracle on a random stream") {
    std::mt19937_64 rng(41);
    std::vector<OrthogonalityGraph> stream;
    for (int i = 0; i < 40; ++i) stream.push_back(testing::random_graph(rng, 2, 4));
    auto classes = dedupe(stream);
    std::set<std::string> naive;
    for (const auto& g : stream) naive.insert(testing::naive_min_encoding(g));
    CHECK(classes.size() == naive.size());
}

TEST_CASE("equivalent graphs share profile multisets") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        auto g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 3),
                                       2 + static_cast<int>(rng() % 5));
        auto moved = relabel(g, testing::random_permutation(rng, g.s),
                             testing::random_permutation(rng, g.p));
        CHECK(profile_of(g).normalized() == profile_of(moved).normalized());
    }
}
