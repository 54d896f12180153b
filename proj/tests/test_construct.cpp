#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "upb/canon.hpp"
#include "upb/checker.hpp"
#include "upb/construct.hpp"
#include "upb/fixtures.hpp"
#include "upb/notation.hpp"

using namespace upb;

namespace {
OrthogonalityGraph graph_of(const std::string& ket) {
    return graph_from_states(parse_basis(ket));
}
}  // namespace

TEST_CASE("minimum sizes for 3..12 qubits") {
    const int expected[] = {4, 6, 6, 8, 8, 11, 10, 12, 12, 16};
    for (int p = 3; p <= 12; ++p) CHECK(min_size(p) == expected[p - 3]);
    CHECK(min_size(1) == 2);
    CHECK(min_size(2) == 4);
}

TEST_CASE("shifts builder matches its graph and profile") {
    auto g = graph_from_states(shifts());
    CHECK(classify(g).is_upb());
    CHECK(format_basis(shifts()) == "000,1aA,A1a,aA1");
    auto pr = profile_of(g);
    for (const auto& q : pr.qubits)
        CHECK(q == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}});
}

TEST_CASE("standard bases are UPBs and the three-qubit one is the first product basis") {
    CHECK(format_basis(standard_basis(1)) == "0,1");
    for (int p = 1; p <= 4; ++p) {
        auto g = graph_from_states(standard_basis(p));
        CHECK(g.s == (1 << p));
        CHECK(classify(g).is_upb());
    }
    CHECK(graph_from_states(standard_basis(3)) == graph_of(fixture("pb_3q_01").ket));
}

TEST_CASE("combine stacks two UPBs into one more qubit") {
    auto both = combine(shifts(), shifts());
    CHECK(both.p == 4);
    CHECK(both.s == 8);
    auto g = graph_from_states(both);
    CHECK(classify(g).is_upb());
    CHECK(are_equivalent(g, graph_of(fixture("upb_4q_8_pair_shared").ket)));

    auto wide = combine(shifts(), parse_basis(fixture("pb_3q_01").ket));
    CHECK(wide.s == 12);
    CHECK(classify(graph_from_states(wide)).is_upb());
}

TEST_CASE("combine refuses non-UPB inputs and mismatched widths") {
    CHECK_THROWS_AS(combine(parse_basis("000,011,101"), shifts()), NotAUPB);
    CHECK_THROWS_AS(combine(parse_basis("00,11"), shifts()), DimensionMismatch);
}

TEST_CASE("graph-level combine with and without a sharing map") {
    auto sh = graph_of("000,1aA,A1a,aA1");

    // no sharing: both blocks generic, same as stacking a fully renamed copy
    auto fresh = combine(sh, sh);
    CHECK(are_equivalent(fresh, graph_from_states(combine(
                                    parse_basis("000,1aA,A1a,aA1"),
                                    parse_basis("ccc,CbB,BCb,bBC")))));

    // sharing only the first-listed basis per qubit (partners merge along)
    // gives the published second variant,
    RegionSharing share_zero(3, {{0, 0}});
    auto partial = combine(sh, sh, &share_zero);
    CHECK(are_equivalent(partial, graph_of(fixture("upb_4q_8_pair_fresh").ket)));

    // and identifying every region reproduces the fully shared variant.
    RegionSharing share_all(3);
    for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 4; ++r) share_all[q].emplace_back(r, r);
    auto shared = combine(sh, sh, &share_all);
    CHECK(are_equivalent(shared, graph_of(fixture("upb_4q_8_pair_shared").ket)));
    CHECK_FALSE(are_equivalent(shared, partial));
    CHECK_FALSE(are_equivalent(shared, fresh));
}

TEST_CASE("round-robin 1-factorizations partition the complete graph") {
    CHECK(one_factorization(2).rounds.size() == 1);
    CHECK(one_factorization(4).rounds.size() == 3);
    CHECK_THROWS_AS(one_factorization(5), OddOrder);
    for (int n = 2; n <= 20; n += 2) {
        auto fac = one_factorization(n);
        REQUIRE(static_cast<int>(fac.rounds.size()) == n - 1);
        std::set<std::pair<int, int>> seen;
        for (const auto& round : fac.rounds) {
            REQUIRE(static_cast<int>(round.size()) == n / 2);
            std::set<int> used;
            for (auto [u, v] : round) {
                CHECK(u < v);
                CHECK(used.insert(u).second);
                CHECK(used.insert(v).second);
                CHECK(seen.insert({u, v}).second);
            }
        }
        CHECK(static_cast<int>(seen.size()) == n * (n - 1) / 2);
    }
}

TEST_CASE("splitting turns one paired qubit into two and keeps the verdict") {
    auto g = build_multiple_of_four(4, 8);
    CHECK(classify(g).is_upb());
    auto split = split_qubit(g, 1);
    CHECK(split.p == 5);
    CHECK(split.s == 8);
    CHECK(classify(split).is_upb());
    CHECK(are_equivalent(split, build_multiple_of_four(5, 8)));

    // the published five-qubit eight-state set is that same class
    CHECK(are_equivalent(split, graph_of(fixture("upb_5q_8").ket)));

    // singleton components cannot be split
    CHECK_THROWS_AS(split_qubit(graph_of("000,1aA,A1a,aA1"), 0), NotSplittable);
}

TEST_CASE("double split reaches the six-qubit eight-state case") {
    auto g = build_multiple_of_four(4, 8);
    auto twice = split_qubit(split_qubit(g, 1), 3);
    CHECK(twice.p == 6);
    CHECK(twice.s == 8);
    CHECK(classify(twice).is_upb());
    CHECK(are_equivalent(twice, build_multiple_of_four(6, 8)));
}

TEST_CASE("the wired construction covers its stated range") {
    auto g48 = build_multiple_of_four(4, 8);
    auto pr = profile_of(g48).normalized();
    // one qubit of four matched singleton pairs, three of two K_{2,2} blocks
    int singleton_qubits = 0;
    for (const auto& q : pr.qubits) {
        bool all_ones = true;
        for (auto [a, b] : q) all_ones = all_ones && a == 1 && b == 1;
        if (all_ones) ++singleton_qubits;
    }
    CHECK(singleton_qubits == 1);

    CHECK(are_equivalent(build_multiple_of_four(3, 4), graph_of("000,1aA,A1a,aA1")));
    CHECK(classify(build_multiple_of_four(2, 4)).is_upb());
    CHECK_THROWS_AS(build_multiple_of_four(9, 20), Unsupported);
    CHECK_THROWS_AS(build_multiple_of_four(4, 10), BadArguments);
    CHECK_THROWS_AS(build_multiple_of_four(3, 12), BadArguments);

    auto g512 = build_multiple_of_four(5, 12);
    CHECK(g512.s == 12);
    CHECK(classify(g512).is_upb());
}

TEST_CASE("nonexistence rules are exactly the published ones") {
    CHECK(known_nonexistence(4, 13) == NonexistenceRule::near_maximal);
    CHECK(known_nonexistence(7, 9) == NonexistenceRule::odd_p_plus_2);
    CHECK(known_nonexistence(5, 11) == NonexistenceRule::none);
    CHECK(known_nonexistence(4, 11) == NonexistenceRule::none);  // computed, not a rule
    CHECK(known_nonexistence(4, 5) == NonexistenceRule::below_minimum);
    CHECK(known_nonexistence(6, 3) == NonexistenceRule::too_small_trivial);
    CHECK(known_nonexistence(1, 1) == NonexistenceRule::too_small_trivial);
    CHECK(known_nonexistence(3, 5) == NonexistenceRule::odd_p_plus_2);
    CHECK_THROWS_AS(known_nonexistence(3, 9), BadArguments);
}

TEST_CASE("attainable sizes for four qubits are fully decided") {
    auto cat = attainable_sizes(4);
    IntervalSet expected;
    for (long long v : {6, 7, 8, 9, 10, 12, 16}) expected.add(v);
    CHECK(cat.attainable.intervals() == expected.intervals());
    CHECK(cat.unknown.empty());
    CHECK(cat.impossible.contains(11));
    CHECK(cat.impossible.count() == 16 - 7);
}

TEST_CASE("attainable sizes for seven qubits match the published table") {
    auto cat = attainable_sizes(7);
    IntervalSet expected;
    for (long long v : {8, 12, 16, 17, 18, 124, 128}) expected.add(v);
    expected.add(20, 122);
    CHECK(cat.attainable.intervals() == expected.intervals());
    IntervalSet unknown;
    for (long long v : {10, 11, 13, 14, 15, 19, 123}) unknown.add(v);
    CHECK(cat.unknown.intervals() == unknown.intervals());
    CHECK(cat.impossible.contains(9));
    CHECK(cat.impossible.contains(127));
    CHECK(cat.proven_gap == 3);    // 125..127
    CHECK(cat.possible_gap == 3);  // e.g. 9..11
    CHECK(cat.provenance_of(128) == "standard-basis");
}

TEST_CASE("eight qubits attain everything from 28 through 250") {
    auto cat = attainable_sizes(8);
    for (long long v = 28; v <= 250; ++v) CHECK(cat.attainable.contains(v));
    CHECK(cat.attainable.contains(min_size(8)));
    CHECK_FALSE(cat.attainable.contains(253));
    CHECK_FALSE(cat.attainable.contains(251));  // open question
}

TEST_CASE("bound comparison values and sandwich") {
    const std::pair<long long, long long> expected[] = {{20, 20}, {28, 29}, {39, 39},
                                                        {49, 50}, {61, 62}, {73, 75}};
    for (int p = 7; p <= 12; ++p) CHECK(bound_comparison(p) == expected[p - 7]);
    for (int p = 7; p <= 200; ++p) {
        auto [sum_f, closed] = bound_comparison(p);
        CHECK(sum_f <= closed);
        CHECK(closed <= sum_f + 2);
    }
    // the four-term stride used in the induction
    for (int p = 9; p <= 200; ++p) {
        long long stride = 0;
        for (int k = p; k < p + 4; ++k) stride += min_size(k);
        CHECK(stride == 4ll * p + 14);
    }
    CHECK_THROWS_AS(bound_comparison(6), BadArguments);
}

TEST_CASE("interval set algebra") {
    IntervalSet a;
    a.add(1, 3);
    a.add(5);
    a.add(4);  // merges into 1..5
    CHECK(a.intervals() == std::vector<std::pair<long long, long long>>{{1, 5}});
    IntervalSet b;
    b.add(2, 2);
    auto sum = a.sumset(b);
    CHECK(sum.intervals() == std::vector<std::pair<long long, long long>>{{3, 7}});
    auto comp = a.complement_within(0, 8);
    CHECK(comp.intervals() == std::vector<std::pair<long long, long long>>{{0, 0}, {6, 8}});
    CHECK(a.count() == 5);
    CHECK(a.intersect(3, 9).intervals() ==
          std::vector<std::pair<long long, long long>>{{3, 5}});
}
