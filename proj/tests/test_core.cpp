#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "upb/core.hpp"
#include "upb/fixtures.hpp"
#include "upb/notation.hpp"

using namespace upb;

namespace {

// The seven-state, three-qubit example set: first qubit pairs {0}-{1,6},
// {2}-{4}, {3}-{5}; second {0}-{2,3,4,5}, {1}-{6}; third {0,1,6}-{3,4},
// {2}-{5}.
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

}  // namespace

TEST_CASE("seven-state example graph validates") {
    CHECK(validate_graph(seven_state_example()).ok());
}

TEST_CASE("overlapping regions are reported") {
    OrthogonalityGraph g;
    g.p = 1;
    g.s = 3;
    g.qubits.push_back(QubitFactorization::normalized({{0, 1}, {1, 2}}, {}));
    auto rep = validate_graph(g);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& issue : rep.issues)
        if (issue.rule == "overlapping regions") found = true;
    CHECK(found);
}

TEST_CASE("self-paired region is reported") {
    OrthogonalityGraph g;
    g.p = 1;
    g.s = 4;
    QubitFactorization f;
    f.regions = {{0, 1}, {2, 3}};
    f.matching = {{1, 1}};
    g.qubits.push_back(f);
    auto rep = validate_graph(g);
    CHECK_FALSE(rep.ok());
    CHECK(rep.to_string().find("self-paired") != std::string::npos);
}

TEST_CASE("missing vertices, empty regions, double matchings are reported") {
    OrthogonalityGraph g;
    g.p = 1;
    g.s = 4;
    QubitFactorization f;
    f.regions = {{0, 1}, {}, {3}};
    f.matching = {{0, 1}, {0, 2}};
    g.qubits.push_back(f);
    auto rep = validate_graph(g);
    CHECK_FALSE(rep.ok());
    CHECK(rep.issues.size() >= 3);  // empty region, uncovered vertex, region matched twice
}

TEST_CASE("graph_from_states groups equal symbols and matches complements") {
    auto g = graph_from_states(parse_basis(fixture("upb_4q_6").ket));
    // First qubit: 00 11 a ā -> {0,1} matched with {2,3}, {4} with {5}.
    const auto& f = g.qubits[0];
    REQUIRE(f.regions.size() == 4);
    CHECK(f.regions[2] == std::vector<Vertex>{0, 1});
    CHECK(f.regions[3] == std::vector<Vertex>{2, 3});
    CHECK(f.region_of(4) != -1);
    CHECK(f.partner_of(f.region_of(0)) == f.region_of(2));
    CHECK(f.partner_of(f.region_of(4)) == f.region_of(5));
}

TEST_CASE("two complementary states pair on both qubits") {
    auto g = graph_from_states(parse_basis("00,11"));
    for (const auto& f : g.qubits) {
        REQUIRE(f.regions.size() == 2);
        CHECK(f.matching.size() == 1);
    }
}

TEST_CASE("states with no orthogonality anywhere") {
    auto g = graph_from_states(parse_basis("0a,0b"));
    CHECK(g.qubits[0].regions.size() == 1);
    CHECK(g.qubits[0].matching.empty());
    CHECK(g.qubits[1].regions.size() == 2);
    CHECK(g.qubits[1].matching.empty());
}

TEST_CASE("profile of the seven-state example") {
    auto pr = profile_of(seven_state_example());
    using P = std::vector<std::pair<int, int>>;
    CHECK(pr.qubits[0] == P{{2, 1}, {1, 1}, {1, 1}});
    CHECK(pr.qubits[1] == P{{4, 1}, {1, 1}});
    CHECK(pr.qubits[2] == P{{3, 2}, {1, 1}});
}

TEST_CASE("profile of the standard two-qubit basis") {
    auto pr = profile_of(graph_from_states(parse_basis("00,01,10,11")));
    for (const auto& q : pr.qubits)
        CHECK(q == std::vector<std::pair<int, int>>{{2, 2}});
}

TEST_CASE("unmatched regions profile as (r, 0)") {
    auto pr = profile_of(graph_from_states(parse_basis("0a,0b")));
    CHECK(pr.qubits[0] == std::vector<std::pair<int, int>>{{2, 0}});
    CHECK(pr.qubits[1] == std::vector<std::pair<int, int>>{{1, 0}, {1, 0}});
}

TEST_CASE("adjacency holds exactly where symbols oppose") {
    std::mt19937_64 rng(7);
    const char* letters = "0abc";
    for (int round = 0; round < 200; ++round) {
        int p = 1 + static_cast<int>(rng() % 3);
        int s = 1 + static_cast<int>(rng() % 6);
        SymbolicProductBasis b;
        b.p = p;
        b.s = s;
        std::set<std::vector<Symbol>> seen;
        while (static_cast<int>(b.states.size()) < s) {
            std::vector<Symbol> st(p);
            for (auto& sym : st) sym = {letters[rng() % 4], (rng() % 2) != 0};
            if (seen.insert(st).second) b.states.push_back(st);
        }
        auto g = graph_from_states(b);
        CHECK(validate_graph(g).ok());
        auto pr = profile_of(g);
        for (const auto& q : pr.qubits) {
            int total = 0;
            for (auto [x, y] : q) total += x + y;
            CHECK(total == s);
        }
        // direct symbol comparison vs matched-pair adjacency
        for (int q = 0; q < p; ++q) {
            const auto& f = g.qubits[q];
            for (int u = 0; u < s; ++u) {
                for (int v = u + 1; v < s; ++v) {
                    bool opposed = b.states[u][q].letter == b.states[v][q].letter &&
                                   b.states[u][q].complemented != b.states[v][q].complemented;
                    int ru = f.region_of(u), rv = f.region_of(v);
                    bool adjacent = ru != rv && f.partner_of(ru) == rv;
                    CHECK(opposed == adjacent);
                }
            }
        }
    }
}

TEST_CASE("induced subgraph keeps edges and drops empty partners") {
    auto g = seven_state_example();
    // keep the five vertices of the big second-qubit region plus vertex 0
    auto sub = induced_subgraph(g, {0, 2, 3, 4, 5}, 1);
    CHECK(sub.p == 2);
    CHECK(sub.s == 5);
    CHECK(validate_graph(sub).ok());
    // vertex 1 (old 2) was matched with old 4 on qubit 0; still is
    auto& f = sub.qubits[0];
    CHECK(f.partner_of(f.region_of(1)) == f.region_of(3));
}

TEST_CASE("normalized regions are sorted by size then least vertex") {
    auto f = QubitFactorization::normalized({{5, 4, 3}, {0}, {2, 1}}, {{0, 2}});
    REQUIRE(f.regions.size() == 3);
    CHECK(f.regions[0] == std::vector<Vertex>{0});
    CHECK(f.regions[1] == std::vector<Vertex>{1, 2});
    CHECK(f.regions[2] == std::vector<Vertex>{3, 4, 5});
    CHECK(f.matching == std::vector<std::pair<int, int>>{{1, 2}});
}
