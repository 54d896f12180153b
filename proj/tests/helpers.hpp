#ifndef UPB_TEST_HELPERS_HPP
#define UPB_TEST_HELPERS_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "upb/canon.hpp"
#include "upb/checker.hpp"
#include "upb/core.hpp"
#include "upb/notation.hpp"

// Independent reference implementations the library is checked against.
// These stay deliberately naive.

namespace upb::testing {

// Exhaustive cover oracle: tries every selection of at most one region per
// qubit, no pruning.
inline std::optional<ExtensionWitness> naive_extension_witness(const OrthogonalityGraph& g) {
    std::vector<int> choice(g.p, -1);
    std::optional<ExtensionWitness> found;
    auto rec = [&](auto&& self, int q) -> bool {
        if (q == g.p) {
            std::vector<char> covered(g.s, 0);
            for (int qq = 0; qq < g.p; ++qq) {
                if (choice[qq] < 0) continue;
                for (Vertex v : g.qubits[qq].regions[choice[qq]]) covered[v] = 1;
            }
            if (std::count(covered.begin(), covered.end(), char(1)) == g.s) {
                found = ExtensionWitness{choice};
                return true;
            }
            return false;
        }
        for (int r = -1; r < static_cast<int>(g.qubits[q].regions.size()); ++r) {
            choice[q] = r;
            if (self(self, q + 1)) return true;
        }
        choice[q] = -1;
        return false;
    };
    rec(rec, 0);
    return found;
}

// Literal minimum of encode_graph over every vertex and qubit permutation.
inline std::string naive_min_encoding(const OrthogonalityGraph& g) {
    std::vector<int> vperm(g.s), qperm(g.p);
    std::iota(vperm.begin(), vperm.end(), 0);
    std::string best;
    do {
        std::iota(qperm.begin(), qperm.end(), 0);
        do {
            std::string enc = encode_graph(relabel(g, vperm, qperm));
            if (best.empty() || enc < best) best = enc;
        } while (std::next_permutation(qperm.begin(), qperm.end()));
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return best;
}

// Uniform-ish random valid graph: random region partition and random partial
// matching per qubit.
inline OrthogonalityGraph random_graph(std::mt19937_64& rng, int p, int s) {
    OrthogonalityGraph g;
    g.p = p;
    g.s = s;
    for (int q = 0; q < p; ++q) {
        int nregions = 1 + static_cast<int>(rng() % s);
        std::vector<std::vector<Vertex>> regions(nregions);
        for (Vertex v = 0; v < s; ++v) regions[rng() % nregions].push_back(v);
        regions.erase(std::remove_if(regions.begin(), regions.end(),
                                     [](const auto& r) { return r.empty(); }),
                      regions.end());
        std::vector<int> ids(regions.size());
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        std::vector<std::pair<int, int>> matching;
        for (size_t i = 0; i + 1 < ids.size(); i += 2)
            if (rng() % 2) matching.emplace_back(ids[i], ids[i + 1]);
        g.qubits.push_back(QubitFactorization::normalized(std::move(regions), std::move(matching)));
    }
    return g;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

// All factorizations of s vertices (every region partition with every
// partial matching); feasible only for tiny s.
inline std::vector<QubitFactorization> all_factorizations(int s) {
    std::vector<std::vector<std::vector<Vertex>>> partitions;
    std::vector<std::vector<Vertex>> current;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == s) {
            partitions.push_back(current);
            return;
        }
        std::size_t n = current.size();  // recursion appends, so index by hand
        for (std::size_t i = 0; i < n; ++i) {
            current[i].push_back(v);
            self(self, v + 1);
            current[i].pop_back();
        }
        current.push_back({v});
        self(self, v + 1);
        current.pop_back();
    };
    rec(rec, 0);

    std::vector<QubitFactorization> out;
    for (const auto& regions : partitions) {
        int n = static_cast<int>(regions.size());
        std::vector<std::pair<int, int>> matching;
        auto matchings = [&](auto&& self, int from, std::vector<char>& used) -> void {
            out.push_back(QubitFactorization::normalized(regions, matching));
            for (int i = from; i < n; ++i) {
                if (used[i]) continue;
                for (int j = i + 1; j < n; ++j) {
                    if (used[j]) continue;
                    used[i] = used[j] = 1;
                    matching.emplace_back(i, j);
                    self(self, i + 1, used);
                    matching.pop_back();
                    used[i] = used[j] = 0;
                }
            }
        };
        std::vector<char> used(n, 0);
        matchings(matchings, 0, used);
    }
    return out;
}

}  // namespace upb::testing

#endif
