#include "upb/checker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace upb {

namespace {

// Dynamic bitset over vertices, sized in 64-bit words.
struct VertexSet {
    std::vector<std::uint64_t> words;

    explicit VertexSet(int s) : words((s + 63) / 64, 0) {}
    void set(int v) { words[v >> 6] |= 1ull << (v & 63); }
    void unite(const VertexSet& o) {
        for (size_t i = 0; i < words.size(); ++i) words[i] |= o.words[i];
    }
    int count() const {
        int n = 0;
        for (auto w : words) n += std::popcount(w);
        return n;
    }
};

}  // namespace

std::string to_string(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::upb: return "UPB";
        case Verdict::Kind::not_pairwise_orthogonal: return "NOT_PAIRWISE_ORTHOGONAL";
        case Verdict::Kind::extendible: return "EXTENDIBLE";
    }
    return "?";
}

std::vector<std::pair<Vertex, Vertex>> missing_orthogonal_pairs(const OrthogonalityGraph& g) {
    require_valid(g);
    std::vector<std::vector<char>> adj(g.s, std::vector<char>(g.s, 0));
    for (const auto& f : g.qubits) {
        for (auto [a, b] : f.matching) {
            for (Vertex u : f.regions[a])
                for (Vertex v : f.regions[b]) adj[u][v] = adj[v][u] = 1;
        }
    }
    std::vector<std::pair<Vertex, Vertex>> missing;
    for (Vertex u = 0; u < g.s; ++u)
        for (Vertex v = u + 1; v < g.s; ++v)
            if (!adj[u][v]) missing.emplace_back(u, v);
    return missing;
}

bool witness_covers_all(const OrthogonalityGraph& g, const ExtensionWitness& w) {
    if (static_cast<int>(w.region_per_qubit.size()) != g.p) return false;
    VertexSet covered(g.s);
    for (int q = 0; q < g.p; ++q) {
        int r = w.region_per_qubit[q];
        if (r < 0) continue;
        if (r >= static_cast<int>(g.qubits[q].regions.size())) return false;
        for (Vertex v : g.qubits[q].regions[r]) covered.set(v);
    }
    return covered.count() == g.s;
}

std::optional<ExtensionWitness> extension_witness(const OrthogonalityGraph& g) {
    require_valid(g);

    // Qubits sorted by descending largest region; within a qubit, region
    // choices by descending size. Bound: even taking the largest region of
    // every remaining qubit cannot reach s => prune.
    std::vector<int> qubit_order(g.p);
    std::vector<int> max_region(g.p, 0);
    std::vector<std::vector<int>> region_order(g.p);
    for (int q = 0; q < g.p; ++q) {
        const auto& f = g.qubits[q];
        region_order[q].resize(f.regions.size());
        for (size_t r = 0; r < f.regions.size(); ++r) region_order[q][r] = static_cast<int>(r);
        std::sort(region_order[q].begin(), region_order[q].end(), [&](int a, int b) {
            return f.regions[a].size() > f.regions[b].size();
        });
        if (!f.regions.empty()) max_region[q] = static_cast<int>(f.regions[region_order[q][0]].size());
        qubit_order[q] = q;
    }
    std::sort(qubit_order.begin(), qubit_order.end(),
              [&](int a, int b) { return max_region[a] > max_region[b]; });

    std::vector<int> suffix_max(g.p + 1, 0);
    for (int i = g.p - 1; i >= 0; --i)
        suffix_max[i] = suffix_max[i + 1] + max_region[qubit_order[i]];

    std::vector<int> choice(g.p, -1);
    VertexSet covered(g.s);
    std::optional<ExtensionWitness> found;

    auto rec = [&](auto&& self, int depth, const VertexSet& cov) -> bool {
        int have = cov.count();
        if (have == g.s) {
            ExtensionWitness w;
            w.region_per_qubit = choice;
            if (!witness_covers_all(g, w)) throw Error("internal: cover verification failed");
            found = std::move(w);
            return true;
        }
        if (depth == g.p) return false;
        if (have + suffix_max[depth] < g.s) return false;
        int q = qubit_order[depth];
        for (int r : region_order[q]) {
            VertexSet next = cov;
            for (Vertex v : g.qubits[q].regions[r]) next.set(v);
            if (next.count() == have) continue;  // adds nothing; skipping dominates
            choice[q] = r;
            if (self(self, depth + 1, next)) return true;
            choice[q] = -1;
        }
        return self(self, depth + 1, cov);
    };
    rec(rec, 0, covered);
    return found;
}

Verdict classify(const OrthogonalityGraph& g) {
    Verdict v;
    v.missing_pairs = missing_orthogonal_pairs(g);
    if (!v.missing_pairs.empty()) {
        v.kind = Verdict::Kind::not_pairwise_orthogonal;
        return v;
    }
    v.witness = extension_witness(g);
    v.kind = v.witness ? Verdict::Kind::extendible : Verdict::Kind::upb;
    return v;
}

namespace {

struct Vec2 {
    double x = 0, y = 0;
};

double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

Vec2 angle_vec(double t) { return {std::cos(t), std::sin(t)}; }
Vec2 complement(const Vec2& v) { return {-v.y, v.x}; }

}  // namespace

CrosscheckReport numeric_crosscheck(const OrthogonalityGraph& g, std::uint64_t seed) {
    require_valid(g);
    CrosscheckReport rep;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    auto uniform_angle = [&]() {
        return std::numbers::pi * static_cast<double>(rng() >> 11) / 9007199254740992.0;
    };

    constexpr double kZeroTol = 1e-9;

    // One concrete vector per region. Matched partners are exact
    // complements; bases on the same qubit are resampled until mutually
    // well-separated so non-orthogonal factors stay far from zero.
    std::vector<std::vector<Vec2>> region_vec(g.p);
    for (int q = 0; q < g.p; ++q) {
        const auto& f = g.qubits[q];
        int bases = 0;
        for (size_t r = 0; r < f.regions.size(); ++r)
            if (f.partner_of(static_cast<int>(r)) < static_cast<int>(r)) ++bases;
        double min_gap = std::min(0.05, (std::numbers::pi / 2) / (4.0 * std::max(1, bases)));

        bool placed = false;
        for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
            std::vector<double> angles;
            for (size_t r = 0; r < f.regions.size(); ++r) {
                int mate = f.partner_of(static_cast<int>(r));
                if (mate >= 0 && mate < static_cast<int>(r)) continue;
                angles.push_back(uniform_angle());
            }
            // Separation of every pair of bases modulo pi/2 keeps distinct
            // regions both unequal and non-orthogonal.
            bool good = true;
            for (size_t i = 0; i < angles.size() && good; ++i) {
                for (size_t j = i + 1; j < angles.size() && good; ++j) {
                    double d = angles[i] - angles[j];
                    double half_pi = std::numbers::pi / 2;
                    double m = std::fmod(std::fmod(d, half_pi) + half_pi, half_pi);
                    if (std::min(m, half_pi - m) < min_gap) good = false;
                }
            }
            if (!good) continue;
            region_vec[q].assign(f.regions.size(), Vec2{});
            size_t next = 0;
            for (size_t r = 0; r < f.regions.size(); ++r) {
                int mate = f.partner_of(static_cast<int>(r));
                if (mate >= 0 && mate < static_cast<int>(r)) continue;
                Vec2 v = angle_vec(angles[next++]);
                region_vec[q][r] = v;
                if (mate >= 0) region_vec[q][mate] = complement(v);
            }
            placed = true;
        }
        if (!placed)
            throw DegenerateSample("could not sample separated angles on qubit " +
                                   std::to_string(q));
    }

    std::vector<int> region_of(g.s);
    std::vector<std::vector<Vec2>> state_vec(g.s, std::vector<Vec2>(g.p));
    for (int q = 0; q < g.p; ++q) {
        const auto& f = g.qubits[q];
        for (size_t r = 0; r < f.regions.size(); ++r)
            for (Vertex v : f.regions[r]) state_vec[v][q] = region_vec[q][r];
    }

    // Numeric pairwise orthogonality must match graph adjacency exactly.
    std::vector<std::vector<char>> adj(g.s, std::vector<char>(g.s, 0));
    for (const auto& f : g.qubits)
        for (auto [a, b] : f.matching)
            for (Vertex u : f.regions[a])
                for (Vertex v : f.regions[b]) adj[u][v] = adj[v][u] = 1;
    std::vector<std::pair<int, int>> numeric_missing;
    for (Vertex u = 0; u < g.s; ++u) {
        for (Vertex v = u + 1; v < g.s; ++v) {
            double inner = 1.0;
            for (int q = 0; q < g.p; ++q) inner *= dot(state_vec[u][q], state_vec[v][q]);
            bool numeric_orth = std::abs(inner) < kZeroTol;
            if (numeric_orth != static_cast<bool>(adj[u][v])) {
                rep.agree = false;
                rep.notes.push_back("pair (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") orthogonality mismatch, |<u|v>|=" + std::to_string(std::abs(inner)));
            }
            if (!numeric_orth) numeric_missing.emplace_back(u, v);
        }
    }

    // Candidate extensions: per qubit either a generic vector (kills
    // nothing) or the complement of some used local vector.
    bool numeric_extendible = false;
    std::vector<int> pick(g.p, -1);
    auto enumerate = [&](auto&& self, int q) -> bool {
        if (q == g.p) {
            for (Vertex v = 0; v < g.s; ++v) {
                bool killed = false;
                for (int qq = 0; qq < g.p && !killed; ++qq) {
                    if (pick[qq] < 0) continue;
                    Vec2 z = complement(region_vec[qq][pick[qq]]);
                    if (std::abs(dot(state_vec[v][qq], z)) < kZeroTol) killed = true;
                }
                if (!killed) return false;
            }
            return true;
        }
        for (int r = -1; r < static_cast<int>(g.qubits[q].regions.size()); ++r) {
            pick[q] = r;
            if (self(self, q + 1)) return true;
        }
        return false;
    };
    numeric_extendible = enumerate(enumerate, 0);

    Verdict verdict = classify(g);
    bool graph_orth = verdict.kind != Verdict::Kind::not_pairwise_orthogonal;
    if (graph_orth != numeric_missing.empty()) {
        rep.agree = false;
        rep.notes.push_back("orthogonality verdict mismatch");
    }
    if (graph_orth) {
        bool graph_extendible = verdict.kind == Verdict::Kind::extendible;
        if (graph_extendible != numeric_extendible) {
            rep.agree = false;
            rep.notes.push_back(std::string("extendibility mismatch: graph says ") +
                                (graph_extendible ? "extendible" : "unextendible"));
        }
    } else if (numeric_extendible) {
        // A non-orthogonal set is not a UPB either way; nothing to compare.
    }
    return rep;
}

}  // namespace upb
