#include "upb/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "upb/checker.hpp"
#include "upb/fixtures.hpp"
#include "upb/notation.hpp"

namespace upb {

int min_size(int p) {
    if (p < 1) throw BadArguments("qubit count must be positive");
    if (p % 2 == 1) return p + 1;
    if (p == 4 || p % 4 == 2) return p + 2;
    if (p == 8) return p + 3;
    return p + 4;
}

SymbolicProductBasis shifts() { return parse_basis("000,1aA,A1a,aA1"); }

SymbolicProductBasis standard_basis(int p) {
    if (p < 1) throw BadArguments("qubit count must be positive");
    if (p > 20) throw BadArguments("standard basis limited to p <= 20");
    SymbolicProductBasis b;
    b.p = p;
    b.s = 1 << p;
    b.states.reserve(b.s);
    for (int v = 0; v < b.s; ++v) {
        std::vector<Symbol> st(p);
        for (int q = 0; q < p; ++q) st[q] = {'0', ((v >> (p - 1 - q)) & 1) != 0};
        b.states.push_back(std::move(st));
    }
    return b;
}

namespace {

void require_upb(const OrthogonalityGraph& g, const char* which) {
    if (!classify(g).is_upb())
        throw NotAUPB(std::string(which) + " input does not classify as a UPB");
}

}  // namespace

SymbolicProductBasis combine(const SymbolicProductBasis& a, const SymbolicProductBasis& b) {
    if (a.p != b.p) throw DimensionMismatch("combine: inputs act on different qubit counts");
    require_upb(graph_from_states(a), "first");
    require_upb(graph_from_states(b), "second");
    SymbolicProductBasis out;
    out.p = a.p + 1;
    out.s = a.s + b.s;
    out.states.reserve(out.s);
    for (const auto& st : a.states) {
        auto ext = st;
        ext.push_back({'0', false});
        out.states.push_back(std::move(ext));
    }
    for (const auto& st : b.states) {
        auto ext = st;
        ext.push_back({'0', true});
        out.states.push_back(std::move(ext));
    }
    auto g = graph_from_states(out);
    if (!classify(g).is_upb()) throw Error("internal: combined basis failed verification");
    return out;
}

OrthogonalityGraph combine(const OrthogonalityGraph& a, const OrthogonalityGraph& b,
                           const RegionSharing* sharing) {
    if (a.p != b.p) throw DimensionMismatch("combine: inputs act on different qubit counts");
    require_valid(a);
    require_valid(b);
    require_upb(a, "first");
    require_upb(b, "second");
    if (sharing && static_cast<int>(sharing->size()) != a.p)
        throw BadArguments("sharing map must list every existing qubit");

    OrthogonalityGraph out;
    out.p = a.p + 1;
    out.s = a.s + b.s;
    for (int q = 0; q < a.p; ++q) {
        const auto& fa = a.qubits[q];
        const auto& fb = b.qubits[q];
        int na = static_cast<int>(fa.regions.size());
        int nb = static_cast<int>(fb.regions.size());
        // Union-find over a-regions [0, na) and b-regions [na, na+nb);
        // identifying two regions forces their partners together as well.
        std::vector<int> parent(na + nb);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
        if (sharing) {
            for (auto [ra, rb] : (*sharing)[q]) {
                if (ra < 0 || ra >= na || rb < 0 || rb >= nb)
                    throw BadArguments("sharing map region out of range");
                unite(ra, na + rb);
            }
            for (bool changed = true; changed;) {
                changed = false;
                for (int ra = 0; ra < na; ++ra) {
                    int pa = fa.partner_of(ra);
                    if (pa < 0) continue;
                    for (int rb = 0; rb < nb; ++rb) {
                        int pb = fb.partner_of(rb);
                        if (pb < 0) continue;
                        if (find(ra) == find(na + rb) && find(pa) != find(na + pb)) {
                            unite(pa, na + pb);
                            changed = true;
                        }
                    }
                }
            }
        }
        std::map<int, int> class_index;
        std::vector<std::vector<Vertex>> regions;
        for (int x = 0; x < na + nb; ++x) {
            int root = find(x);
            if (!class_index.count(root)) {
                class_index[root] = static_cast<int>(regions.size());
                regions.emplace_back();
            }
            auto& verts = regions[class_index[root]];
            if (x < na) {
                verts.insert(verts.end(), fa.regions[x].begin(), fa.regions[x].end());
            } else {
                for (Vertex v : fb.regions[x - na]) verts.push_back(v + a.s);
            }
        }
        std::vector<std::pair<int, int>> matching;
        std::map<int, int> partner_class;
        auto note_pair = [&](int c1, int c2) {
            if (c1 == c2) throw BadArguments("sharing map matches a region to itself");
            auto it = partner_class.find(c1);
            if (it != partner_class.end()) {
                if (it->second != c2)
                    throw BadArguments("sharing map forces a region into two matchings");
                return;
            }
            partner_class[c1] = c2;
            partner_class[c2] = c1;
            matching.emplace_back(c1, c2);
        };
        for (auto [x, y] : fa.matching) note_pair(class_index[find(x)], class_index[find(y)]);
        for (auto [x, y] : fb.matching)
            note_pair(class_index[find(na + x)], class_index[find(na + y)]);
        // note_pair records each unordered pair once via the partner map.
        std::vector<std::pair<int, int>> unique_matching;
        for (auto [x, y] : matching)
            if (x < y) unique_matching.emplace_back(x, y);
            else unique_matching.emplace_back(y, x);
        std::sort(unique_matching.begin(), unique_matching.end());
        unique_matching.erase(std::unique(unique_matching.begin(), unique_matching.end()),
                              unique_matching.end());
        out.qubits.push_back(
            QubitFactorization::normalized(std::move(regions), std::move(unique_matching)));
    }
    {
        std::vector<Vertex> left(a.s), right(b.s);
        std::iota(left.begin(), left.end(), 0);
        std::iota(right.begin(), right.end(), a.s);
        out.qubits.push_back(QubitFactorization::normalized({left, right}, {{0, 1}}));
    }
    require_valid(out);
    if (!classify(out).is_upb()) throw Error("internal: combined graph failed verification");
    return out;
}

OneFactorization one_factorization(int n) {
    if (n < 2 || n % 2 != 0) throw OddOrder("1-factorization needs even order >= 2");
    OneFactorization fac;
    fac.n = n;
    // Circle method: vertex n-1 fixed, the rest rotate.
    for (int round = 0; round < n - 1; ++round) {
        std::vector<std::pair<int, int>> edges;
        edges.emplace_back(std::min(n - 1, round), std::max(n - 1, round));
        for (int i = 1; i <= n / 2 - 1; ++i) {
            int u = (round + i) % (n - 1);
            int v = (round - i + (n - 1)) % (n - 1);
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(edges.begin(), edges.end());
        fac.rounds.push_back(std::move(edges));
    }
    return fac;
}

OrthogonalityGraph split_qubit(const OrthogonalityGraph& g, int qubit) {
    require_valid(g);
    if (qubit < 0 || qubit >= g.p) throw BadArguments("split_qubit: qubit index out of range");
    const auto& f = g.qubits[qubit];
    std::vector<char> matched(f.regions.size(), 0);
    for (auto [x, y] : f.matching) matched[x] = matched[y] = 1;
    for (size_t r = 0; r < f.regions.size(); ++r) {
        if (!matched[r])
            throw NotSplittable("qubit " + std::to_string(qubit) + " has an unmatched region");
        if (f.regions[r].size() != 2)
            throw NotSplittable("qubit " + std::to_string(qubit) +
                                " has a component that is not K_{2,2}");
    }

    // Per block {x1,x2} x {y1,y2}: first new qubit pairs x1-y1 and x2-y2,
    // second pairs x1-y2 and x2-y1, so each old edge survives on exactly one.
    std::vector<std::vector<Vertex>> singletons;
    for (Vertex v = 0; v < g.s; ++v) singletons.push_back({v});
    std::vector<std::pair<int, int>> match1, match2;
    for (auto [x, y] : f.matching) {
        Vertex x1 = f.regions[x][0], x2 = f.regions[x][1];
        Vertex y1 = f.regions[y][0], y2 = f.regions[y][1];
        match1.emplace_back(x1, y1);
        match1.emplace_back(x2, y2);
        match2.emplace_back(x1, y2);
        match2.emplace_back(x2, y1);
    }
    OrthogonalityGraph out;
    out.p = g.p + 1;
    out.s = g.s;
    for (int q = 0; q < g.p; ++q) {
        if (q != qubit) {
            out.qubits.push_back(g.qubits[q]);
            continue;
        }
        out.qubits.push_back(QubitFactorization::normalized(singletons, match1));
        out.qubits.push_back(QubitFactorization::normalized(singletons, match2));
    }
    require_valid(out);
    return out;
}

namespace {

// s = 2p case: one qubit of s/2 matched singleton pairs; every other qubit
// groups the pairs into size-2 regions matched along one round of a
// 1-factorization of K_{s/2}.
OrthogonalityGraph build_pairs_wired(int p, int s) {
    int pairs = s / 2;
    OrthogonalityGraph g;
    g.p = p;
    g.s = s;
    {
        std::vector<std::vector<Vertex>> regions;
        std::vector<std::pair<int, int>> matching;
        for (int i = 0; i < pairs; ++i) {
            regions.push_back({2 * i});
            regions.push_back({2 * i + 1});
            matching.emplace_back(2 * i, 2 * i + 1);
        }
        g.qubits.push_back(QubitFactorization::normalized(std::move(regions), std::move(matching)));
    }
    auto fac = one_factorization(pairs);
    for (int q = 1; q < p; ++q) {
        std::vector<std::vector<Vertex>> regions;
        for (int i = 0; i < pairs; ++i) regions.push_back({2 * i, 2 * i + 1});
        std::vector<std::pair<int, int>> matching;
        for (auto [u, v] : fac.rounds[q - 1]) matching.emplace_back(u, v);
        g.qubits.push_back(QubitFactorization::normalized(std::move(regions), std::move(matching)));
    }
    return g;
}

}  // namespace

OrthogonalityGraph build_multiple_of_four(int p, long long s) {
    if (p < 1 || p > 20) throw BadArguments("supported qubit range is 1..20");
    long long full = 1ll << p;
    if (s % 4 != 0 || s < p + 1 || s > full)
        throw BadArguments("need a multiple of 4 with p+1 <= s <= 2^p");

    if (s <= 2 * p) {
        int p0 = static_cast<int>(s / 2);
        OrthogonalityGraph g = build_pairs_wired(p0, static_cast<int>(s));
        int splits = p - p0;
        // Splitting inserts the two replacement qubits in place, so the next
        // original paired qubit sits two positions further right each time.
        for (int i = 0; i < splits; ++i) g = split_qubit(g, 1 + 2 * i);
        if (!classify(g).is_upb()) throw Error("internal: wired construction failed verification");
        return g;
    }

    if (p % 4 == 1 && s == 2ll * p + 2) {
        if (p == 5) {
            auto block = graph_from_states(parse_basis(fixture("upb_4q_6").ket));
            return combine(block, block);
        }
        throw Unsupported("no known construction for p = 1 (mod 4), s = 2p+2 with p > 5");
    }

    // s >= 2p+4 (or 2p+2 handled above): stack two smaller blocks.
    long long half_cap = 1ll << (p - 1);
    for (long long s1 = ((p + 3) / 4) * 4; s1 * 2 <= s; s1 += 4) {
        long long s2 = s - s1;
        if (s1 < p || s2 < p || s1 > half_cap || s2 > half_cap) continue;
        try {
            auto g1 = build_multiple_of_four(p - 1, s1);
            auto g2 = (s1 == s2) ? g1 : build_multiple_of_four(p - 1, s2);
            return combine(g1, g2);
        } catch (const Unsupported&) {
            continue;
        }
    }
    throw Unsupported("no stacking route for p=" + std::to_string(p) + ", s=" + std::to_string(s));
}

std::string to_string(NonexistenceRule rule) {
    switch (rule) {
        case NonexistenceRule::none: return "none";
        case NonexistenceRule::too_small_trivial: return "TooSmallTrivial";
        case NonexistenceRule::below_minimum: return "BelowMinimum";
        case NonexistenceRule::odd_p_plus_2: return "OddPPlus2";
        case NonexistenceRule::near_maximal: return "NearMaximal";
    }
    return "?";
}

NonexistenceRule known_nonexistence(int p, long long s) {
    if (p < 1 || p > 62) throw BadArguments("qubit count out of supported range");
    long long full = 1ll << p;
    if (s < 1 || s > full) throw BadArguments("size out of range [1, 2^p]");
    if (s < p + 1) return NonexistenceRule::too_small_trivial;
    if (s < min_size(p)) return NonexistenceRule::below_minimum;
    if (p % 2 == 1 && s == p + 2) return NonexistenceRule::odd_p_plus_2;
    if (s > full - 4 && s < full) return NonexistenceRule::near_maximal;
    return NonexistenceRule::none;
}

void IntervalSet::add(long long lo, long long hi) {
    if (lo > hi) return;
    std::vector<std::pair<long long, long long>> next;
    bool placed = false;
    for (auto [a, b] : items_) {
        if (b + 1 < lo) {
            next.emplace_back(a, b);
        } else if (hi + 1 < a) {
            if (!placed) {
                next.emplace_back(lo, hi);
                placed = true;
            }
            next.emplace_back(a, b);
        } else {
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    if (!placed) next.emplace_back(lo, hi);
    std::sort(next.begin(), next.end());
    items_ = std::move(next);
}

void IntervalSet::add(const IntervalSet& other) {
    for (auto [lo, hi] : other.items_) add(lo, hi);
}

bool IntervalSet::contains(long long v) const {
    for (auto [a, b] : items_)
        if (a <= v && v <= b) return true;
    return false;
}

long long IntervalSet::count() const {
    long long n = 0;
    for (auto [a, b] : items_) n += b - a + 1;
    return n;
}

IntervalSet IntervalSet::sumset(const IntervalSet& other) const {
    IntervalSet out;
    for (auto [a1, b1] : items_)
        for (auto [a2, b2] : other.items_) out.add(a1 + a2, b1 + b2);
    return out;
}

IntervalSet IntervalSet::complement_within(long long lo, long long hi) const {
    IntervalSet out;
    long long cursor = lo;
    for (auto [a, b] : items_) {
        if (b < lo || a > hi) continue;
        if (std::max(a, lo) > cursor) out.add(cursor, std::max(a, lo) - 1);
        cursor = std::max(cursor, b + 1);
    }
    if (cursor <= hi) out.add(cursor, hi);
    return out;
}

IntervalSet IntervalSet::intersect(long long lo, long long hi) const {
    IntervalSet out;
    for (auto [a, b] : items_) {
        long long x = std::max(a, lo), y = std::min(b, hi);
        if (x <= y) out.add(x, y);
    }
    return out;
}

std::string IntervalSet::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < items_.size(); ++i) {
        if (i) out << ",";
        if (items_[i].first == items_[i].second) out << items_[i].first;
        else out << items_[i].first << "-" << items_[i].second;
    }
    return out.str();
}

std::string SizeCatalog::provenance_of(long long s) const {
    for (const auto& [set, tag] : attainable_sources)
        if (set.contains(s)) return tag;
    for (const auto& [set, tag] : impossible_sources)
        if (set.contains(s)) return tag;
    return {};
}

namespace {

IntervalSet claimed_sizes(int p, ClaimStatus status) {
    IntervalSet out;
    for (const auto& c : size_claims())
        if (c.p == p && c.status == status) out.add(c.s);
    return out;
}

IntervalSet four_multiples(int k) {
    IntervalSet out;
    long long full = 1ll << k;
    for (long long s = ((k + 4) / 4) * 4; s <= full; s += 4) {
        if (s < k + 1) continue;
        if (k % 4 == 1 && s == 2ll * k + 2) continue;  // open case of the family
        out.add(s);
    }
    return out;
}

}  // namespace

SizeCatalog attainable_sizes(int p) {
    if (p < 1 || p > 16) throw BadArguments("size catalog supported for 1 <= p <= 16");

    std::vector<IntervalSet> attain(p + 1);
    attain[1].add(2);
    for (int k = 2; k <= p; ++k) {
        attain[k].add(attain[k - 1].sumset(attain[k - 1]));  // stacking closure
        attain[k].add(1ll << k);                             // standard basis
        attain[k].add(min_size(k));                          // minimal UPB
        attain[k].add(four_multiples(k));
        attain[k].add(claimed_sizes(k, ClaimStatus::exists));
    }

    SizeCatalog cat;
    cat.p = p;
    long long full = 1ll << p;

    {
        IntervalSet standard;
        standard.add(full);
        cat.attainable_sources.emplace_back(standard, "standard-basis");
        IntervalSet minimal;
        minimal.add(min_size(p));
        cat.attainable_sources.emplace_back(minimal, "minimum-size");
        cat.attainable_sources.emplace_back(four_multiples(p), "multiple-of-four");
        if (p >= 2)
            cat.attainable_sources.emplace_back(attain[p - 1].sumset(attain[p - 1]), "stacking");
        cat.attainable_sources.emplace_back(claimed_sizes(p, ClaimStatus::exists), "published");
    }
    cat.attainable = attain[p];

    {
        IntervalSet small;
        small.add(1, std::min<long long>(p, full));
        cat.impossible_sources.emplace_back(small.intersect(1, full), "too-small");
        IntervalSet below;
        below.add(p + 1, static_cast<long long>(min_size(p)) - 1);
        cat.impossible_sources.emplace_back(below.intersect(1, full), "below-minimum");
        if (p % 2 == 1 && p + 2 <= full) {
            IntervalSet odd;
            odd.add(p + 2);
            cat.impossible_sources.emplace_back(odd, "odd-p-plus-2");
        }
        IntervalSet near;
        near.add(full - 3, full - 1);
        cat.impossible_sources.emplace_back(near.intersect(1, full), "near-maximal");
        cat.impossible_sources.emplace_back(claimed_sizes(p, ClaimStatus::impossible), "published");
    }
    for (const auto& [set, tag] : cat.impossible_sources) cat.impossible.add(set);

    for (auto [a, b] : cat.impossible.intervals())
        for (long long s = a; s <= b; ++s)
            if (cat.attainable.contains(s))
                throw Error("size catalog contradiction at p=" + std::to_string(p) +
                            ", s=" + std::to_string(s));

    IntervalSet covered = cat.attainable;
    covered.add(cat.impossible);
    cat.unknown = covered.complement_within(1, full);

    const auto& at = cat.attainable.intervals();
    if (!at.empty()) {
        long long lo = at.front().first, hi = at.back().second;
        for (size_t i = 0; i + 1 < at.size(); ++i)
            cat.possible_gap = std::max(cat.possible_gap, at[i + 1].first - at[i].second - 1);
        for (auto [a, b] : cat.impossible.intersect(lo + 1, hi - 1).intervals())
            cat.proven_gap = std::max(cat.proven_gap, b - a + 1);
    }
    return cat;
}

std::pair<long long, long long> bound_comparison(int p) {
    if (p < 7) throw BadArguments("bound comparison defined for p >= 7");
    long long sum_f = 0;
    for (int k = 4; k < p; ++k) sum_f += min_size(k);
    long long closed = (static_cast<long long>(p) * p + 3ll * p - 30) / 2;
    if (!(sum_f <= closed && closed <= sum_f + 2))
        throw Error("bound comparison sandwich violated at p=" + std::to_string(p));
    return {sum_f, closed};
}

}  // namespace upb
