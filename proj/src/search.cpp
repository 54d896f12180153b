#include "upb/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "upb/checker.hpp"
#include "upb/construct.hpp"
#include "upb/fixtures.hpp"
#include "upb/notation.hpp"

namespace upb {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::bootstrap: return "bootstrap";
        case Provenance::computed: return "computed";
        case Provenance::constructed: return "constructed";
        case Provenance::paper_claim: return "paper-claim";
    }
    return "?";
}

bool FeasibleSizes::proven_infeasible(long long s, std::string* reason) const {
    auto explain = [&](std::string text) {
        if (reason) *reason = std::move(text);
        return true;
    };
    if (s < 1 || s > (1ll << p)) return explain("outside [1, 2^p]");
    if (p <= 2) {
        if (s != (1ll << p)) return explain("complete characterization below three qubits");
        return false;
    }
    auto rule = known_nonexistence(p, s);
    if (rule != NonexistenceRule::none) return explain(to_string(rule));
    if (searched_empty.count(s)) return explain("search completed empty");
    return false;
}

namespace {

// Sizes of corpus bases verified to classify as UPBs, grouped by qubit count.
const std::map<int, std::set<long long>>& verified_fixture_sizes() {
    static const std::map<int, std::set<long long>> cache = [] {
        std::map<int, std::set<long long>> out;
        for (const auto& f : fixture_corpus()) {
            auto g = graph_from_states(parse_basis(f.ket));
            if (classify(g).is_upb()) out[f.p].insert(f.s);
        }
        return out;
    }();
    return cache;
}

}  // namespace

FeasibleSizes feasible_sizes(int p) {
    if (p < 1) throw BadArguments("qubit count must be positive");
    FeasibleSizes fs;
    fs.p = p;
    if (p <= 2) {
        fs.known.emplace(1ll << p, Provenance::bootstrap);
        return fs;
    }
    auto it = verified_fixture_sizes().find(p);
    if (it != verified_fixture_sizes().end())
        for (long long s : it->second) fs.known.emplace(s, Provenance::computed);
    fs.known.emplace(1ll << p, Provenance::constructed);  // standard basis
    if (p == 3) fs.known.emplace(4, Provenance::constructed);
    if (p <= 20) {
        for (long long s = ((p + 4) / 4) * 4; s <= 2ll * p; s += 4)
            if (s >= p + 1) fs.known.emplace(s, Provenance::constructed);
        if (p == 5) fs.known.emplace(12, Provenance::constructed);
    }
    for (const auto& c : size_claims())
        if (c.p == p && c.status == ClaimStatus::exists)
            fs.known.emplace(c.s, Provenance::paper_claim);
    return fs;
}

std::string ProfileConstraints::describe() const {
    std::ostringstream out;
    out << "sum-rule, side-cap<=s-p, edges>=s(s-1)/2";
    if (use_lemma_a1) out << ", single-component-sides";
    if (use_lemma_a2) out << ", cover-chain";
    if (use_odd_pair_rule) out << ", odd-pair";
    out << (allow_unmatched_regions ? ", unmatched-regions" : ", two-sided-only");
    return out.str();
}

namespace {

using Pair = std::pair<int, int>;
using QubitShapes = std::vector<Pair>;  // descending (a, b)

long long edge_count(const QubitShapes& q) {
    long long e = 0;
    for (auto [a, b] : q) e += static_cast<long long>(a) * b;
    return e;
}

// All multisets of side pairs (a >= b >= bmin, a <= amax) summing to s,
// pairs listed in descending order.
std::vector<QubitShapes> qubit_shape_lists(int s, int amax, bool allow_unmatched) {
    std::vector<QubitShapes> out;
    QubitShapes cur;
    int bmin = allow_unmatched ? 0 : 1;
    auto rec = [&](auto&& self, int remaining, Pair bound) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int a = std::min({bound.first, amax, remaining}); a >= 1; --a) {
            int btop = std::min(a, remaining - a);
            if (a == bound.first) btop = std::min(btop, bound.second);
            for (int b = btop; b >= bmin; --b) {
                cur.emplace_back(a, b);
                self(self, remaining - a - b, {a, b});
                cur.pop_back();
            }
        }
    };
    rec(rec, s, {amax, amax});
    return out;
}

int chain_step(const std::vector<int>& sides, long long budget) {
    // Least achievable maximum side remainder after placing `budget` covered
    // states: smallest m with sum(max(side - m, 0)) <= budget.
    int top = 0;
    for (int v : sides) top = std::max(top, v);
    for (int m = 0; m <= top; ++m) {
        long long req = 0;
        for (int v : sides) req += std::max(v - m, 0);
        if (req <= budget) return m;
    }
    return 0;
}

}  // namespace

PruneDecision prune_reverse_combine(const SizeProfile& pr, const FeasibleSizes& below) {
    if (pr.p < 2) return {};
    for (size_t q = 0; q < pr.qubits.size(); ++q) {
        if (pr.qubits[q].size() != 1) continue;
        auto [a, b] = pr.qubits[q][0];
        if (b < 1) continue;
        std::string why;
        if (below.proven_infeasible(a, &why))
            return {true, "single-component-sides",
                    "qubit " + std::to_string(q) + ": no " + std::to_string(pr.p - 1) +
                        "-qubit UPB of size " + std::to_string(a) + " (" + why + ")"};
        if (below.proven_infeasible(b, &why))
            return {true, "single-component-sides",
                    "qubit " + std::to_string(q) + ": no " + std::to_string(pr.p - 1) +
                        "-qubit UPB of size " + std::to_string(b) + " (" + why + ")"};
    }
    return {};
}

PruneDecision prune_search_reduce(const SizeProfile& pr) {
    int p = pr.p;
    std::vector<std::vector<int>> sides(p);
    for (int q = 0; q < p; ++q)
        for (auto [a, b] : pr.qubits[q]) {
            sides[q].push_back(a);
            if (b >= 1) sides[q].push_back(b);
        }

    std::vector<std::vector<int>> orders;
    if (p <= 7) {
        std::vector<int> perm(p);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            orders.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        // Heuristic single order: largest sides first.
        std::vector<int> perm(p);
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](int x, int y) {
            return *std::max_element(sides[x].begin(), sides[x].end()) >
                   *std::max_element(sides[y].begin(), sides[y].end());
        });
        orders.push_back(perm);
    }

    for (const auto& order : orders) {
        std::set<int> starts(sides[order[0]].begin(), sides[order[0]].end());
        for (int t1 : starts) {
            long long total = t1;
            std::vector<int> ts{t1};
            for (int k = 1; k < p; ++k) {
                int t = chain_step(sides[order[k]], total);
                ts.push_back(t);
                total += t;
            }
            if (total > pr.s - 1) {
                std::ostringstream detail;
                detail << "order=[";
                for (size_t i = 0; i < order.size(); ++i)
                    detail << (i ? "," : "") << order[i];
                detail << "] t=[";
                for (size_t i = 0; i < ts.size(); ++i) detail << (i ? "," : "") << ts[i];
                detail << "] total=" << total;
                return {true, "cover-chain", detail.str()};
            }
        }
    }
    return {};
}

std::vector<SizeProfile> enumerate_profiles(const ProfileConstraints& c, EnumerationStats* stats) {
    if (c.p < 1 || c.s < 1) throw BadArguments("profile enumeration needs p >= 1, s >= 1");
    EnumerationStats local;
    auto& st = stats ? *stats : local;
    st = {};

    int amax = c.s - c.p;
    std::vector<QubitShapes> shapes =
        amax >= 1 ? qubit_shape_lists(c.s, amax, c.allow_unmatched_regions)
                  : std::vector<QubitShapes>{};
    std::vector<long long> edges(shapes.size());
    std::vector<int> idx(shapes.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (size_t i = 0; i < shapes.size(); ++i) edges[i] = edge_count(shapes[i]);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (edges[i] != edges[j]) return edges[i] > edges[j];
        return shapes[i] > shapes[j];
    });

    long long need = static_cast<long long>(c.s) * (c.s - 1) / 2;
    FeasibleSizes below = c.p >= 2 ? feasible_sizes(c.p - 1) : FeasibleSizes{};

    std::vector<SizeProfile> kept;
    std::vector<int> combo;
    auto consider = [&](const std::vector<int>& chosen) {
        ++st.candidates;
        SizeProfile pr;
        pr.p = c.p;
        pr.s = c.s;
        for (int i : chosen) pr.qubits.push_back(shapes[idx[i]]);
        pr = pr.normalized();
        if (c.use_lemma_a1 && prune_reverse_combine(pr, below).pruned) {
            ++st.pruned_single_component;
            return;
        }
        if (c.use_lemma_a2 && prune_search_reduce(pr).pruned) {
            ++st.pruned_cover_chain;
            return;
        }
        if (c.use_odd_pair_rule && c.s % 2 == 1) {
            bool bad = false;
            for (const auto& q : pr.qubits) {
                int maxside = 0;
                for (auto [a, b] : q) maxside = std::max(maxside, a);
                if (maxside <= 1) bad = true;
            }
            if (bad) {
                ++st.pruned_odd_rule;
                return;
            }
        }
        ++st.kept;
        {
            // Count qubit orderings of this multiset.
            long long perms = 1;
            for (int i = 2; i <= c.p; ++i) perms *= i;
            int run = 1;
            for (size_t i = 1; i <= chosen.size(); ++i) {
                if (i < chosen.size() && chosen[i] == chosen[i - 1]) {
                    ++run;
                } else {
                    for (int f = 2; f <= run; ++f) perms /= f;
                    run = 1;
                }
            }
            st.kept_ordered += perms;
        }
        kept.push_back(std::move(pr));
    };

    auto rec = [&](auto&& self, int depth, int from, long long cur_e) -> void {
        if (depth == c.p) {
            if (cur_e >= need) consider(combo);
            return;
        }
        for (int i = from; i < static_cast<int>(idx.size()); ++i) {
            long long best = cur_e + static_cast<long long>(c.p - depth) * edges[idx[i]];
            if (best < need) break;  // later shapes only have fewer edges
            combo.push_back(i);
            self(self, depth + 1, i, cur_e + edges[idx[i]]);
            combo.pop_back();
        }
    };
    rec(rec, 0, 0, 0);

    std::sort(kept.begin(), kept.end(),
              [](const SizeProfile& x, const SizeProfile& y) { return x.to_string() < y.to_string(); });
    return kept;
}

// ---------------------------------------------------------------------------
// Placement search

namespace {

using Mask = std::uint32_t;

constexpr int kMaxStates = 32;

struct PlacedComp {
    Mask side_a = 0;
    Mask side_b = 0;  // zero for an unmatched region
};

class PlacementSearch {
public:
    PlacementSearch(const SizeProfile& pr, std::vector<OrthogonalityGraph>& out)
        : s_(pr.s), p_(pr.p), out_(out) {
        if (s_ > kMaxStates) throw BadArguments("placement search supports s <= 32");
        full_ = s_ == 32 ? ~Mask{0} : ((Mask{1} << s_) - 1);

        // Fatter enumerations first; the first qubit is pinned canonically,
        // so the fattest one costs nothing. Equal shape lists end up adjacent
        // and get chained by the ordering constraint below.
        std::vector<int> order(p_);
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> weight(p_);
        for (int q = 0; q < p_; ++q) weight[q] = enumeration_weight(pr.qubits[q]);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            if (weight[x] != weight[y]) return weight[x] > weight[y];
            return pr.qubits[x] > pr.qubits[y];
        });
        for (int q : order) shapes_.push_back(pr.qubits[q]);

        suffix_e_.assign(p_ + 1, 0);
        suffix_maxdeg_.assign(p_ + 1, 0);
        chained_.assign(p_, 0);
        for (int q = p_ - 1; q >= 0; --q) {
            suffix_e_[q] = suffix_e_[q + 1] + edge_count(shapes_[q]);
            int maxdeg = 0;
            for (auto [a, b] : shapes_[q]) maxdeg = std::max(maxdeg, a);
            suffix_maxdeg_[q] = suffix_maxdeg_[q + 1] + maxdeg;
        }
        // Qubit 1 is enumerated up to the first qubit's stabilizer, which is
        // incompatible with ordering it against qubit 2; chains start at 3.
        for (int q = 3; q < p_; ++q) chained_[q] = shapes_[q] == shapes_[q - 1];

        st_.resize(p_);
        remaining_.resize(p_);
        for (int q = 0; q < p_; ++q) {
            for (auto [a, b] : shapes_[q]) {
                bool seen = false;
                for (auto& d : remaining_[q])
                    if (d.a == a && d.b == b) {
                        ++d.count;
                        seen = true;
                    }
                if (!seen) remaining_[q].push_back({a, b, 1});
            }
        }

        missing_count_ = static_cast<long long>(s_) * (s_ - 1) / 2;
        for (int v = 0; v < s_; ++v) missing_[v] = full_ & ~(Mask{1} << v);
    }

    void run() {
        int off = 0;
        for (auto [a, b] : shapes_[0]) {
            PlacedComp comp;
            for (int i = 0; i < a; ++i) comp.side_a |= Mask{1} << (off + i);
            for (int i = 0; i < b; ++i) comp.side_b |= Mask{1} << (off + a + i);
            blocks_.push_back({off, a});
            if (b) blocks_.push_back({off + a, b});
            off += a + b;
            place_comp(0, comp);
        }
        if (missing_count_ > suffix_e_[1]) return;
        if (cover_exists(1)) return;
        if (p_ == 1) {
            finalize();
        } else {
            enumerate_qubit1();
        }
    }

private:
    struct DistinctShape {
        int a, b, count;
    };

    struct QubitState {
        PlacedComp comps[kMaxStates / 2];
        int ncomps = 0;
        Mask regions[kMaxStates];
        int nregions = 0;
    };

    struct Block {
        int offset, size;
    };

    int s_, p_;
    Mask full_ = 0;
    std::vector<QubitShapes> shapes_;
    std::vector<long long> suffix_e_;
    std::vector<int> suffix_maxdeg_;
    std::vector<char> chained_;
    std::array<Mask, kMaxStates> missing_{};
    long long missing_count_ = 0;
    std::vector<QubitState> st_;
    std::vector<std::vector<DistinctShape>> remaining_;
    std::vector<Block> blocks_;
    std::vector<OrthogonalityGraph>& out_;

    static double enumeration_weight(const QubitShapes& q) {
        int total = 0;
        for (auto [a, b] : q) total += a + b;
        double lg = std::lgamma(total + 1.0);
        for (auto [a, b] : q) {
            lg -= std::lgamma(a + 1.0) + std::lgamma(b + 1.0);
            if (a == b && b > 0) lg -= std::log(2.0);
        }
        std::map<Pair, int> mult;
        for (auto pr : q) ++mult[pr];
        for (auto& [pr, m] : mult) lg -= std::lgamma(m + 1.0);
        return lg;
    }

    void place_comp(int q, const PlacedComp& comp) {
        auto& st = st_[q];
        st.comps[st.ncomps++] = comp;
        st.regions[st.nregions++] = comp.side_a;
        if (comp.side_b) st.regions[st.nregions++] = comp.side_b;
        for (Mask m = comp.side_a; m; m &= m - 1) {
            int v = std::countr_zero(m);
            missing_count_ -= std::popcount(missing_[v] & comp.side_b);
            missing_[v] &= ~comp.side_b;
        }
        for (Mask m = comp.side_b; m; m &= m - 1) missing_[std::countr_zero(m)] &= ~comp.side_a;
    }

    void unplace_comp(int q, const PlacedComp& comp, const std::array<Mask, kMaxStates>& saved,
                      long long saved_count) {
        auto& st = st_[q];
        --st.ncomps;
        st.nregions -= comp.side_b ? 2 : 1;
        missing_ = saved;
        missing_count_ = saved_count;
    }

    long long qubit_rest_capacity(int q) const {
        long long e = 0;
        for (const auto& d : remaining_[q]) e += static_cast<long long>(d.a) * d.b * d.count;
        return e;
    }

    bool cover_exists(int assigned) const {
        int maxreg[kMaxStates + 1];
        maxreg[assigned] = 0;
        for (int q = assigned - 1; q >= 0; --q) {
            int m = 0;
            for (int r = 0; r < st_[q].nregions; ++r)
                m = std::max(m, std::popcount(st_[q].regions[r]));
            maxreg[q] = maxreg[q + 1] + m;
        }
        auto rec = [&](auto&& self, int q, Mask covered) -> bool {
            if (covered == full_) return true;
            if (q == assigned) return false;
            if (std::popcount(covered) + maxreg[q] < s_) return false;
            for (int r = 0; r < st_[q].nregions; ++r) {
                Mask reg = st_[q].regions[r];
                if ((reg & ~covered) && self(self, q + 1, covered | reg)) return true;
            }
            return self(self, q + 1, covered);
        };
        return rec(rec, 0, 0);
    }

    void fill_qubit(int q, Mask free, bool lex_eq, long long deferred) {
        if (free == 0) {
            // lex_eq at completion means the two chained placements are
            // identical, which is allowed.
            if (cover_exists(q + 1)) return;  // extendible whatever follows
            if (q + 1 == p_) {
                finalize();
            } else {
                fill_qubit(q + 1, full_, chained_[q + 1], 0);
            }
            return;
        }
        int anchor = std::countr_zero(free);
        for (auto& d : remaining_[q]) {
            if (d.count == 0) continue;
            try_component(q, free, anchor, d, d.a, d.b, lex_eq, deferred);
            if (d.a != d.b && d.b >= 1)
                try_component(q, free, anchor, d, d.b, d.a, lex_eq, deferred);
        }
    }

    void try_component(int q, Mask free, int anchor, DistinctShape& d, int sa, int sb,
                       bool lex_eq, long long deferred) {
        const bool last = (q + 1 == p_);
        const Mask placedk = full_ & ~free;
        const long long later_cap = suffix_e_[q + 1];
        Mask pool = free & ~(Mask{1} << anchor);
        int pool_bits[kMaxStates];
        int npool = 0;
        for (Mask m = pool; m; m &= m - 1) pool_bits[npool++] = std::countr_zero(m);

        int opt_bits[kMaxStates];
        int pick[kMaxStates];

        auto choose_side2 = [&](Mask side1, long long stranded1) {
            if (sb == 0) {
                commit(q, free, d, {side1, 0}, lex_eq, deferred);
                return;
            }
            Mask rest = free & ~side1;
            Mask required = 0;
            if (last) {
                for (Mask m = side1; m; m &= m - 1) required |= missing_[std::countr_zero(m)];
                if (required & ~rest) return;  // partner off-limits
                if (std::popcount(required) > sb) return;
                for (Mask m = required; m; m &= m - 1)
                    if (missing_[std::countr_zero(m)] & ~side1) return;  // owes elsewhere
            }
            int nopt = 0;
            for (Mask m = rest & ~required; m; m &= m - 1) {
                int v = std::countr_zero(m);
                if (last && (missing_[v] & ~side1)) continue;  // cannot sit opposite
                opt_bits[nopt++] = v;
            }
            int need = sb - std::popcount(required);
            if (need < 0 || need > nopt) return;
            int npick = 0;
            auto rec = [&](auto&& self, int from, int want, Mask acc2, long long stranded) -> void {
                if (want == 0) {
                    commit(q, free, d, {side1, acc2}, lex_eq, deferred);
                    return;
                }
                for (int i = from; i + want <= nopt; ++i) {
                    int v = opt_bits[i];
                    long long extra = std::popcount(missing_[v] & acc2) +
                                      std::popcount(missing_[v] & placedk);
                    if (deferred + stranded + extra > later_cap) continue;
                    pick[npick++] = v;
                    self(self, i + 1, want - 1, acc2 | (Mask{1} << v), stranded + extra);
                    --npick;
                }
            };
            rec(rec, 0, need, required, stranded1);
        };

        long long anchor_stranded = std::popcount(missing_[anchor] & placedk);
        if (deferred + anchor_stranded > later_cap) return;
        auto rec1 = [&](auto&& self, int from, int need, Mask acc, long long stranded) -> void {
            if (need == 0) {
                choose_side2(acc, stranded);
                return;
            }
            for (int i = from; i + need <= npool; ++i) {
                int v = pool_bits[i];
                if (last && (missing_[v] & acc)) continue;  // missing pair inside a side
                long long extra =
                    std::popcount(missing_[v] & acc) + std::popcount(missing_[v] & placedk);
                if (deferred + stranded + extra > later_cap) continue;
                self(self, i + 1, need - 1, acc | (Mask{1} << v), stranded + extra);
            }
        };
        rec1(rec1, 0, sa - 1, Mask{1} << anchor, anchor_stranded);
    }

    // Structural check, place, and viability bounds for one component.
    // On a false return nothing is placed.
    bool place_checked(int q, Mask free, const PlacedComp& comp, long long deferred,
                       long long& dead_out, std::array<Mask, kMaxStates>& saved_missing,
                       long long& saved_count) {
        const bool last = (q + 1 == p_);
        const Mask placedk = full_ & ~free;
        if (last) {
            // Every missing pair touching this component must be realized by
            // it; pairs reaching already-placed parts of this qubit are dead.
            for (Mask m = comp.side_a; m; m &= m - 1) {
                int v = std::countr_zero(m);
                if (missing_[v] & ~comp.side_b & (placedk | comp.side_a)) return false;
            }
            for (Mask m = comp.side_b; m; m &= m - 1) {
                int v = std::countr_zero(m);
                if (missing_[v] & ~comp.side_a & (placedk | comp.side_b)) return false;
            }
        }

        saved_missing = missing_;
        saved_count = missing_count_;
        place_comp(q, comp);

        // Pairs stranded by this component (same side, or reaching an earlier
        // component of this qubit) must fit in the later qubits' capacity;
        // each member's leftover degree must fit in later qubits' best
        // per-vertex degree.
        long long dead = deferred;
        bool viable = true;
        {
            long long within_a = 0, within_b = 0;
            int cap = suffix_maxdeg_[q + 1];
            for (Mask m = comp.side_a; m && viable; m &= m - 1) {
                int v = std::countr_zero(m);
                Mask mv = missing_[v];
                if (std::popcount(mv) > cap) viable = false;
                dead += std::popcount(mv & placedk);
                within_a += std::popcount(mv & comp.side_a);
            }
            for (Mask m = comp.side_b; m && viable; m &= m - 1) {
                int v = std::countr_zero(m);
                Mask mv = missing_[v];
                if (std::popcount(mv) > cap) viable = false;
                dead += std::popcount(mv & placedk);
                within_b += std::popcount(mv & comp.side_b);
            }
            dead += within_a / 2 + within_b / 2;
        }
        if (viable && dead > suffix_e_[q + 1]) viable = false;
        if (viable && missing_count_ > qubit_rest_capacity(q) + suffix_e_[q + 1]) viable = false;
        if (!viable) {
            unplace_comp(q, comp, saved_missing, saved_count);
            return false;
        }
        dead_out = dead;
        return true;
    }

    void commit(int q, Mask free, DistinctShape& d, PlacedComp comp, bool lex_eq,
                long long deferred) {
        bool child_eq = false;
        if (lex_eq) {
            // Chained equal-shape qubits are explored in nondecreasing
            // component-sequence order only.
            const auto& prev = st_[q - 1].comps[st_[q].ncomps];
            if (comp.side_a != prev.side_a) {
                if (comp.side_a < prev.side_a) return;
            } else if (comp.side_b != prev.side_b) {
                if (comp.side_b < prev.side_b) return;
            } else {
                child_eq = true;
            }
        }

        std::array<Mask, kMaxStates> saved_missing;
        long long saved_count = 0, dead = 0;
        if (!place_checked(q, free, comp, deferred, dead, saved_missing, saved_count)) return;
        --d.count;
        fill_qubit(q, free & ~(comp.side_a | comp.side_b), child_eq, dead);
        ++d.count;
        unplace_comp(q, comp, saved_missing, saved_count);
    }

    // Qubit 1 runs up to the stabilizer of the pinned first qubit: a
    // component is described by how many vertices each side draws from each
    // first-qubit block, and each such matrix is instantiated once (blocks
    // consumed front-to-back). Equal components are kept in nonincreasing
    // matrix order, and sides of a square component are oriented.
    void enumerate_qubit1() {
        int nb = static_cast<int>(blocks_.size());
        std::vector<int> caps(nb);
        for (int i = 0; i < nb; ++i) caps[i] = blocks_[i].size;
        std::vector<std::vector<int>> key_stack;
        q1_component(caps, -1, key_stack, 0);
    }

    void q1_component(std::vector<int>& caps, int prev_shape, std::vector<std::vector<int>>& keys,
                      long long deferred) {
        auto& rem = remaining_[1];
        int di = 0;
        while (di < static_cast<int>(rem.size()) && rem[di].count == 0) ++di;
        if (di == static_cast<int>(rem.size())) {
            if (cover_exists(2)) return;
            if (p_ == 2) {
                finalize();
            } else {
                fill_qubit(2, full_, false, 0);
            }
            return;
        }
        int nb = static_cast<int>(blocks_.size());
        const int a = rem[di].a, b = rem[di].b;
        std::vector<int> alpha(nb), beta(nb);

        auto instantiate = [&]() {
            // Side A takes the next alpha[i] slots of each block, side B the
            // beta[i] after them.
            std::vector<int> key(alpha);
            key.insert(key.end(), beta.begin(), beta.end());
            if (di == prev_shape && key > keys.back()) return;  // keep nonincreasing
            if (a == b) {
                bool swap_less = false;
                for (int i = 0; i < nb; ++i) {
                    if (alpha[i] != beta[i]) {
                        swap_less = alpha[i] < beta[i];
                        break;
                    }
                }
                if (swap_less) return;  // orient the square component
            }
            PlacedComp comp;
            for (int i = 0; i < nb; ++i) {
                int cursor = blocks_[i].offset + blocks_[i].size - caps[i];
                for (int k = 0; k < alpha[i]; ++k) comp.side_a |= Mask{1} << (cursor + k);
                for (int k = 0; k < beta[i]; ++k) comp.side_b |= Mask{1} << (cursor + alpha[i] + k);
            }
            Mask free = 0;
            for (int i = 0; i < nb; ++i) {
                int cursor = blocks_[i].offset + blocks_[i].size - caps[i];
                for (int k = 0; k < caps[i]; ++k) free |= Mask{1} << (cursor + k);
            }
            std::array<Mask, kMaxStates> saved_missing;
            long long saved_count = 0, dead = 0;
            if (!place_checked(1, free, comp, deferred, dead, saved_missing, saved_count)) return;
            --rem[di].count;
            for (int i = 0; i < nb; ++i) caps[i] -= alpha[i] + beta[i];
            keys.push_back(std::move(key));
            q1_component(caps, di, keys, dead);
            keys.pop_back();
            for (int i = 0; i < nb; ++i) caps[i] += alpha[i] + beta[i];
            ++rem[di].count;
            unplace_comp(1, comp, saved_missing, saved_count);
        };

        auto pick_beta = [&](auto&& self, int i, int left) -> void {
            if (i == nb) {
                if (left == 0) instantiate();
                return;
            }
            int top = std::min(left, caps[i] - alpha[i]);
            for (int x = top; x >= 0; --x) {
                beta[i] = x;
                self(self, i + 1, left - x);
            }
            beta[i] = 0;
        };
        auto pick_alpha = [&](auto&& self, int i, int left) -> void {
            if (i == nb) {
                if (left == 0) pick_beta(pick_beta, 0, b);
                return;
            }
            int top = std::min(left, caps[i]);
            for (int x = top; x >= 0; --x) {
                alpha[i] = x;
                self(self, i + 1, left - x);
            }
            alpha[i] = 0;
        };
        pick_alpha(pick_alpha, 0, a);
    }

    static std::vector<int> bits(Mask m) {
        std::vector<int> out;
        while (m) {
            out.push_back(std::countr_zero(m));
            m &= m - 1;
        }
        return out;
    }

    void finalize() {
        if (missing_count_ != 0) return;
        OrthogonalityGraph g;
        g.p = p_;
        g.s = s_;
        for (int q = 0; q < p_; ++q) {
            std::vector<std::vector<Vertex>> regions;
            std::vector<std::pair<int, int>> matching;
            for (int j = 0; j < st_[q].ncomps; ++j) {
                const auto& comp = st_[q].comps[j];
                int ia = static_cast<int>(regions.size());
                regions.push_back(bits(comp.side_a));
                if (comp.side_b) {
                    regions.push_back(bits(comp.side_b));
                    matching.emplace_back(ia, ia + 1);
                }
            }
            g.qubits.push_back(
                QubitFactorization::normalized(std::move(regions), std::move(matching)));
        }
        if (!classify(g).is_upb())
            throw Error("internal: placement passed cover check but failed classify");
        out_.push_back(std::move(g));
    }
};

}  // namespace

std::vector<OrthogonalityGraph> search_profile(const SizeProfile& pr) {
    std::vector<OrthogonalityGraph> out;
    long long total = 0;
    for (const auto& q : pr.qubits) {
        long long sum = 0;
        for (auto [a, b] : q) sum += a + b;
        if (total == 0) total = sum;
        if (sum != total || sum != pr.s)
            throw BadArguments("profile sides do not sum to s on every qubit");
    }
    if (static_cast<int>(pr.qubits.size()) != pr.p)
        throw BadArguments("profile qubit count disagrees with p");
    PlacementSearch search(pr, out);
    search.run();
    return out;
}

// ---------------------------------------------------------------------------
// Full pipeline

namespace {

std::string json_escape(const std::string& text) { return nlohmann::json(text).dump(); }

struct UnitLog {
    std::string path;
    std::map<std::string, std::vector<OrthogonalityGraph>> cached;  // by profile hash

    void load(const ProfileConstraints& c) {
        cached.clear();
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) return;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto doc = nlohmann::json::parse(line);
            if (first) {
                first = false;
                if (doc.value("format", "") != "upb-search-log")
                    throw Error("resume log has unexpected format");
                if (doc.value("p", -1) != c.p || doc.value("s", -1) != c.s ||
                    doc.value("constraints", "") != c.describe())
                    throw Error("resume log was produced by a different search");
                continue;
            }
            std::vector<OrthogonalityGraph> graphs;
            for (const auto& gj : doc.at("graphs")) graphs.push_back(decode_graph(gj.dump()));
            cached[doc.at("unit").get<std::string>()] = std::move(graphs);
        }
    }

    void open_for_append(const ProfileConstraints& c) {
        if (path.empty()) return;
        bool fresh = cached.empty();
        out_.open(path, fresh ? std::ios::trunc : std::ios::app);
        if (!out_) throw Error("cannot open resume log " + path);
        if (fresh) {
            out_ << "{\"format\":\"upb-search-log\",\"version\":1,\"p\":" << c.p
                 << ",\"s\":" << c.s << ",\"constraints\":" << json_escape(c.describe()) << "}\n";
            out_.flush();
        }
    }

    void append(const std::string& hash, const SizeProfile& pr,
                const std::vector<OrthogonalityGraph>& graphs) {
        if (path.empty() || !out_.is_open()) return;
        std::lock_guard lock(mutex_);
        out_ << "{\"unit\":\"" << hash << "\",\"profile\":" << json_escape(pr.to_string())
             << ",\"graphs\":[";
        for (size_t i = 0; i < graphs.size(); ++i)
            out_ << (i ? "," : "") << encode_graph(graphs[i]);
        out_ << "]}\n";
        out_.flush();
    }

private:
    std::ofstream out_;
    std::mutex mutex_;
};

}  // namespace

std::string SearchReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["p"] = p;
    doc["s"] = s;
    doc["constraints"] = constraints;
    doc["profiles"] = {{"candidates", profiles_candidates},
                       {"pruned_single_component", pruned_single_component},
                       {"pruned_cover_chain", pruned_cover_chain},
                       {"pruned_odd_rule", pruned_odd_rule},
                       {"searched", profiles_searched},
                       {"reused", profiles_reused}};
    doc["raw_graphs"] = raw_graphs;
    doc["classes"] = classes;
    doc["seconds"] = {{"enumerate", enumerate_seconds},
                      {"search", search_seconds},
                      {"dedupe", dedupe_seconds}};
    if (!resume_log.empty()) doc["resume_log"] = resume_log;
    return doc.dump();
}

std::string SearchReport::to_table() const {
    std::ostringstream out;
    out << "search p=" << p << " s=" << s << "\n"
        << "  constraints: " << constraints << "\n"
        << "  profiles: " << profiles_candidates << " candidates, "
        << pruned_single_component << " pruned by single-component rule, "
        << pruned_cover_chain << " by cover chain, " << pruned_odd_rule << " by odd rule, "
        << profiles_searched << " searched";
    if (profiles_reused) out << " (" << profiles_reused << " reused from log)";
    out << "\n  raw graphs: " << raw_graphs << "\n  classes: " << classes << "\n"
        << "  seconds: enumerate " << enumerate_seconds << ", search " << search_seconds
        << ", dedupe " << dedupe_seconds << "\n";
    return out.str();
}

SearchOutcome full_search(const ProfileConstraints& c, const SearchOptions& opts) {
    using clock = std::chrono::steady_clock;
    SearchOutcome outcome;
    auto& report = outcome.report;
    report.p = c.p;
    report.s = c.s;
    report.constraints = c.describe();
    report.resume_log = opts.resume_path;

    auto t0 = clock::now();
    EnumerationStats stats;
    std::vector<SizeProfile> profiles = enumerate_profiles(c, &stats);
    report.profiles_candidates = stats.candidates;
    report.pruned_single_component = stats.pruned_single_component;
    report.pruned_cover_chain = stats.pruned_cover_chain;
    report.pruned_odd_rule = stats.pruned_odd_rule;
    auto t1 = clock::now();
    report.enumerate_seconds = std::chrono::duration<double>(t1 - t0).count();

    UnitLog log;
    log.path = opts.resume_path;
    log.load(c);
    log.open_for_append(c);

    std::vector<std::string> hashes(profiles.size());
    for (size_t i = 0; i < profiles.size(); ++i) hashes[i] = profiles[i].hash();

    std::vector<std::vector<OrthogonalityGraph>> results(profiles.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<bool> cancelled{false};
    std::atomic<long long> reused{0};
    std::mutex progress_mutex;

    int workers = opts.workers > 0 ? opts.workers
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, std::max<std::size_t>(1, profiles.size()));

    auto worker = [&]() {
        for (;;) {
            if (opts.cancel && opts.cancel->load()) {
                cancelled = true;
                return;
            }
            std::size_t i = next.fetch_add(1);
            if (i >= profiles.size()) return;
            auto it = log.cached.find(hashes[i]);
            if (it != log.cached.end()) {
                results[i] = it->second;
                ++reused;
            } else {
                results[i] = search_profile(profiles[i]);
                log.append(hashes[i], profiles[i], results[i]);
            }
            std::size_t d = ++done;
            if (opts.progress) {
                std::lock_guard lock(progress_mutex);
                opts.progress(d, profiles.size());
            }
        }
    };
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (cancelled)
        throw Interrupted("search cancelled; completed units are in the resume log",
                          opts.resume_path);

    report.profiles_searched = static_cast<long long>(profiles.size());
    report.profiles_reused = reused.load();
    auto t2 = clock::now();
    report.search_seconds = std::chrono::duration<double>(t2 - t1).count();

    // Keys in parallel, reduction in unit order so the first representative
    // per class is independent of scheduling.
    std::vector<const OrthogonalityGraph*> flat;
    for (const auto& unit : results)
        for (const auto& g : unit) flat.push_back(&g);
    report.raw_graphs = static_cast<long long>(flat.size());

    std::vector<CanonicalKey> keys(flat.size());
    {
        std::atomic<std::size_t> kidx{0};
        auto key_worker = [&]() {
            for (;;) {
                std::size_t i = kidx.fetch_add(1);
                if (i >= flat.size()) return;
                keys[i] = canonical_key(*flat[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(key_worker);
        for (auto& t : pool) t.join();
    }

    std::map<CanonicalKey, CatalogEntry> classes;
    for (size_t i = 0; i < flat.size(); ++i) {
        auto it = classes.find(keys[i]);
        if (it == classes.end())
            classes.emplace(keys[i], CatalogEntry{keys[i], *flat[i], 1});
        else
            ++it->second.multiplicity;
    }
    for (auto& [key, entry] : classes) outcome.catalog.push_back(std::move(entry));
    report.classes = static_cast<long long>(outcome.catalog.size());
    auto t3 = clock::now();
    report.dedupe_seconds = std::chrono::duration<double>(t3 - t2).count();
    return outcome;
}

}  // namespace upb
