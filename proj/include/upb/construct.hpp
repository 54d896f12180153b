#ifndef UPB_CONSTRUCT_HPP
#define UPB_CONSTRUCT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upb/core.hpp"

// Explicit builders and the size theory: which cardinalities admit a UPB on
// p qubits, which are ruled out, and constructions for the multiple-of-four
// family (perfect-matching qubit wired through a 1-factorization of the
// complete graph, plus the qubit-splitting step that trades one K_{2,2}
// qubit for two).

namespace upb {

struct NotAUPB : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct OddOrder : Error {
    using Error::Error;
};
struct NotSplittable : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};
struct BadArguments : Error {
    using Error::Error;
};

// Minimum possible UPB size on p qubits.
int min_size(int p);

// The four-state, three-qubit basis whose graph is two disjoint matched
// singleton pairs on every qubit.
SymbolicProductBasis shifts();

SymbolicProductBasis standard_basis(int p);

// Stacks two p-qubit UPBs along a fresh qubit (first block bare, second
// complemented). Letters shared by name: reusing a letter on a qubit merges
// the local bases of the two blocks, fresh letters keep them generic.
// Both inputs are verified to be UPBs; the result is verified before return.
SymbolicProductBasis combine(const SymbolicProductBasis& a, const SymbolicProductBasis& b);

// Graph-level form. `sharing`, when given, lists per existing qubit the
// (region of a, region of b) pairs holding identical local vectors; partner
// regions merge along automatically.
using RegionSharing = std::vector<std::vector<std::pair<int, int>>>;
OrthogonalityGraph combine(const OrthogonalityGraph& a, const OrthogonalityGraph& b,
                           const RegionSharing* sharing = nullptr);

// Round-robin 1-factorization of K_n for even n: n-1 perfect matchings
// partitioning the edges.
struct OneFactorization {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> rounds;
};
OneFactorization one_factorization(int n);

// Replaces a qubit whose components are all K_{2,2} by two qubits with
// singleton regions wired so every formerly orthogonal pair is orthogonal
// on exactly one of the two. Keeps s, raises p by one, preserves the
// classification.
OrthogonalityGraph split_qubit(const OrthogonalityGraph& g, int qubit);

// A p-qubit UPB of size s for multiples of four with p+1 <= s <= 2^p.
// Unsupported exactly when p = 1 (mod 4) and s = 2p+2 with no alternate
// route (p = 5 goes through two six-state four-qubit blocks).
OrthogonalityGraph build_multiple_of_four(int p, long long s);

enum class NonexistenceRule {
    none,
    too_small_trivial,  // below the universal p+1 floor
    below_minimum,      // below min_size(p)
    odd_p_plus_2,       // odd p, s = p+2
    near_maximal,       // 2^p - 4 < s < 2^p
};
std::string to_string(NonexistenceRule rule);

// Only the published rules; no extrapolation. Pre: p >= 1, 1 <= s <= 2^p.
NonexistenceRule known_nonexistence(int p, long long s);

// Sorted disjoint closed integer intervals.
class IntervalSet {
public:
    void add(long long lo, long long hi);
    void add(long long v) { add(v, v); }
    void add(const IntervalSet& other);
    bool contains(long long v) const;
    long long count() const;
    bool empty() const { return items_.empty(); }
    // {a + b : a in this, b in other}
    IntervalSet sumset(const IntervalSet& other) const;
    IntervalSet complement_within(long long lo, long long hi) const;
    IntervalSet intersect(long long lo, long long hi) const;
    const std::vector<std::pair<long long, long long>>& intervals() const { return items_; }
    std::string to_string() const;

private:
    std::vector<std::pair<long long, long long>> items_;
};

struct SizeCatalog {
    int p = 0;
    IntervalSet attainable;
    IntervalSet impossible;
    IntervalSet unknown;
    // Longest run of consecutive sizes, strictly between attainable ones,
    // that are all ruled out / all not known attainable.
    long long proven_gap = 0;
    long long possible_gap = 0;

    // Short source tag for an attainable or impossible size, empty otherwise.
    std::string provenance_of(long long s) const;

    std::vector<std::pair<IntervalSet, std::string>> attainable_sources;
    std::vector<std::pair<IntervalSet, std::string>> impossible_sources;
};

// Partition of [1, 2^p] into attainable / impossible / unknown, built from
// the published size table, the stacking closure, the multiple-of-four
// family, the standard basis, the minimum size, and the nonexistence rules.
SizeCatalog attainable_sizes(int p);

// (sum of min_size(k) for k = 4..p-1, (p^2+3p-30)/2); the second is always
// within [first, first+2]. Pre: p >= 7.
std::pair<long long, long long> bound_comparison(int p);

}  // namespace upb

#endif
