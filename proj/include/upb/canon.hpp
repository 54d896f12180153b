#ifndef UPB_CANON_HPP
#define UPB_CANON_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "upb/core.hpp"

// Equivalence of orthogonality graphs under qubit permutation plus vertex
// relabeling, realized as a canonical byte string. Keys are themselves
// decodable graph records; equal keys hold exactly for equivalent graphs.

namespace upb {

struct CanonicalKey {
    std::string bytes;

    bool operator==(const CanonicalKey&) const = default;
    auto operator<=>(const CanonicalKey&) const = default;
};

// Applies vertex_map (old -> new label) and qubit_order (position -> old
// qubit index). Useful for invariance tests and symmetry arguments.
OrthogonalityGraph relabel(const OrthogonalityGraph& g,
                           const std::vector<int>& vertex_map,
                           const std::vector<int>& qubit_order);

// Canonical labeling per qubit permutation via iterative partition
// refinement (vertex signatures built from region and partner sizes) with
// individualization branching; the key is the least encoding reached over
// all distinct qubit orders.
CanonicalKey canonical_key(const OrthogonalityGraph& g);

// Short-circuits on (p, s) and profile-multiset mismatch before comparing
// canonical keys.
bool are_equivalent(const OrthogonalityGraph& g1, const OrthogonalityGraph& g2);

struct MixedDimensions : Error {
    using Error::Error;
};

struct CatalogEntry {
    CanonicalKey key;
    OrthogonalityGraph representative;  // first encountered for that key
    std::uint64_t multiplicity = 0;
};

// Streaming dedupe; all inputs must share (p, s).
class Deduper {
public:
    void add(const OrthogonalityGraph& g);
    // Entries sorted by key.
    std::vector<CatalogEntry> take();
    std::size_t classes() const { return entries_.size(); }

private:
    int p_ = -1, s_ = -1;
    std::map<CanonicalKey, CatalogEntry> entries_;
};

std::vector<CatalogEntry> dedupe(const std::vector<OrthogonalityGraph>& graphs);

}  // namespace upb

#endif
