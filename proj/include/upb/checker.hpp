#ifndef UPB_CHECKER_HPP
#define UPB_CHECKER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "upb/core.hpp"

// Decides, from the orthogonality graph alone, whether a set of qubit
// product states is mutually orthogonal and whether a product state
// orthogonal to all of them exists. A single-qubit vector is orthogonal to
// at most one local vector up to scale, so an extending state corresponds
// exactly to a choice of at most one region per qubit whose vertex sets
// cover every state.

namespace upb {

// Per qubit, the chosen region index the extending state annihilates, or -1.
struct ExtensionWitness {
    std::vector<int> region_per_qubit;

    bool operator==(const ExtensionWitness&) const = default;
};

struct Verdict {
    enum class Kind { upb, not_pairwise_orthogonal, extendible };
    Kind kind = Kind::upb;
    std::vector<std::pair<Vertex, Vertex>> missing_pairs;  // when not orthogonal
    std::optional<ExtensionWitness> witness;               // when extendible

    bool is_upb() const { return kind == Kind::upb; }
};

std::string to_string(Verdict::Kind kind);

// All vertex pairs not adjacent on any qubit, sorted; empty means mutually
// orthogonal.
std::vector<std::pair<Vertex, Vertex>> missing_orthogonal_pairs(const OrthogonalityGraph& g);

inline bool is_mutually_orthogonal(const OrthogonalityGraph& g) {
    return missing_orthogonal_pairs(g).empty();
}

// Exhaustive cover search (qubits ordered by largest region, choices by
// region size, pruned by the best-possible remaining coverage). The returned
// witness is re-verified before returning.
std::optional<ExtensionWitness> extension_witness(const OrthogonalityGraph& g);

// True iff the witness covers every vertex.
bool witness_covers_all(const OrthogonalityGraph& g, const ExtensionWitness& w);

Verdict classify(const OrthogonalityGraph& g);

struct DegenerateSample : Error {
    using Error::Error;
};

struct CrosscheckReport {
    bool agree = true;
    std::vector<std::string> notes;
};

// Instantiates concrete unit vectors for the graph (random angles, matched
// partners exactly orthogonal, distinct regions kept well-separated),
// verifies the pairwise orthogonality pattern numerically, re-decides
// extendibility by enumerating complement candidates per qubit, and compares
// with classify.
CrosscheckReport numeric_crosscheck(const OrthogonalityGraph& g, std::uint64_t seed);

}  // namespace upb

#endif
