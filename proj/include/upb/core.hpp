#ifndef UPB_CORE_HPP
#define UPB_CORE_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core data model for product bases of multi-qubit states, viewed through
// their orthogonality structure: per qubit, states group into regions that
// share a local vector, and a partial matching pairs regions holding
// mutually orthogonal vectors. Two states are orthogonal on a qubit exactly
// when they sit in matched partner regions there.

namespace upb {

using Vertex = int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidGraph : Error {
    using Error::Error;
};

// One qubit's structure over s shared vertices.
// Normal form (enforced by `normalized`): region vertex lists sorted
// ascending, regions sorted by (size, min vertex), matching pairs stored as
// (lo, hi) region indices and sorted ascending.
struct QubitFactorization {
    std::vector<std::vector<Vertex>> regions;
    std::vector<std::pair<int, int>> matching;

    bool operator==(const QubitFactorization&) const = default;

    // Index of the matched partner region, or -1 when unmatched.
    int partner_of(int region) const;

    // Region index containing vertex v, or -1.
    int region_of(Vertex v) const;

    static QubitFactorization normalized(std::vector<std::vector<Vertex>> regions,
                                         std::vector<std::pair<int, int>> matching);
};

struct OrthogonalityGraph {
    int p = 0;
    int s = 0;
    std::vector<QubitFactorization> qubits;

    bool operator==(const OrthogonalityGraph&) const = default;
};

struct ValidationIssue {
    int qubit = -1;  // -1 for graph-level issues
    std::string rule;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};

// Collects every violation instead of stopping at the first.
ValidationReport validate_graph(const OrthogonalityGraph& g);

// Throws InvalidGraph when validate_graph finds issues.
void require_valid(const OrthogonalityGraph& g);

// One local symbol: letter '0' or 'a'..'z', with a complement flag.
// '0' complemented denotes '1'. Letters are scoped per qubit position.
struct Symbol {
    char letter = '0';
    bool complemented = false;

    bool operator==(const Symbol&) const = default;
    auto operator<=>(const Symbol&) const = default;
};

struct SymbolicProductBasis {
    int p = 0;  // symbols per state
    int s = 0;  // number of states
    std::vector<std::vector<Symbol>> states;

    bool operator==(const SymbolicProductBasis&) const = default;
};

// Builds the orthogonality graph: per qubit, equal symbols form a region and
// regions carrying the same letter with opposite flags are matched.
OrthogonalityGraph graph_from_states(const SymbolicProductBasis& b);

// Per qubit, the multiset of component side sizes (a, b) with a >= b, using
// b = 0 for unmatched regions. Pairs sorted descending within a qubit.
struct SizeProfile {
    int p = 0;
    int s = 0;
    std::vector<std::vector<std::pair<int, int>>> qubits;

    bool operator==(const SizeProfile&) const = default;

    // Qubit order forgotten (sorted descending); use for multiset comparison.
    SizeProfile normalized() const;

    // Compact text form, e.g. "3x4:[(1,1)(1,1)][(1,1)(1,1)][(1,1)(1,1)]".
    std::string to_string() const;

    // Stable 64-bit content hash of the normalized profile (hex).
    std::string hash() const;
};

SizeProfile profile_of(const OrthogonalityGraph& g);

// Restriction to a vertex subset (relabeled 0..k-1 in ascending order),
// optionally dropping one qubit. Matched regions whose partner vanishes
// become unmatched.
OrthogonalityGraph induced_subgraph(const OrthogonalityGraph& g,
                                    const std::vector<Vertex>& keep,
                                    int drop_qubit = -1);

}  // namespace upb

#endif
