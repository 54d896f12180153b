#ifndef UPB_NOTATION_HPP
#define UPB_NOTATION_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "upb/core.hpp"

// Text formats. Ket text writes one state per comma-separated group, one
// character per qubit: '0'/'1' are a complementary pair, a lowercase letter
// is a base vector and the matching uppercase letter its complement.
// Letters are scoped per qubit position. Graph records are single-line JSON
// with a frozen field order so equal graphs encode to equal bytes.

namespace upb {

struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::string msg, std::size_t pos)
        : Error(std::move(msg)), position(pos) {}
};

struct RaggedBasis : Error {
    using Error::Error;
};

struct DuplicateState : Error {
    using Error::Error;
};

struct DecodeError : Error {
    std::size_t offset;
    DecodeError(std::string msg, std::size_t off)
        : Error(std::move(msg)), offset(off) {}
};

// Parses ket text. Whitespace is ignored; '1' parses as complemented '0'.
SymbolicProductBasis parse_basis(std::string_view text);

// Prints with canonical letters: per qubit, bases renamed in order of first
// appearance ('0' first, then 'a', 'b', ...), complement flags untouched.
std::string format_basis(const SymbolicProductBasis& b);

// Synthesizes a symbolic basis realizing the graph, one fresh basis per
// component (first-seen order; the side holding the smaller minimum vertex
// takes the bare form). Inverse of graph_from_states up to letter names.
SymbolicProductBasis basis_from_graph(const OrthogonalityGraph& g);

// Single-line record {"p":..,"s":..,"qubits":[{"regions":..,"matching":..},..]}.
std::string encode_graph(const OrthogonalityGraph& g);
OrthogonalityGraph decode_graph(std::string_view text);

inline constexpr std::string_view kCatalogHeader = R"({"format":"upb-catalog","version":1})";

}  // namespace upb

#endif
