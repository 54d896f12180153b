#ifndef UPB_FIXTURES_HPP
#define UPB_FIXTURES_HPP

#include <string>
#include <vector>

#include "upb/core.hpp"

// Reference corpus: every product basis printed in the literature this
// library reproduces, plus the published table of which sizes are known
// attainable per qubit count. Both ship as JSONL under data/ and are
// embedded at build time so the library needs no runtime file lookup.

namespace upb {

struct Fixture {
    std::string name;
    int p = 0;
    int s = 0;
    std::string ket;
};

const std::vector<Fixture>& fixture_corpus();
const Fixture& fixture(const std::string& name);

enum class ClaimStatus { exists, impossible, unknown };

struct SizeClaim {
    int p = 0;
    long long s = 0;
    ClaimStatus status = ClaimStatus::unknown;
    std::string source;
};

const std::vector<SizeClaim>& size_claims();

// The trivial-UPB bases of three qubits, each appended with a fresh qubit
// against the four-state graph per the stacking construction; exercised by
// the verification suite.
std::vector<Fixture> combined_corpus();

}  // namespace upb

#endif
