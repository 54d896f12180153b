#ifndef UPB_SEARCH_HPP
#define UPB_SEARCH_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "upb/canon.hpp"
#include "upb/core.hpp"

// Exhaustive classification in three phases: enumerate per-qubit component
// size profiles under necessary conditions, search vertex placements for
// each surviving profile, and reduce the hits to equivalence classes.

namespace upb {

enum class Provenance { bootstrap, computed, constructed, paper_claim };
std::string to_string(Provenance p);

// Which sizes are known to carry a p-qubit UPB, and which are proven empty.
// Proof means: complete on p <= 2, a published closed-form rule, or a finished
// search registered through note_empty_search. Published census claims alone
// never count as proof.
struct FeasibleSizes {
    int p = 0;
    std::map<long long, Provenance> known;

    bool is_known(long long s) const { return known.count(s) != 0; }
    bool proven_infeasible(long long s, std::string* reason = nullptr) const;
    void note_empty_search(long long s) { searched_empty.insert(s); }
    void note_found(long long s) { known.emplace(s, Provenance::computed); }

    std::set<long long> searched_empty;
};

FeasibleSizes feasible_sizes(int p);

struct ProfileConstraints {
    int p = 0;
    int s = 0;
    bool allow_unmatched_regions = false;
    bool use_lemma_a1 = true;  // single-component qubits need feasible halves
    bool use_lemma_a2 = true;  // covering-chain bound
    bool use_odd_pair_rule = false;

    std::string describe() const;
};

struct PruneDecision {
    bool pruned = false;
    std::string rule;
    std::string detail;
};

struct EnumerationStats {
    long long candidates = 0;  // satisfy sum, side-cap and edge-count bounds
    long long pruned_single_component = 0;
    long long pruned_cover_chain = 0;
    long long pruned_odd_rule = 0;
    long long kept = 0;
    long long kept_ordered = 0;  // counting qubit orderings separately
};

// Profiles up to qubit permutation, normalized and sorted.
std::vector<SizeProfile> enumerate_profiles(const ProfileConstraints& c,
                                            EnumerationStats* stats = nullptr);

// Single-component qubits must split into two feasible smaller bases.
PruneDecision prune_reverse_combine(const SizeProfile& pr, const FeasibleSizes& below);

// Covering chain: a product state annihilates one side on a first qubit and,
// per further qubit, at least the least-covered side remainder over worst-case
// placements of everything covered so far; the total must stay below s.
PruneDecision prune_search_reduce(const SizeProfile& pr);

// All placements realizing the profile whose graph classifies as a UPB.
// Duplicates up to relabeling are permitted; dedupe removes them later.
std::vector<OrthogonalityGraph> search_profile(const SizeProfile& pr);

struct Interrupted : Error {
    std::string resume_path;
    Interrupted(std::string msg, std::string path)
        : Error(std::move(msg)), resume_path(std::move(path)) {}
};

struct SearchOptions {
    int workers = 0;           // 0 = hardware concurrency
    std::string resume_path;   // unit log for restart; empty disables
    std::atomic<bool>* cancel = nullptr;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

struct SearchReport {
    int p = 0, s = 0;
    std::string constraints;
    long long profiles_candidates = 0;
    long long pruned_single_component = 0;
    long long pruned_cover_chain = 0;
    long long pruned_odd_rule = 0;
    long long profiles_searched = 0;
    long long profiles_reused = 0;  // taken from the resume log
    long long raw_graphs = 0;
    long long classes = 0;
    double enumerate_seconds = 0;
    double search_seconds = 0;
    double dedupe_seconds = 0;
    std::string resume_log;

    std::string to_json() const;
    std::string to_table() const;
};

struct SearchOutcome {
    std::vector<CatalogEntry> catalog;  // sorted by key
    SearchReport report;
};

// Deterministic: catalogs are byte-identical across worker counts and across
// interrupted/resumed runs.
SearchOutcome full_search(const ProfileConstraints& c, const SearchOptions& opts = {});

}  // namespace upb

#endif
