#pragma once
// Candidate-restricted baselines. Every flow gets up to K candidate routes
// (shortest, widest, or shortest-widest); the scheduler then picks one
// candidate per flow and allocates rates with OptBA.
//
// Small assignment spaces are searched exhaustively. Larger ones solve the
// fractional relaxation over candidates (a flow may split across its
// candidates), keep each flow's largest fraction and reallocate.

#include <cstddef>
#include <string_view>
#include <vector>

#include "coflow/coflow.hpp"
#include "coflow/network.hpp"

namespace coflow {

enum class CandidateRule { kShortest, kMaxCapacity, kShortestMaxCapacity };

std::string_view candidate_rule_name(CandidateRule rule);

inline constexpr int kDefaultCandidates = 5;
/// Assignment spaces up to this size are enumerated in full.
inline constexpr std::size_t kExhaustiveAssignmentLimit = 256;

struct CandidateSet {
    CandidateRule rule = CandidateRule::kShortest;
    std::vector<std::vector<Path>> paths;  // per flow, in preference order

    /// Number of distinct assignments, saturating at SIZE_MAX.
    std::size_t assignment_count() const;
};

/// Candidates for the coflow's active flows on `net`'s current availability.
CandidateSet generate_candidates(const Network& net, const Coflow& coflow, CandidateRule rule,
                                 int k = kDefaultCandidates);

struct MinCctTrace {
    bool exhaustive = false;
    double relaxed_t = 0.0;               // set by the fractional path only
    std::vector<std::size_t> chosen;      // candidate index per flow
};

/// Throws Unschedulable when a flow has no candidate.
Schedule mincct(const Network& net, const Coflow& coflow, const CandidateSet& candidates,
                MinCctTrace* trace = nullptr);

/// generate_candidates followed by mincct.
Schedule mincct(const Network& net, const Coflow& coflow, CandidateRule rule, int k = kDefaultCandidates,
                MinCctTrace* trace = nullptr);

}  // namespace coflow
