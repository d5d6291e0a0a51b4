// Matching algorithms: the greedy utility algorithm (DSSAR), the
// re-propose-and-reject procedure (RP&R), the comparison baselines, exhaustive
// oracles, and a classic channel-proposing Gale-Shapley reference.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spp/core.hpp"

namespace spp {

/// Raised when an exhaustive enumeration would exceed its cap.
class SizeLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

struct DssarTrace {
    Matching matching;
    /// (cell, channel) in the order they were fixed.
    std::vector<std::pair<int, int>> assignments;
    int iterations = 0;
};

/// Greedy global-argmax assignment over a zero-updated copy of the utility
/// matrix. Ties go to the smallest cell, then the smallest channel.
/// Throws std::invalid_argument for ranking instances.
DssarTrace dssar_trace(const Instance& inst);
Matching dssar(const Instance& inst);

struct RprOutcome {
    Matching matching;
    int iterations_used = 0;
    bool converged = false;
    bool stable = false;
};

struct RprOptions {
    /// Outer passes; 0 selects the default L*S.
    int max_iterations = 0;
    /// Real channels in proposal order; empty means 0, 1, ..., S-2.
    std::vector<int> channel_order;
};

/// Re-propose and reject. Stops early once a full pass changes nothing.
/// Throws std::invalid_argument for utility instances or T < 1.
RprOutcome rpr(const Instance& inst, int max_iterations);
RprOutcome rpr(const Instance& inst, const RprOptions& options = {});

/// Uniformly draw feasible (cell, real channel) pairs until none remain.
Matching random_matching(const Instance& inst, std::uint64_t seed);

/// Runs random_matching with child_seed(seed, k) for k = 1..repeats and keeps
/// the first run with the highest objective. repeats = 0 selects L.
Matching best_of_random(const Instance& inst, std::uint64_t seed, int repeats = 0);

/// One round: every cell proposes to its favourite real channel and each
/// channel admits proposers in its own order, skipping any that conflict with
/// an already admitted cell.
Matching top_ranked_proposal(const Instance& inst);

struct OracleResult {
    Matching best_matching;
    double best_value = 0.0;
    std::uint64_t harmonious_count = 0;
    std::uint64_t stable_set_size = 0;
    bool solvable = false;
    /// Every stable matching, lexicographic order; filled only on request.
    std::vector<Matching> stable_set;
};

/// Number of total assignments S^L, saturating at UINT64_MAX.
std::uint64_t assignment_space_size(const Instance& inst);

/// Objective-maximising harmonious assignment over all S^L assignments.
/// Ties resolve to the lexicographically smallest assignment.
OracleResult exhaustive_optimal_welfare(const Instance& inst,
                                        std::uint64_t cap = kDefaultOracleCap);

/// Counts the stable assignments. best_matching is the lexicographically
/// smallest stable one (all-virtual when none exists).
OracleResult exhaustive_stable_search(const Instance& inst, std::uint64_t cap = kDefaultOracleCap,
                                      bool collect_all = false);

/// Channel-proposing deferred acceptance for the one-to-one special case.
/// Requires a ranking instance on a complete graph with L = S - 1.
Matching gale_shapley_reference(const Instance& inst);

/// Cells in descending preference of `channel` (ranking or utility model;
/// utility ties go to the smaller index).
std::vector<int> channel_preference_order(const Instance& inst, int channel);

}  // namespace spp
