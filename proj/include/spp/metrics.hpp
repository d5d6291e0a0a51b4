// Welfare and rate measures.
//
// Ranking instances: a cell l matched to real channel s adds
//   L - RS(l, s) + 1  to the channel-side welfare, and
//   S - RL(l, s)      to the cell-side welfare.
// Virtual matches add nothing. Normalisation divides by the best attainable
// totals, L*L and L*(S-1), and the total is the mean of the two.

#pragma once

#include <cstdint>

#include "spp/core.hpp"

namespace spp {

struct WelfareReport {
    double s_welfare_raw = 0.0;
    double l_welfare_raw = 0.0;
    double s_welfare_norm = 0.0;
    double l_welfare_norm = 0.0;
    double total_welfare_norm = 0.0;
    double sum_rate = 0.0;
    int matched_count = 0;
};

/// Throws std::invalid_argument on a utility instance.
double s_welfare(const Instance& inst, const Matching& matching);
double l_welfare(const Instance& inst, const Matching& matching);

struct NormalizedWelfare {
    double s_norm;
    double l_norm;
    double total;
};
NormalizedWelfare normalize(double s_raw, double l_raw, const Instance& inst);

/// Throws std::invalid_argument on a ranking instance.
double sum_rate(const Instance& inst, const Matching& matching);

int matched_count(const Instance& inst, const Matching& matching);

/// Fills the fields that apply to the instance's profile model.
WelfareReport welfare_report(const Instance& inst, const Matching& matching);

/// The scalar objective used for best-of-random selection and the optimal
/// oracle: total normalised welfare (ranking) or sum rate (utility).
double objective(const Instance& inst, const Matching& matching);

/// Integer key ordered like the ranking-model total welfare:
/// s_raw * (S-1) + l_raw * L. Exact, so ties compare equal.
std::int64_t ranking_welfare_key(const Instance& inst, const Matching& matching);

}  // namespace spp
