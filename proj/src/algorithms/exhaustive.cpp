#include <limits>
#include <string>

#include "spp/algorithms.hpp"
#include "spp/metrics.hpp"

namespace spp {

namespace {

void check_cap(const Instance& inst, std::uint64_t cap) {
    const std::uint64_t space = assignment_space_size(inst);
    if (space > cap) {
        const std::string size = space == std::numeric_limits<std::uint64_t>::max()
                                     ? std::string("more than 2^64")
                                     : std::to_string(space);
        throw SizeLimitError("assignment space S^L = " + std::to_string(inst.num_channels()) +
                             "^" + std::to_string(inst.num_cells()) + " = " + size +
                             " exceeds the enumeration cap " + std::to_string(cap));
    }
}

// Depth-first walk over assignments in lexicographic order, channel index
// ascending per cell. Subtrees that already break harmony are skipped, so
// every leaf is a harmonious total assignment.
template <typename Visit>
void for_each_harmonious(const Instance& inst, Visit&& visit) {
    const int L = inst.num_cells();
    const int S = inst.num_channels();
    const int V = inst.virtual_channel();
    const auto& graph = inst.constraints();
    Matching m = Matching::all_virtual(inst);

    auto fits = [&](int cell, int s) {
        if (s == V) return true;
        for (int other : graph.neighbors(cell)) {
            if (other < cell && m[other] == s) return false;
        }
        return true;
    };

    auto recurse = [&](auto&& self, int cell) -> void {
        if (cell == L) {
            visit(m);
            return;
        }
        for (int s = 0; s < S; ++s) {
            if (!fits(cell, s)) continue;
            m[cell] = s;
            self(self, cell + 1);
        }
        m[cell] = V;
    };
    recurse(recurse, 0);
}

}  // namespace

std::uint64_t assignment_space_size(const Instance& inst) {
    std::uint64_t total = 1;
    const auto S = static_cast<std::uint64_t>(inst.num_channels());
    for (int l = 0; l < inst.num_cells(); ++l) {
        if (total > std::numeric_limits<std::uint64_t>::max() / S) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= S;
    }
    return total;
}

OracleResult exhaustive_optimal_welfare(const Instance& inst, std::uint64_t cap) {
    check_cap(inst, cap);
    OracleResult result;
    const bool ranking = inst.has_ranking();
    std::int64_t best_key = -1;
    double best_rate = -1.0;
    for_each_harmonious(inst, [&](const Matching& m) {
        ++result.harmonious_count;
        if (ranking) {
            const std::int64_t key = ranking_welfare_key(inst, m);
            if (key > best_key) {
                best_key = key;
                result.best_matching = m;
            }
        } else {
            const double rate = sum_rate(inst, m);
            if (rate > best_rate) {
                best_rate = rate;
                result.best_matching = m;
            }
        }
    });
    result.best_value = objective(inst, result.best_matching);
    result.solvable = true;
    return result;
}

OracleResult exhaustive_stable_search(const Instance& inst, std::uint64_t cap, bool collect_all) {
    check_cap(inst, cap);
    OracleResult result;
    for_each_harmonious(inst, [&](const Matching& m) {
        ++result.harmonious_count;
        if (find_blocking_pair(inst, m)) return;
        if (result.stable_set_size == 0) result.best_matching = m;
        ++result.stable_set_size;
        if (collect_all) result.stable_set.push_back(m);
    });
    result.solvable = result.stable_set_size > 0;
    if (!result.solvable) result.best_matching = Matching::all_virtual(inst);
    result.best_value = objective(inst, result.best_matching);
    return result;
}

}  // namespace spp
