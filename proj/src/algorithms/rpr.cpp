#include <algorithm>
#include <numeric>
#include <string>

#include "spp/algorithms.hpp"

namespace spp {

std::vector<int> channel_preference_order(const Instance& inst, int channel) {
    std::vector<int> order(inst.num_cells());
    std::iota(order.begin(), order.end(), 0);
    if (inst.has_ranking()) {
        const auto& ranks = inst.ranking().channel_ranks;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return ranks(a, channel) < ranks(b, channel); });
    } else {
        const auto& u = inst.utility().utilities;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return u(a, channel) > u(b, channel); });
    }
    return order;
}

RprOutcome rpr(const Instance& inst, int max_iterations) {
    if (max_iterations < 1) throw std::invalid_argument("RP&R needs at least one iteration");
    RprOptions options;
    options.max_iterations = max_iterations;
    return rpr(inst, options);
}

RprOutcome rpr(const Instance& inst, const RprOptions& options) {
    const auto& profile = inst.ranking();
    const int L = inst.num_cells();
    const int S = inst.num_channels();
    const int V = inst.virtual_channel();
    const auto& graph = inst.constraints();

    if (options.max_iterations < 0) throw std::invalid_argument("RP&R needs at least one iteration");
    const int passes = options.max_iterations == 0 ? L * S : options.max_iterations;

    std::vector<int> channels = options.channel_order;
    if (channels.empty()) {
        channels.resize(S - 1);
        std::iota(channels.begin(), channels.end(), 0);
    } else {
        std::vector<int> sorted = channels;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
            if (sorted.size() != static_cast<std::size_t>(S - 1) || sorted[i] != i) {
                throw std::invalid_argument("channel order must be a permutation of the " +
                                            std::to_string(S - 1) + " real channels");
            }
        }
    }

    std::vector<std::vector<int>> proposal_order(S - 1);
    for (int s : channels) proposal_order[s] = channel_preference_order(inst, s);

    RprOutcome out{Matching::all_virtual(inst), 0, false, false};
    Matching& phi = out.matching;

    auto available = [&](int s, int cell) {
        for (int other : graph.neighbors(cell)) {
            if (phi[other] == s &&
                profile.channel_ranks(other, s) < profile.channel_ranks(cell, s)) {
                return false;
            }
        }
        return true;
    };

    for (int iter = 1; iter <= passes; ++iter) {
        out.iterations_used = iter;
        bool changed = false;
        for (int s : channels) {
            for (int cell : proposal_order[s]) {
                if (available(s, cell)) {
                    if (profile.cell_ranks(cell, s) <= profile.cell_ranks(cell, phi[cell]) &&
                        phi[cell] != s) {
                        phi[cell] = s;
                        changed = true;
                    }
                } else if (phi[cell] == s) {
                    phi[cell] = V;
                    changed = true;
                }
            }
        }
        if (!changed) {
            out.converged = true;
            break;
        }
    }
    out.stable = is_stable(inst, phi);
    return out;
}

}  // namespace spp
