#include <algorithm>

#include "spp/algorithms.hpp"
#include "spp/metrics.hpp"
#include "spp/rng.hpp"

namespace spp {

Matching random_matching(const Instance& inst, std::uint64_t seed) {
    Rng rng(seed);
    const auto& graph = inst.constraints();
    Matching m = Matching::all_virtual(inst);

    struct Pair {
        int cell;
        int channel;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(inst.num_cells()) * inst.num_real_channels());
    for (int l = 0; l < inst.num_cells(); ++l) {
        for (int s = 0; s < inst.num_real_channels(); ++s) pairs.push_back({l, s});
    }

    while (!pairs.empty()) {
        const Pair pick = pairs[rng.index(pairs.size())];
        m[pick.cell] = pick.channel;
        std::erase_if(pairs, [&](const Pair& p) {
            return p.cell == pick.cell ||
                   (p.channel == pick.channel && graph.adjacent(p.cell, pick.cell));
        });
    }
    return m;
}

Matching best_of_random(const Instance& inst, std::uint64_t seed, int repeats) {
    if (repeats < 0) throw std::invalid_argument("best_of_random needs at least one repeat");
    if (repeats == 0) repeats = inst.num_cells();

    Matching best;
    std::int64_t best_key = -1;
    double best_rate = -1.0;
    for (int k = 1; k <= repeats; ++k) {
        Matching m = random_matching(inst, child_seed(seed, static_cast<std::uint64_t>(k)));
        bool better = false;
        if (inst.has_ranking()) {
            const std::int64_t key = ranking_welfare_key(inst, m);
            better = key > best_key;
            if (better) best_key = key;
        } else {
            const double rate = sum_rate(inst, m);
            better = rate > best_rate;
            if (better) best_rate = rate;
        }
        if (better) best = std::move(m);
    }
    return best;
}

Matching top_ranked_proposal(const Instance& inst) {
    const PreferenceOracle pref(inst);
    const auto& graph = inst.constraints();
    const int real = inst.num_real_channels();

    std::vector<int> favourite(inst.num_cells(), 0);
    for (int l = 0; l < inst.num_cells(); ++l) {
        for (int s = 1; s < real; ++s) {
            if (pref.cell_prefers(l, s, favourite[l])) favourite[l] = s;
        }
    }

    Matching m = Matching::all_virtual(inst);
    for (int s = 0; s < real; ++s) {
        std::vector<int> admitted;
        for (int cell : channel_preference_order(inst, s)) {
            if (favourite[cell] != s) continue;
            const bool conflict = std::any_of(admitted.begin(), admitted.end(),
                                              [&](int a) { return graph.adjacent(a, cell); });
            if (!conflict) {
                admitted.push_back(cell);
                m[cell] = s;
            }
        }
    }
    return m;
}

}  // namespace spp
