#include <deque>
#include <string>

#include "spp/algorithms.hpp"

namespace spp {

Matching gale_shapley_reference(const Instance& inst) {
    const auto& profile = inst.ranking();
    const int L = inst.num_cells();
    const int real = inst.num_real_channels();
    if (L != real) {
        throw std::invalid_argument("Gale-Shapley reference needs L = S - 1 (got L=" +
                                    std::to_string(L) + ", S=" +
                                    std::to_string(inst.num_channels()) + ")");
    }
    const auto n = static_cast<std::size_t>(L);
    if (inst.constraints().num_undirected_edges() != n * (n - 1) / 2) {
        throw std::invalid_argument("Gale-Shapley reference needs a complete constraint graph");
    }

    std::vector<std::vector<int>> order(real);
    for (int s = 0; s < real; ++s) order[s] = channel_preference_order(inst, s);

    std::vector<int> next(real, 0);
    std::vector<int> holder(L, -1);
    std::deque<int> free_channels;
    for (int s = 0; s < real; ++s) free_channels.push_back(s);

    while (!free_channels.empty()) {
        const int s = free_channels.front();
        free_channels.pop_front();
        if (next[s] == L) continue;
        const int cell = order[s][next[s]++];
        const int current = holder[cell];
        if (current == -1) {
            holder[cell] = s;
        } else if (profile.cell_ranks(cell, s) < profile.cell_ranks(cell, current)) {
            holder[cell] = s;
            free_channels.push_back(current);
        } else {
            free_channels.push_back(s);
        }
    }

    Matching m = Matching::all_virtual(inst);
    for (int l = 0; l < L; ++l) {
        if (holder[l] != -1) m[l] = holder[l];
    }
    return m;
}

}  // namespace spp
