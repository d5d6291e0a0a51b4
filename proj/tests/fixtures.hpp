// Small hand-built instances shared by the unit tests. Edges and indices are
// 0-based, matching the library API.

#pragma once

#include <utility>
#include <vector>

#include "spp/core.hpp"
#include "spp/generators.hpp"

namespace fixtures {

using Edges = std::vector<std::pair<int, int>>;

inline spp::Instance utility_instance(int L, int S, const Edges& edges,
                                      const std::vector<std::vector<double>>& rows) {
    spp::RealMatrix u(L, S);
    for (int l = 0; l < L; ++l) {
        for (int s = 0; s < S; ++s) u(l, s) = rows[l][s];
    }
    return spp::Instance(L, S, spp::ConstraintGraph::from_undirected_edges(L, edges),
                         spp::UtilityProfile{u});
}

inline spp::Instance ranking_instance(int L, int S, const Edges& edges,
                                      const std::vector<std::vector<int>>& cell_rows,
                                      const std::vector<std::vector<int>>& channel_rows) {
    spp::IntMatrix rl(L, S);
    spp::IntMatrix rs(L, S);
    for (int l = 0; l < L; ++l) {
        for (int s = 0; s < S; ++s) {
            rl(l, s) = cell_rows[l][s];
            rs(l, s) = channel_rows[l][s];
        }
    }
    return spp::Instance(L, S, spp::ConstraintGraph::from_undirected_edges(L, edges),
                         spp::RankingProfile{rl, rs});
}

inline spp::Instance random_instance(std::uint64_t seed, int L, int S, spp::GraphKind graph,
                                     bool ranking) {
    spp::GenConfig cfg;
    cfg.seed = seed;
    cfg.num_cells = L;
    cfg.num_channels = S;
    cfg.graph = std::move(graph);
    if (ranking) {
        cfg.profile = spp::profile_kind::RankingUniform{};
    } else {
        cfg.profile = spp::profile_kind::UtilityShannon{};
    }
    return spp::gen_instance(cfg);
}

inline spp::Matching matching(std::vector<int> a) { return spp::Matching{std::move(a)}; }

}  // namespace fixtures
