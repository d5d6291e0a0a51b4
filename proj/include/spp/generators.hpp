// Instance construction: constraint-graph families, random preference
// profiles, Shannon-rate utilities, and the fixed unsolvable-ranking matrices.
// Every generator is a pure function of (seed, parameters).

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spp/core.hpp"

namespace spp {

inline constexpr double kDefaultRadius = 0.3;
inline constexpr double kDefaultSnrDb = 10.0;

namespace graph_kind {
struct Geometric {
    double radius = kDefaultRadius;
};
struct Empty {};
struct Complete {};
struct DisjointComplete {
    std::vector<int> sizes;
};
struct RandomForest {};
/// 0-based directed edges.
struct Explicit {
    std::vector<std::pair<int, int>> edges;
};
}  // namespace graph_kind

using GraphKind = std::variant<graph_kind::Geometric, graph_kind::Empty, graph_kind::Complete,
                               graph_kind::DisjointComplete, graph_kind::RandomForest,
                               graph_kind::Explicit>;

namespace profile_kind {
struct RankingUniform {};
struct UtilityShannon {
    double snr_db = kDefaultSnrDb;
};
}  // namespace profile_kind

using ProfileKind = std::variant<profile_kind::RankingUniform, profile_kind::UtilityShannon>;

struct GenConfig {
    std::uint64_t seed = 0;
    int num_cells = 1;
    int num_channels = 2;
    GraphKind graph = graph_kind::Geometric{};
    ProfileKind profile = profile_kind::RankingUniform{};

    /// Throws std::invalid_argument on a bad radius, sizes not summing to L,
    /// L < 1 or S < 2.
    void validate() const;
};

/// Uniform points in the unit square, edge iff distance < radius.
ConstraintGraph gen_geometric_graph(std::uint64_t seed, int num_cells, double radius);

ConstraintGraph gen_empty_graph(int num_cells);
ConstraintGraph gen_complete_graph(int num_cells);
/// Block-diagonal cliques on consecutive cells.
ConstraintGraph gen_disjoint_complete_graph(int num_cells, const std::vector<int>& sizes);
/// Random labelled forest: shuffle the cells, cut the order into a uniform
/// number of trees, and attach every later node of a tree to a uniform
/// earlier one.
ConstraintGraph gen_random_forest(std::uint64_t seed, int num_cells);

/// Dispatch on `kind`. The seed is ignored by the deterministic families.
ConstraintGraph gen_graph(std::uint64_t seed, int num_cells, const GraphKind& kind);

RankingProfile gen_ranking_profile(std::uint64_t seed, int num_cells, int num_channels);

/// log2(1 + g * 10^(snr_db/10)) with g ~ Exp(1); zero draws are redrawn.
double shannon_rate(double gain, double snr_db);
UtilityProfile gen_shannon_utilities(std::uint64_t seed, int num_cells, int num_channels,
                                     double snr_db);

/// Graph from child stream 1 of `cfg.seed`, profile from child stream 2.
Instance gen_instance(const GenConfig& cfg);

/// The 5-cell, 2-real-channel ranking matrices for which some constraint
/// graphs admit no stable matching.
RankingProfile theorem2_profile();
Instance theorem2_instance(ConstraintGraph graph = ConstraintGraph(5));

}  // namespace spp
