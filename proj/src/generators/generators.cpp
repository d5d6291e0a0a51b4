#include "spp/generators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spp/detail/overloaded.hpp"
#include "spp/rng.hpp"

namespace spp {

using detail::overloaded;

namespace {

void check_sizes(int num_cells, int num_channels) {
    if (num_cells < 1) throw std::invalid_argument("need at least one cell");
    if (num_channels < 2) throw std::invalid_argument("need at least two channels (one real)");
}

}  // namespace

void GenConfig::validate() const {
    check_sizes(num_cells, num_channels);
    std::visit(overloaded{
                   [](const graph_kind::Geometric& g) {
                       if (!(g.radius > 0.0) || g.radius > std::sqrt(2.0)) {
                           throw std::invalid_argument("geometric radius must be in (0, sqrt(2)]");
                       }
                   },
                   [&](const graph_kind::DisjointComplete& d) {
                       if (std::accumulate(d.sizes.begin(), d.sizes.end(), 0) != num_cells) {
                           throw std::invalid_argument("clique sizes must sum to L");
                       }
                   },
                   [](const auto&) {},
               },
               graph);
    if (const auto* p = std::get_if<profile_kind::UtilityShannon>(&profile)) {
        if (!std::isfinite(p->snr_db)) throw std::invalid_argument("snr_db must be finite");
    }
}

ConstraintGraph gen_geometric_graph(std::uint64_t seed, int num_cells, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("geometric radius must be positive");
    if (num_cells < 0) throw std::invalid_argument("negative cell count");
    Rng rng(seed);
    std::vector<double> x(num_cells);
    std::vector<double> y(num_cells);
    for (int i = 0; i < num_cells; ++i) {
        x[i] = rng.uniform01();
        y[i] = rng.uniform01();
    }
    const double r2 = radius * radius;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < num_cells; ++a) {
        for (int b = a + 1; b < num_cells; ++b) {
            const double dx = x[a] - x[b];
            const double dy = y[a] - y[b];
            if (dx * dx + dy * dy < r2) edges.emplace_back(a, b);
        }
    }
    return ConstraintGraph::from_undirected_edges(num_cells, edges);
}

ConstraintGraph gen_empty_graph(int num_cells) { return ConstraintGraph(num_cells); }

ConstraintGraph gen_complete_graph(int num_cells) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < num_cells; ++a) {
        for (int b = a + 1; b < num_cells; ++b) edges.emplace_back(a, b);
    }
    return ConstraintGraph::from_undirected_edges(num_cells, edges);
}

ConstraintGraph gen_disjoint_complete_graph(int num_cells, const std::vector<int>& sizes) {
    int total = 0;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("clique sizes must be positive");
        total += s;
    }
    if (total != num_cells) {
        throw std::invalid_argument("clique sizes sum to " + std::to_string(total) +
                                    ", expected " + std::to_string(num_cells));
    }
    std::vector<std::pair<int, int>> edges;
    int start = 0;
    for (int size : sizes) {
        for (int a = start; a < start + size; ++a) {
            for (int b = a + 1; b < start + size; ++b) edges.emplace_back(a, b);
        }
        start += size;
    }
    return ConstraintGraph::from_undirected_edges(num_cells, edges);
}

ConstraintGraph gen_random_forest(std::uint64_t seed, int num_cells) {
    if (num_cells < 1) return ConstraintGraph(std::max(num_cells, 0));
    Rng rng(seed);
    std::vector<int> order(num_cells);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    // Choose trees - 1 distinct cut positions among the L - 1 gaps.
    const int trees = static_cast<int>(rng.uniform_int(1, num_cells));
    std::vector<int> gaps(num_cells - 1);
    std::iota(gaps.begin(), gaps.end(), 1);
    rng.shuffle(gaps);
    std::vector<char> is_cut(num_cells + 1, 0);
    for (int i = 0; i < trees - 1; ++i) is_cut[gaps[i]] = 1;

    std::vector<std::pair<int, int>> edges;
    int tree_start = 0;
    for (int i = 1; i <= num_cells; ++i) {
        if (i == num_cells || is_cut[i]) {
            for (int k = tree_start + 1; k < i; ++k) {
                const int parent = static_cast<int>(rng.uniform_int(tree_start, k - 1));
                edges.emplace_back(order[parent], order[k]);
            }
            tree_start = i;
        }
    }
    return ConstraintGraph::from_undirected_edges(num_cells, edges);
}

ConstraintGraph gen_graph(std::uint64_t seed, int num_cells, const GraphKind& kind) {
    return std::visit(
        overloaded{
            [&](const graph_kind::Geometric& g) {
                return gen_geometric_graph(seed, num_cells, g.radius);
            },
            [&](const graph_kind::Empty&) { return gen_empty_graph(num_cells); },
            [&](const graph_kind::Complete&) { return gen_complete_graph(num_cells); },
            [&](const graph_kind::DisjointComplete& d) {
                return gen_disjoint_complete_graph(num_cells, d.sizes);
            },
            [&](const graph_kind::RandomForest&) { return gen_random_forest(seed, num_cells); },
            [&](const graph_kind::Explicit& e) {
                return ConstraintGraph::from_edges(num_cells, e.edges);
            },
        },
        kind);
}

RankingProfile gen_ranking_profile(std::uint64_t seed, int num_cells, int num_channels) {
    check_sizes(num_cells, num_channels);
    const int L = num_cells;
    const int S = num_channels;
    Rng rng(seed);
    RankingProfile p{IntMatrix(L, S), IntMatrix(L, S)};

    std::vector<int> ranks(S - 1);
    for (int l = 0; l < L; ++l) {
        std::iota(ranks.begin(), ranks.end(), 1);
        rng.shuffle(ranks);
        for (int s = 0; s < S - 1; ++s) p.cell_ranks(l, s) = ranks[s];
        p.cell_ranks(l, S - 1) = S;
    }
    std::vector<int> cell_ranks(L);
    for (int s = 0; s < S - 1; ++s) {
        std::iota(cell_ranks.begin(), cell_ranks.end(), 1);
        rng.shuffle(cell_ranks);
        for (int l = 0; l < L; ++l) p.channel_ranks(l, s) = cell_ranks[l];
    }
    for (int l = 0; l < L; ++l) p.channel_ranks(l, S - 1) = l + 1;
    return p;
}

double shannon_rate(double gain, double snr_db) {
    return std::log2(1.0 + gain * std::pow(10.0, snr_db / 10.0));
}

UtilityProfile gen_shannon_utilities(std::uint64_t seed, int num_cells, int num_channels,
                                     double snr_db) {
    check_sizes(num_cells, num_channels);
    Rng rng(seed);
    UtilityProfile p{RealMatrix(num_cells, num_channels)};
    for (int l = 0; l < num_cells; ++l) {
        for (int s = 0; s < num_channels - 1; ++s) {
            double u = 0.0;
            while (!(u > 0.0)) u = shannon_rate(rng.exponential(), snr_db);
            p.utilities(l, s) = u;
        }
    }
    return p;
}

Instance gen_instance(const GenConfig& cfg) {
    cfg.validate();
    ConstraintGraph graph = gen_graph(child_seed(cfg.seed, 1), cfg.num_cells, cfg.graph);
    const std::uint64_t profile_seed = child_seed(cfg.seed, 2);
    Profile profile = std::visit(
        overloaded{
            [&](const profile_kind::RankingUniform&) -> Profile {
                return gen_ranking_profile(profile_seed, cfg.num_cells, cfg.num_channels);
            },
            [&](const profile_kind::UtilityShannon& u) -> Profile {
                return gen_shannon_utilities(profile_seed, cfg.num_cells, cfg.num_channels,
                                             u.snr_db);
            },
        },
        cfg.profile);
    return Instance(cfg.num_cells, cfg.num_channels, std::move(graph), std::move(profile));
}

RankingProfile theorem2_profile() {
    constexpr int L = 5;
    constexpr int S = 3;
    constexpr int cell[L][S] = {{1, 2, 3}, {2, 1, 3}, {1, 2, 3}, {2, 1, 3}, {1, 2, 3}};
    constexpr int channel[L][S] = {{2, 5, 1}, {4, 2, 2}, {3, 1, 3}, {1, 4, 4}, {5, 3, 5}};
    RankingProfile p{IntMatrix(L, S), IntMatrix(L, S)};
    for (int l = 0; l < L; ++l) {
        for (int s = 0; s < S; ++s) {
            p.cell_ranks(l, s) = cell[l][s];
            p.channel_ranks(l, s) = channel[l][s];
        }
    }
    return p;
}

Instance theorem2_instance(ConstraintGraph graph) {
    return Instance(5, 3, std::move(graph), theorem2_profile());
}

}  // namespace spp
