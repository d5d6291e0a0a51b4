#include <cmath>

#include "doctest.h"

#include "fixtures.hpp"
#include "oracle.hpp"
#include "spp/algorithms.hpp"
#include "spp/harness.hpp"
#include "spp/metrics.hpp"
#include "spp/rng.hpp"

using namespace spp;
using fixtures::matching;

namespace {

std::vector<int> top_choices(const Instance& inst) {
    std::vector<int> top(inst.num_cells(), 0);
    const PreferenceOracle pref(inst);
    for (int l = 0; l < inst.num_cells(); ++l) {
        for (int s = 1; s < inst.num_real_channels(); ++s) {
            if (pref.cell_prefers(l, s, top[l])) top[l] = s;
        }
    }
    return top;
}

Instance small_random(std::uint64_t seed, bool ranking) {
    Rng rng(seed);
    const int L = static_cast<int>(rng.uniform_int(1, 6));
    const int S = static_cast<int>(rng.uniform_int(2, 4));
    return fixtures::random_instance(seed, L, S, graph_kind::Geometric{0.5}, ranking);
}

}  // namespace

TEST_CASE("greedy utility assignment on hand-traced instances") {
    CHECK(dssar(fixtures::utility_instance(1, 2, {}, {{5, 0}})) == matching({0}));
    CHECK(dssar(fixtures::utility_instance(2, 2, {{0, 1}}, {{5, 0}, {3, 0}})) == matching({0, 1}));
    CHECK(dssar(fixtures::utility_instance(2, 3, {}, {{5, 2, 0}, {4, 3, 0}})) == matching({0, 0}));

    const auto trace = dssar_trace(fixtures::utility_instance(3, 3, {{0, 1}, {1, 2}},
                                                              {{5, 1, 0}, {4, 6, 0}, {2, 3, 0}}));
    // Picks (2,2) at 6, then (1,1) at 5; cell 3 lost channel 2 to its neighbour
    // and channel 1 is free for it since cells 1 and 3 are not adjacent.
    CHECK(trace.assignments == std::vector<std::pair<int, int>>{{1, 1}, {0, 0}, {2, 0}});
    CHECK(trace.matching == matching({0, 1, 0}));

    CHECK_THROWS_AS(dssar(theorem2_instance()), std::invalid_argument);
}

TEST_CASE("greedy ties go to the smallest cell then channel") {
    const auto trace = dssar_trace(fixtures::utility_instance(2, 3, {{0, 1}}, {{4, 4, 0}, {4, 4, 0}}));
    CHECK(trace.assignments.front() == std::pair<int, int>{0, 0});
    CHECK(trace.matching == matching({0, 1}));
}

TEST_CASE("greedy output is always stable") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Rng rng(seed);
        const int L = static_cast<int>(rng.uniform_int(1, 30));
        const int S = static_cast<int>(rng.uniform_int(2, 6));
        const Instance inst = fixtures::random_instance(seed, L, S, graph_kind::Geometric{}, false);
        const auto trace = dssar_trace(inst);
        CHECK(oracle::stable(oracle::raw(inst), trace.matching.assignment));
        CHECK(trace.iterations <= L);
        CHECK(static_cast<int>(trace.assignments.size()) <= L);
        CHECK(matched_count(inst, trace.matching) == static_cast<int>(trace.assignments.size()));
    }
}

TEST_CASE("re-propose and reject on empty graphs takes one pass") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = fixtures::random_instance(seed, 6, 4, graph_kind::Empty{}, true);
        const auto out = rpr(inst, 1);
        CHECK(out.matching.assignment == top_choices(inst));
        CHECK(out.stable);
        CHECK(out.iterations_used == 1);
    }
}

TEST_CASE("re-propose and reject matches deferred acceptance on complete graphs") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int L = 1 + static_cast<int>(seed % 8);
        const Instance inst = fixtures::random_instance(seed, L, L + 1, graph_kind::Complete{}, true);
        const auto out = rpr(inst);
        CHECK(out.converged);
        CHECK(out.stable);
        CHECK(out.matching == gale_shapley_reference(inst));
    }
}

TEST_CASE("seeded three-cell complete graph settles within three passes") {
    const Instance inst = fixtures::random_instance(1, 3, 4, graph_kind::Complete{}, true);
    const auto out = rpr(inst, 3);
    CHECK(out.stable);
    CHECK(out.matching == gale_shapley_reference(inst));
}

TEST_CASE("three cells on a complete graph can need a fourth pass") {
    // Hand trace: after three passes the cells hold (1, virtual, 3) while
    // channel 2 is empty and cell 2 prefers it to virtual.
    const Instance inst = fixtures::ranking_instance(
        3, 4, {{0, 1}, {0, 2}, {1, 2}}, {{1, 3, 2, 4}, {2, 3, 1, 4}, {3, 2, 1, 4}},
        {{2, 1, 1, 1}, {3, 3, 3, 2}, {1, 2, 2, 3}});
    const auto three = rpr(inst, 3);
    CHECK(three.matching == matching({0, 3, 2}));
    CHECK_FALSE(three.stable);
    const auto report = check_stability(inst, three.matching);
    REQUIRE(report.blocking);
    CHECK(report.blocking->cell == 1);
    CHECK(report.blocking->channel == 1);

    const auto four = rpr(inst, 4);
    CHECK(four.matching == matching({0, 1, 2}));
    CHECK(four.stable);
    CHECK(four.matching == gale_shapley_reference(inst));
}

TEST_CASE("re-propose and reject cannot stabilise an unsolvable instance") {
    const auto search = counterexample_search();
    for (const auto& graph : search.unsolvable_graphs) {
        const Instance inst = theorem2_instance(graph);
        const auto out = rpr(inst, 15);
        CHECK_FALSE(out.stable);
        CHECK_FALSE(out.converged);
        CHECK(out.iterations_used == 15);
    }
}

TEST_CASE("re-propose and reject argument checks") {
    const Instance inst = theorem2_instance();
    CHECK_THROWS_AS(rpr(inst, 0), std::invalid_argument);
    CHECK_THROWS_AS(rpr(fixtures::utility_instance(1, 2, {}, {{1, 0}}), 1), std::invalid_argument);
    RprOptions opts;
    opts.channel_order = {0, 0};
    CHECK_THROWS_AS(rpr(inst, opts), std::invalid_argument);
    opts.channel_order = {1, 0};
    CHECK_NOTHROW(rpr(inst, opts));
    CHECK(rpr(inst).converged);
}

TEST_CASE("re-propose and reject: convergence implies stability") {
    int converged = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(seed);
        const int L = static_cast<int>(rng.uniform_int(2, 12));
        const int S = static_cast<int>(rng.uniform_int(2, 5));
        const Instance inst = fixtures::random_instance(seed, L, S, graph_kind::Geometric{0.4}, true);
        const int T = static_cast<int>(rng.uniform_int(1, L * S));
        const auto out = rpr(inst, T);
        CHECK(out.iterations_used <= T);
        CHECK(out.stable == oracle::stable(oracle::raw(inst), out.matching.assignment));
        CHECK(is_harmonious(inst, out.matching));
        if (out.converged) {
            ++converged;
            CHECK(out.stable);
        }
    }
    CHECK(converged > 0);
}

TEST_CASE("random matching") {
    CHECK(random_matching(fixtures::utility_instance(1, 2, {}, {{1, 0}}), 3) == matching({0}));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance inst = fixtures::random_instance(seed, 7, 2, graph_kind::Complete{}, true);
        const Matching m = random_matching(inst, seed);
        CHECK(matched_count(inst, m) == 1);
    }
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Instance inst = small_random(seed, seed % 2 == 0);
        const Matching m = random_matching(inst, seed);
        CHECK(is_harmonious(inst, m));
        CHECK(m == random_matching(inst, seed));
    }
}

TEST_CASE("random matching is maximal") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = small_random(seed, true);
        const Matching m = random_matching(inst, seed);
        for (int l = 0; l < inst.num_cells(); ++l) {
            if (m[l] != inst.virtual_channel()) continue;
            for (int s = 0; s < inst.num_real_channels(); ++s) {
                Matching more = m;
                more[l] = s;
                CHECK_FALSE(is_harmonious(inst, more));
            }
        }
    }
}

TEST_CASE("best of random") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Instance inst = small_random(seed, seed % 2 == 1);
        CHECK(best_of_random(inst, seed, 1) == random_matching(inst, child_seed(seed, 1)));

        const Matching best = best_of_random(inst, seed);
        CHECK(is_harmonious(inst, best));
        double top = -1.0;
        for (int k = 1; k <= inst.num_cells(); ++k) {
            const auto run = random_matching(inst, child_seed(seed, static_cast<std::uint64_t>(k)));
            top = std::max(top, oracle::value(oracle::raw(inst), run.assignment));
        }
        CHECK(oracle::value(oracle::raw(inst), best.assignment) == doctest::Approx(top).epsilon(1e-12));
        CHECK(objective(inst, best) >= objective(inst, random_matching(inst, child_seed(seed, 1))));
    }
    CHECK_THROWS_AS(best_of_random(theorem2_instance(), 1, -1), std::invalid_argument);
}

TEST_CASE("top-ranked proposal") {
    const Instance empty = fixtures::random_instance(4, 6, 4, graph_kind::Empty{}, true);
    CHECK(top_ranked_proposal(empty).assignment == top_choices(empty));

    // Every cell's favourite is channel 1; channel 1 likes cell 3 most.
    const Instance crowded = fixtures::ranking_instance(
        3, 3, {{0, 1}, {0, 2}, {1, 2}}, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}},
        {{2, 1, 1}, {3, 2, 2}, {1, 3, 3}});
    CHECK(top_ranked_proposal(crowded) == matching({2, 2, 0}));

    const Instance apart = fixtures::ranking_instance(2, 3, {{0, 1}}, {{1, 2, 3}, {2, 1, 3}},
                                                      {{1, 1, 1}, {2, 2, 2}});
    CHECK(top_ranked_proposal(apart) == matching({0, 1}));

    const Instance util = fixtures::utility_instance(2, 3, {{0, 1}}, {{1, 3, 0}, {2, 5, 0}});
    CHECK(top_ranked_proposal(util) == matching({2, 1}));

    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = small_random(seed, seed % 2 == 0);
        CHECK(is_harmonious(inst, top_ranked_proposal(inst)));
    }
}

TEST_CASE("exhaustive optimum") {
    const Instance pair = fixtures::utility_instance(2, 2, {{0, 1}}, {{5, 0}, {3, 0}});
    const auto r = exhaustive_optimal_welfare(pair);
    CHECK(r.best_value == 5.0);
    CHECK(r.best_matching == matching({0, 1}));
    CHECK(r.harmonious_count == 3);

    const Instance empty = fixtures::random_instance(8, 4, 3, graph_kind::Empty{}, false);
    double expected = 0.0;
    for (int l = 0; l < 4; ++l) {
        expected += std::max(empty.utility().utilities(l, 0), empty.utility().utilities(l, 1));
    }
    CHECK(exhaustive_optimal_welfare(empty).best_value == doctest::Approx(expected).epsilon(1e-14));

    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = small_random(seed, seed % 2 == 0);
        const auto best = exhaustive_optimal_welfare(inst);
        CHECK(best.best_value == doctest::Approx(oracle::best_value(inst)).epsilon(1e-12));
        CHECK(is_harmonious(inst, best.best_matching));
    }
}

TEST_CASE("exhaustive search enforces its cap") {
    const Instance big = fixtures::random_instance(1, 20, 3, graph_kind::Empty{}, true);
    CHECK(assignment_space_size(big) == 3486784401ULL);
    CHECK_THROWS_AS(exhaustive_optimal_welfare(big), SizeLimitError);
    CHECK_THROWS_AS(exhaustive_stable_search(big), SizeLimitError);
    CHECK_THROWS_AS(exhaustive_stable_search(theorem2_instance(), 242), SizeLimitError);
    CHECK_NOTHROW(exhaustive_stable_search(theorem2_instance(), 243));
    const Instance huge = fixtures::random_instance(1, 70, 3, graph_kind::Empty{}, true);
    CHECK(assignment_space_size(huge) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("exhaustive stable search agrees with brute force") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = small_random(seed, seed % 2 == 0);
        const auto expected = oracle::stable_set(inst);
        const auto r = exhaustive_stable_search(inst, kDefaultOracleCap, true);
        CHECK(r.stable_set_size == expected.size());
        CHECK(r.solvable == !expected.empty());
        REQUIRE(r.stable_set.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(r.stable_set[i].assignment == expected[i]);
        }
        if (!expected.empty()) CHECK(r.best_matching.assignment == expected.front());
    }
}

TEST_CASE("stable search on structured graphs") {
    const Instance empty = fixtures::random_instance(3, 5, 3, graph_kind::Empty{}, true);
    const auto r = exhaustive_stable_search(empty, kDefaultOracleCap, true);
    CHECK(r.solvable);
    const Matching tops{top_choices(empty)};
    CHECK(std::find(r.stable_set.begin(), r.stable_set.end(), tops) != r.stable_set.end());

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance complete = fixtures::random_instance(seed, 4, 5, graph_kind::Complete{}, true);
        const auto c = exhaustive_stable_search(complete, kDefaultOracleCap, true);
        CHECK(c.solvable);
        const Matching gs = gale_shapley_reference(complete);
        CHECK(std::find(c.stable_set.begin(), c.stable_set.end(), gs) != c.stable_set.end());
    }
}

TEST_CASE("deferred acceptance reference") {
    CHECK(gale_shapley_reference(fixtures::ranking_instance(1, 2, {}, {{1, 2}}, {{1, 1}})) ==
          matching({0}));
    const Instance aligned = fixtures::ranking_instance(2, 3, {{0, 1}}, {{1, 2, 3}, {2, 1, 3}},
                                                        {{1, 2, 1}, {2, 1, 2}});
    CHECK(gale_shapley_reference(aligned) == matching({0, 1}));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = fixtures::random_instance(seed, 3, 4, graph_kind::Complete{}, true);
        CHECK(oracle::stable(oracle::raw(inst), gale_shapley_reference(inst).assignment));
    }
    CHECK_THROWS_AS(gale_shapley_reference(fixtures::random_instance(1, 3, 3, graph_kind::Complete{}, true)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gale_shapley_reference(fixtures::random_instance(1, 3, 4, graph_kind::Empty{}, true)),
                    std::invalid_argument);
}

TEST_CASE("channel preference order") {
    const Instance inst = theorem2_instance();
    CHECK(channel_preference_order(inst, 0) == std::vector<int>{3, 0, 2, 1, 4});
    CHECK(channel_preference_order(inst, 1) == std::vector<int>{2, 1, 4, 3, 0});
    const Instance util = fixtures::utility_instance(3, 2, {}, {{1, 0}, {3, 0}, {1, 0}});
    CHECK(channel_preference_order(util, 0) == std::vector<int>{1, 0, 2});
}
