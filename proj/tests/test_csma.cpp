#include "doctest.h"

#include "fixtures.hpp"
#include "spp/algorithms.hpp"
#include "spp/csma_sim.hpp"
#include "spp/rng.hpp"

using namespace spp;
using fixtures::matching;

TEST_CASE("backoff is reciprocal utility") {
    CHECK(backoff(1.0) == 1.0);
    CHECK(backoff(2.0) == 0.5);
    CHECK(backoff(3.0) < backoff(2.5));
    CHECK_THROWS_AS(backoff(0.0), std::invalid_argument);
    CHECK_THROWS_AS(backoff(-1.0), std::invalid_argument);
}

TEST_CASE("single cell transmits once") {
    const Instance inst = fixtures::utility_instance(1, 2, {}, {{5, 0}});
    for (SimMode mode : {SimMode::carrier_sense, SimMode::control_messages}) {
        const SimTrace t = simulate_csma(inst, mode);
        CHECK(t.transmit_order() == std::vector<std::pair<int, int>>{{0, 0}});
        CHECK(t.final_matching == matching({0}));
        CHECK(t.events.front().time == 0.2);
    }
}

TEST_CASE("contending neighbours") {
    const Instance inst = fixtures::utility_instance(2, 2, {{0, 1}}, {{5, 0}, {3, 0}});
    const SimTrace sensed = simulate_csma(inst, SimMode::carrier_sense);
    REQUIRE(sensed.events.size() == 2);
    CHECK(sensed.events[0].kind == SimEventKind::transmit);
    CHECK(sensed.events[0].cell == 0);
    CHECK(sensed.events[1].kind == SimEventKind::sense_busy);
    CHECK(sensed.events[1].cell == 1);
    CHECK(sensed.final_matching == matching({0, 1}));

    const SimTrace messaged = simulate_csma(inst, SimMode::control_messages);
    REQUIRE(messaged.events.size() == 2);
    CHECK(messaged.events[1].kind == SimEventKind::control_message);
    CHECK(messaged.final_matching == dssar(inst));
}

TEST_CASE("carrier sensing needs distinct utilities") {
    const Instance tied = fixtures::utility_instance(2, 2, {}, {{4, 0}, {4, 0}});
    CHECK_THROWS_AS(simulate_csma(tied, SimMode::carrier_sense), std::invalid_argument);
    CHECK(simulate_csma(tied, SimMode::control_messages).final_matching == dssar(tied));
    const Instance ranking = fixtures::random_instance(1, 3, 3, graph_kind::Empty{}, true);
    CHECK_THROWS_AS(simulate_csma(ranking, SimMode::control_messages), std::invalid_argument);
}

TEST_CASE("both mechanisms reproduce the centralised greedy run") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(seed);
        const int L = static_cast<int>(rng.uniform_int(1, 25));
        const int S = static_cast<int>(rng.uniform_int(2, 6));
        const Instance inst = fixtures::random_instance(seed, L, S, graph_kind::Geometric{}, false);
        const auto greedy = dssar_trace(inst);
        for (SimMode mode : {SimMode::carrier_sense, SimMode::control_messages}) {
            const SimTrace t = simulate_csma(inst, mode);
            CHECK(t.final_matching == greedy.matching);
            CHECK(t.transmit_order() == greedy.assignments);

            double last = 0.0;
            std::vector<std::vector<char>> taken(L, std::vector<char>(S, 0));
            for (const auto& e : t.events) {
                CHECK(e.time >= last);
                last = e.time;
                if (e.kind != SimEventKind::transmit) continue;
                for (int n : inst.constraints().neighbors(e.cell)) CHECK_FALSE(taken[n][e.channel]);
                taken[e.cell][e.channel] = 1;
            }
            const auto order = t.transmit_order();
            for (std::size_t i = 1; i < order.size(); ++i) {
                const auto& u = inst.utility().utilities;
                CHECK(u(order[i].first, order[i].second) < u(order[i - 1].first, order[i - 1].second));
            }
        }
    }
}

TEST_CASE("trace CSV") {
    const Instance inst = fixtures::utility_instance(2, 2, {{0, 1}}, {{4, 0}, {2, 0}});
    const std::string csv = trace_to_csv(simulate_csma(inst, SimMode::carrier_sense));
    CHECK(csv == "time,kind,cell,channel\n0.25,transmit,1,1\n0.25,sense-busy,2,1\n");
    CHECK(std::string(to_string(SimMode::control_messages)) == "messages");
}
