// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <thread>

#include "spp/algorithms.hpp"
#include "spp/csma_sim.hpp"
#include "spp/generators.hpp"
#include "spp/harness.hpp"
#include "spp/instance_io.hpp"
#include "spp/metrics.hpp"
#include "spp/rng.hpp"

using namespace spp;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

int draw(Rng& rng, int lo, int hi) { return static_cast<int>(rng.uniform_int(lo, hi)); }

Instance make(std::uint64_t seed, int L, int S, GraphKind graph, bool ranking) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_cells = L;
    cfg.num_channels = S;
    cfg.graph = std::move(graph);
    if (ranking) {
        cfg.profile = profile_kind::RankingUniform{};
    } else {
        cfg.profile = profile_kind::UtilityShannon{};
    }
    return gen_instance(cfg);
}

int worker_count() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

Outcome greedy_solves() {
    const auto start = Clock::now();
    int failures = 0;
    constexpr int kInstances = 10'000;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(child_seed(101, i));
        const int L = draw(rng, 3, 100);
        const int S = draw(rng, 2, 10);
        const Instance inst = make(child_seed(102, i), L, S, graph_kind::Geometric{}, false);
        const Matching m = dssar(inst);
        if (!is_harmonious(inst, m) || !is_stable(inst, m)) ++failures;
    }
    const double t = seconds_since(start);
    return {failures == 0 && t < 30.0,
            std::to_string(kInstances - failures) + "/" + std::to_string(kInstances) +
                " stable, " + fmt("%.2f s", t)};
}

Outcome distributed_equivalence() {
    int failures = 0;
    int skipped = 0;
    constexpr int kInstances = 1'000;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(child_seed(201, i));
        const int L = draw(rng, 1, 40);
        const int S = draw(rng, 2, 8);
        const Instance inst = make(child_seed(202, i), L, S, graph_kind::Geometric{}, false);
        const DssarTrace greedy = dssar_trace(inst);
        for (SimMode mode : {SimMode::carrier_sense, SimMode::control_messages}) {
            try {
                const SimTrace t = simulate_csma(inst, mode);
                if (t.final_matching != greedy.matching || t.transmit_order() != greedy.assignments) {
                    ++failures;
                }
            } catch (const std::invalid_argument&) {
                ++skipped;
            }
        }
    }
    return {failures == 0 && skipped == 0,
            std::to_string(2 * kInstances - failures - skipped) + "/" +
                std::to_string(2 * kInstances) + " runs identical (both modes)"};
}

Outcome empty_graph_one_pass() {
    int failures = 0;
    constexpr int kInstances = 1'000;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(child_seed(301, i));
        const int L = draw(rng, 1, 30);
        const int S = draw(rng, 2, 8);
        const Instance inst = make(child_seed(302, i), L, S, graph_kind::Empty{}, true);
        const RprOutcome out = rpr(inst, 1);
        bool ok = out.stable;
        for (int l = 0; l < L; ++l) {
            ok = ok && inst.ranking().cell_ranks(l, out.matching[l]) == 1;
        }
        if (!ok) ++failures;
    }
    return {failures == 0,
            std::to_string(kInstances - failures) + "/" + std::to_string(kInstances) +
                " at first choice and stable"};
}

Outcome complete_graph_matches_deferred_acceptance() {
    int failures = 0;
    constexpr int kInstances = 1'000;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(child_seed(401, i));
        const int L = draw(rng, 1, 8);
        const Instance inst = make(child_seed(402, i), L, L + 1, graph_kind::Complete{}, true);
        const RprOutcome out = rpr(inst, L);
        if (!out.stable || out.matching != gale_shapley_reference(inst)) {
            ++failures;
            std::cerr << "complete-graph instance " << i << " differs at T=L:\n"
                      << instance_to_json(inst);
        }
    }
    return {failures == 0,
            std::to_string(kInstances - failures) + "/" + std::to_string(kInstances) +
                " stable and equal to deferred acceptance"};
}

Outcome disjoint_cliques() {
    int unstable = 0;
    int mismatched = 0;
    constexpr int kInstances = 1'000;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(child_seed(501, i));
        const int cliques = draw(rng, 2, 4);
        std::vector<int> sizes;
        int L = 0;
        int largest = 0;
        for (int c = 0; c < cliques; ++c) {
            sizes.push_back(draw(rng, 1, 6));
            L += sizes.back();
            largest = std::max(largest, sizes.back());
        }
        const int S = draw(rng, 2, 7);
        const Instance inst = make(child_seed(502, i), L, S, graph_kind::DisjointComplete{sizes}, true);
        const RprOutcome whole = rpr(inst, largest);
        if (!whole.stable) {
            ++unstable;
            std::cerr << "disjoint-clique instance " << i << " not stabilised within T=" << largest
                      << ":\n" << instance_to_json(inst);
        }
        bool same = true;
        for (const auto& component : connected_components(inst.constraints())) {
            const RprOutcome alone = rpr(restrict_to_cells(inst, component), largest);
            for (std::size_t k = 0; k < component.size(); ++k) {
                same = same && alone.matching[static_cast<int>(k)] == whole.matching[component[k]];
            }
        }
        if (!same) ++mismatched;
    }
    return {unstable == 0 && mismatched == 0,
            std::to_string(kInstances - unstable) + "/" + std::to_string(kInstances) +
                " stable, " + std::to_string(kInstances - mismatched) + "/" +
                std::to_string(kInstances) + " component-isolated"};
}

Outcome forests() {
    int failures = 0;
    constexpr int kInstances = 10'000;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(child_seed(601, i));
        const int L = draw(rng, 2, 40);
        const int S = draw(rng, 2, 8);
        const Instance inst = make(child_seed(602, i), L, S, graph_kind::RandomForest{}, true);
        const RprOutcome out = rpr(inst, L);
        if (!out.stable) {
            ++failures;
            std::cerr << "forest instance " << i << " not stabilised within T=L:\n"
                      << instance_to_json(inst);
        }
    }
    return {failures == 0,
            std::to_string(kInstances - failures) + "/" + std::to_string(kInstances) + " stable"};
}

Outcome unsolvable_graphs() {
    const auto start = Clock::now();
    const CounterexampleResult r = counterexample_search();
    const double t = seconds_since(start);
    const bool empty_excluded = std::find(r.unsolvable_masks.begin(), r.unsolvable_masks.end(),
                                          0u) == r.unsolvable_masks.end();
    return {!r.unsolvable_masks.empty() && empty_excluded && t < 10.0,
            std::to_string(r.unsolvable_masks.size()) + " of " +
                std::to_string(r.graphs_examined) + " graphs unsolvable, empty graph " +
                (empty_excluded ? "excluded" : "INCLUDED") + ", " + fmt("%.3f s", t)};
}

ExperimentConfig quality_config(bool ranking) {
    ExperimentConfig cfg;
    cfg.trials = 2'000;
    cfg.min_cells = 3;
    cfg.max_cells = 9;
    cfg.min_channels = 2;
    cfg.max_channels = 3;
    cfg.seed = 1;
    cfg.threads = worker_count();
    if (ranking) {
        cfg.algorithms = {Algorithm::rpr, Algorithm::best_of_random, Algorithm::top_ranked,
                          Algorithm::random, Algorithm::optimal};
    } else {
        cfg.profile = profile_kind::UtilityShannon{};
        cfg.algorithms = {Algorithm::dssar, Algorithm::best_of_random, Algorithm::top_ranked,
                          Algorithm::random, Algorithm::optimal};
    }
    return cfg;
}

Outcome quality(bool ranking) {
    const ExperimentConfig cfg = quality_config(ranking);
    const ExperimentReport report = run_experiment(cfg);
    auto value = [&](Algorithm a) {
        const AlgorithmSummary* s = report.find(a);
        return ranking ? s->mean_total_welfare : s->mean_sum_rate;
    };
    const Algorithm ours = ranking ? Algorithm::rpr : Algorithm::dssar;
    const double ratio = value(ours) / value(Algorithm::optimal);
    const double bor = value(Algorithm::best_of_random);
    const double top = value(Algorithm::top_ranked);
    const double rnd = value(Algorithm::random);
    const bool ordered = value(ours) > bor && bor > top && top > rnd;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "ratio %.4f (need >= 0.93); means %s %.4f > best_of_random %.4f > top_ranked "
                  "%.4f > random %.4f: %s",
                  ratio, to_string(ours), value(ours), bor, top, rnd, ordered ? "yes" : "no");
    return {ratio >= 0.93 && ordered, buf};
}

Outcome oracle_consistency() {
    int checked = 0;
    int above = 0;
    int outside = 0;
    for (bool ranking : {false, true}) {
        int made = 0;
        for (int i = 0; made < 200; ++i) {
            Rng rng(child_seed(ranking ? 1002 : 1001, i));
            const int L = draw(rng, 1, 10);
            const int S = draw(rng, 2, 6);
            const Instance inst =
                make(child_seed(ranking ? 1004 : 1003, i), L, S, graph_kind::Geometric{0.4}, ranking);
            if (assignment_space_size(inst) > 100'000) continue;
            ++made;
            const OracleResult best = exhaustive_optimal_welfare(inst, 100'000);
            std::vector<Matching> outputs{random_matching(inst, i), best_of_random(inst, i),
                                          top_ranked_proposal(inst)};
            if (ranking) {
                outputs.push_back(rpr(inst).matching);
            } else {
                const Matching greedy = dssar(inst);
                outputs.push_back(greedy);
                const OracleResult stable = exhaustive_stable_search(inst, 100'000, true);
                if (std::find(stable.stable_set.begin(), stable.stable_set.end(), greedy) ==
                    stable.stable_set.end()) {
                    ++outside;
                }
            }
            for (const Matching& m : outputs) {
                ++checked;
                const bool exceeds =
                    ranking ? ranking_welfare_key(inst, m) > ranking_welfare_key(inst, best.best_matching)
                            : objective(inst, m) > best.best_value;
                if (exceeds) ++above;
            }
        }
    }
    return {above == 0 && outside == 0,
            std::to_string(checked - above) + "/" + std::to_string(checked) +
                " outputs within the optimum, greedy output outside the stable set " +
                std::to_string(outside) + " times"};
}

Outcome determinism() {
    const auto root = std::filesystem::temp_directory_path() / "spp_acceptance_determinism";
    std::filesystem::remove_all(root);
    bool same = true;
    for (bool ranking : {true, false}) {
        ExperimentConfig cfg = quality_config(ranking);
        cfg.trials = 300;
        cfg.output_dir = root / (ranking ? "r1" : "u1");
        cfg.threads = 1;
        run_experiment(cfg);
        cfg.output_dir = root / (ranking ? "r2" : "u2");
        cfg.threads = worker_count();
        run_experiment(cfg);
        for (const char* f : {"trials.csv", "by_L.csv", "by_S.csv", "summary.csv"}) {
            same = same && read_text_file(root / (ranking ? "r1" : "u1") / f) ==
                               read_text_file(root / (ranking ? "r2" : "u2") / f);
        }
    }
    std::filesystem::remove_all(root);
    return {same, same ? "all 8 CSV files byte-identical across runs" : "CSV bytes differ"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"greedy utility assignment is stable on random geometric instances", greedy_solves},
        {"carrier-sense and control-message simulations reproduce the greedy run",
         distributed_equivalence},
        {"re-propose and reject stabilises empty graphs in one pass", empty_graph_one_pass},
        {"re-propose and reject equals deferred acceptance on complete graphs",
         complete_graph_matches_deferred_acceptance},
        {"re-propose and reject on disjoint cliques", disjoint_cliques},
        {"re-propose and reject on random forests", forests},
        {"unsolvable ranking instances exist on 5 cells", unsolvable_graphs},
        {"ranking-model welfare versus optimum and baselines", [] { return quality(true); }},
        {"utility-model sum rate versus optimum and baselines", [] { return quality(false); }},
        {"no algorithm beats the exhaustive optimum", oracle_consistency},
        {"experiment CSV output is deterministic", determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
                  << criteria[i].first << " (" << o.detail << ")" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
