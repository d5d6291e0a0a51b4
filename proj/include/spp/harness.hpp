// Monte Carlo experiment pipeline, unsolvable-instance search, and matching
// verification.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spp/algorithms.hpp"
#include "spp/core.hpp"
#include "spp/generators.hpp"
#include "spp/metrics.hpp"

namespace spp {

enum class Algorithm { dssar, rpr, random, best_of_random, top_ranked, optimal };

const char* to_string(Algorithm alg);
/// Accepts both "best_of_random" and "best-of-random" spellings.
std::optional<Algorithm> parse_algorithm(const std::string& name);

/// Raised for inconsistent experiment configurations, before any trial runs.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    int trials = 1;
    int min_cells = 3;
    int max_cells = 9;
    int min_channels = 2;
    int max_channels = 3;
    GraphKind graph = graph_kind::Geometric{};
    ProfileKind profile = profile_kind::RankingUniform{};
    std::vector<Algorithm> algorithms;
    std::uint64_t seed = 1;
    std::uint64_t oracle_cap = kDefaultOracleCap;
    std::filesystem::path output_dir;
    /// Worker threads; results do not depend on this.
    int threads = 1;

    /// Throws ConfigError.
    void validate() const;
};

/// Parses the JSON experiment config:
///   {"trials": 2000, "L_range": [3, 9], "S_range": [2, 3],
///    "graph": {"kind": "geometric", "radius": 0.3},
///    "profile": {"kind": "ranking_uniform"} | {"kind": "utility_shannon", "snr_db": 10},
///    "algorithms": ["rpr", "random", ...], "seed": 1, "oracle_cap": 10000000,
///    "output_dir": "out", "threads": 1}
ExperimentConfig experiment_config_from_json(std::string_view text,
                                             const std::string& source = "<config>");
/// Canonical JSON rendering; its digest is stamped into every CSV header.
std::string experiment_config_to_json(const ExperimentConfig& cfg);
/// FNV-1a 64 of the canonical rendering, as 16 hex digits.
std::string config_digest(const ExperimentConfig& cfg);

struct AlgorithmRecord {
    Algorithm algorithm;
    Matching matching;
    WelfareReport welfare;
    bool harmonious = false;
    bool stable = false;
    int iterations = 0;
    bool converged = true;
    double wall_seconds = 0.0;
};

struct TrialRecord {
    int trial = 0;
    int num_cells = 0;
    int num_channels = 0;
    std::vector<AlgorithmRecord> results;
};

/// One trial, reproducible from (cfg.seed, index) alone.
TrialRecord run_trial(const ExperimentConfig& cfg, int index);
/// The instance a trial draws.
Instance trial_instance(const ExperimentConfig& cfg, int index);

struct AlgorithmSummary {
    Algorithm algorithm;
    int count = 0;
    double mean_total_welfare = 0.0;
    double mean_s_welfare = 0.0;
    double mean_l_welfare = 0.0;
    double mean_sum_rate = 0.0;
    double stable_rate = 0.0;
    double nonconvergence_rate = 0.0;
    double mean_wall_seconds = 0.0;
};

struct ExperimentReport {
    std::vector<TrialRecord> trials;
    std::vector<AlgorithmSummary> summary;
    std::string trials_csv;
    std::string by_cells_csv;
    std::string by_channels_csv;
    std::string summary_csv;

    const AlgorithmSummary* find(Algorithm alg) const;
};

/// Runs all trials and renders the CSVs. When cfg.output_dir is set the
/// four files trials.csv, by_L.csv, by_S.csv and summary.csv are written.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct CounterexampleResult {
    /// Bitmasks over the 10 cell pairs (1,2),(1,3),...,(4,5) in that order.
    std::vector<unsigned> unsolvable_masks;
    std::vector<ConstraintGraph> unsolvable_graphs;
    /// One line per assignment of the first unsolvable graph, with the
    /// violated condition.
    std::vector<std::string> refutation_log;
    int graphs_examined = 0;
};

ConstraintGraph graph_from_mask(int num_cells, unsigned mask);

/// Tries every undirected graph on 5 cells with the fixed ranking matrices
/// and keeps those with no stable matching. Throws std::logic_error if none
/// exists.
CounterexampleResult counterexample_search();
std::string counterexample_report(const CounterexampleResult& result);

/// One-line description of why `matching` fails (or "stable").
std::string describe_verdict(const StabilityReport& report);

struct VerifyReport {
    bool admissible = false;
    bool harmonious = false;
    bool stable = false;
    std::string text;
};

VerifyReport verify_matching(const Instance& inst, const Matching& matching);
VerifyReport verify_files(const std::filesystem::path& instance_path,
                          const std::filesystem::path& matching_path);

}  // namespace spp
