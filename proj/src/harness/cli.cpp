#include "spp/cli.hpp"

#include <cstdlib>

#include "CLI11.hpp"
#include "spp/csma_sim.hpp"
#include "spp/harness.hpp"
#include "spp/instance_io.hpp"

namespace spp {

namespace {

constexpr std::uint64_t kFallbackSeed = 1;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SPP_SEED")) {
        try {
            std::size_t used = 0;
            const auto value = std::stoull(env, &used);
            if (used == std::string(env).size()) return value;
        } catch (const std::exception&) {
        }
        throw CLI::ValidationError("SPP_SEED", std::string("not an unsigned integer: ") + env);
    }
    return kFallbackSeed;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

struct GenArgs {
    int cells = 5;
    int channels = 3;
    std::string graph = "geometric";
    double radius = kDefaultRadius;
    std::vector<int> sizes;
    std::string profile = "ranking";
    double snr_db = kDefaultSnrDb;
    std::string out;
};

struct SolveArgs {
    std::string instance;
    std::string algorithm;
    int iterations = 0;
    int repeats = 0;
    std::uint64_t oracle_cap = kDefaultOracleCap;
    std::string out;
};

struct VerifyArgs {
    std::string instance;
    std::string matching;
};

struct SimulateArgs {
    std::string instance;
    std::string mode = "csma";
    std::string out;
};

struct ExperimentArgs {
    std::string config;
    std::string out_dir;
    int threads = 0;
    int trials = 0;
};

int cmd_gen(const GenArgs& a, std::uint64_t seed, std::ostream& out) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_cells = a.cells;
    cfg.num_channels = a.channels;
    if (a.graph == "geometric") {
        cfg.graph = graph_kind::Geometric{a.radius};
    } else if (a.graph == "empty") {
        cfg.graph = graph_kind::Empty{};
    } else if (a.graph == "complete") {
        cfg.graph = graph_kind::Complete{};
    } else if (a.graph == "disjoint-complete") {
        cfg.graph = graph_kind::DisjointComplete{a.sizes};
    } else {
        cfg.graph = graph_kind::RandomForest{};
    }
    if (a.profile == "ranking") {
        cfg.profile = profile_kind::RankingUniform{};
    } else {
        cfg.profile = profile_kind::UtilityShannon{a.snr_db};
    }
    cfg.validate();
    emit(out, a.out, instance_to_json(gen_instance(cfg)));
    return kExitOk;
}

int cmd_solve(const SolveArgs& a, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(a.instance);
    const Algorithm alg = *parse_algorithm(a.algorithm);
    Matching m;
    std::string extra;
    switch (alg) {
        case Algorithm::dssar: m = dssar(inst); break;
        case Algorithm::rpr: {
            RprOptions opts;
            opts.max_iterations = a.iterations;
            const RprOutcome r = rpr(inst, opts);
            m = r.matching;
            extra = "iterations: " + std::to_string(r.iterations_used) +
                    (r.converged ? " (converged)\n" : " (iteration limit reached)\n");
            break;
        }
        case Algorithm::random: m = random_matching(inst, seed); break;
        case Algorithm::best_of_random: m = best_of_random(inst, seed, a.repeats); break;
        case Algorithm::top_ranked: m = top_ranked_proposal(inst); break;
        case Algorithm::optimal: m = exhaustive_optimal_welfare(inst, a.oracle_cap).best_matching; break;
    }
    const std::string text = matching_to_json(m);
    const VerifyReport report = verify_matching(inst, m);
    const WelfareReport w = welfare_report(inst, m);
    std::string summary = extra + report.text;
    if (inst.has_ranking()) {
        summary += "total welfare: " + format_real(w.total_welfare_norm) + "\n";
    } else {
        summary += "sum rate: " + format_real(w.sum_rate) + "\n";
    }
    if (a.out.empty() || a.out == "-") {
        out << text;
        err << summary;
    } else {
        write_text_file(a.out, text);
        out << summary;
    }
    return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const VerifyReport report = verify_files(a.instance, a.matching);
    out << report.text;
    return report.stable ? kExitOk : kExitUnstable;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(a.instance);
    const SimMode mode = a.mode == "csma" ? SimMode::carrier_sense : SimMode::control_messages;
    const SimTrace trace = simulate_csma(inst, mode);
    emit(out, a.out, trace_to_csv(trace));
    std::ostream& note = (a.out.empty() || a.out == "-") ? err : out;
    note << "final matching: " << matching_to_json(trace.final_matching);
    note << "matches greedy assignment: " << (trace.final_matching == dssar(inst) ? "yes" : "no")
         << "\n";
    return kExitOk;
}

int cmd_experiment(const ExperimentArgs& a, const std::optional<std::uint64_t>& seed,
                   std::ostream& out) {
    ExperimentConfig cfg = experiment_config_from_json(read_text_file(a.config), a.config);
    if (seed) cfg.seed = *seed;
    if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
    if (a.threads > 0) cfg.threads = a.threads;
    if (a.trials > 0) cfg.trials = a.trials;
    if (cfg.output_dir.empty()) cfg.output_dir = "results";
    cfg.validate();
    const ExperimentReport report = run_experiment(cfg);

    out << "config " << config_digest(cfg) << ", " << cfg.trials << " trials, output in "
        << cfg.output_dir.string() << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %10s %10s %10s %10s %8s %10s\n", "algorithm",
                  "total", "s_welfare", "l_welfare", "sum_rate", "stable", "mean_ms");
    out << line;
    for (const auto& s : report.summary) {
        std::snprintf(line, sizeof line, "%-16s %10.4f %10.4f %10.4f %10.4f %8.4f %10.4f\n",
                      to_string(s.algorithm), s.mean_total_welfare, s.mean_s_welfare,
                      s.mean_l_welfare, s.mean_sum_rate, s.stable_rate,
                      s.mean_wall_seconds * 1e3);
        out << line;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable channel assignment under interference constraints", "spp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::optional<std::uint64_t> seed_flag;
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_flag, "RNG seed (default: $SPP_SEED or 1)");
    };

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("-L,--cells", gen.cells, "Number of cells")->check(CLI::PositiveNumber);
    gen_cmd->add_option("-S,--channels", gen.channels, "Channels including the virtual one")
        ->check(CLI::Range(2, 1 << 20));
    gen_cmd->add_option("--graph", gen.graph, "Constraint graph family")
        ->check(CLI::IsMember({"geometric", "empty", "complete", "disjoint-complete",
                               "random-forest"}));
    gen_cmd->add_option("--radius", gen.radius, "Geometric connection radius");
    gen_cmd->add_option("--sizes", gen.sizes, "Clique sizes for disjoint-complete");
    gen_cmd->add_option("--profile", gen.profile, "Preference model")
        ->check(CLI::IsMember({"ranking", "utility"}));
    gen_cmd->add_option("--snr-db", gen.snr_db, "SNR for Shannon utilities");
    gen_cmd->add_option("-o,--out", gen.out, "Output file (default: stdout)");
    add_seed(gen_cmd);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run one algorithm on an instance file");
    solve_cmd->add_option("-i,--instance", solve.instance, "Instance JSON")->required();
    solve_cmd->add_option("--alg", solve.algorithm, "Algorithm")
        ->required()
        ->check(CLI::IsMember({"dssar", "rpr", "random", "best-of-random", "top-ranked",
                               "optimal"}));
    solve_cmd->add_option("-T,--iterations", solve.iterations,
                          "RP&R outer passes (default L*S)")
        ->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--repeats", solve.repeats, "Best-of-random repeats (default L)")
        ->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--oracle-cap", solve.oracle_cap, "Exhaustive search limit");
    solve_cmd->add_option("-o,--out", solve.out, "Matching output file (default: stdout)");
    add_seed(solve_cmd);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check a matching for harmony and stability");
    verify_cmd->add_option("-i,--instance", verify.instance, "Instance JSON")->required();
    verify_cmd->add_option("-m,--matching", verify.matching, "Matching JSON")->required();
    add_seed(verify_cmd);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Event-driven distributed greedy assignment");
    sim_cmd->add_option("-i,--instance", sim.instance, "Utility instance JSON")->required();
    sim_cmd->add_option("--mode", sim.mode, "Coordination mechanism")
        ->check(CLI::IsMember({"csma", "messages"}));
    sim_cmd->add_option("-o,--out", sim.out, "Trace CSV (default: stdout)");
    add_seed(sim_cmd);

    ExperimentArgs exp;
    auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo comparison of algorithms");
    exp_cmd->add_option("-c,--config", exp.config, "Experiment config JSON")->required();
    exp_cmd->add_option("-o,--out-dir", exp.out_dir, "Directory for the CSV files");
    exp_cmd->add_option("--threads", exp.threads, "Worker threads")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--trials", exp.trials, "Override the trial count")
        ->check(CLI::PositiveNumber);
    add_seed(exp_cmd);

    std::string cx_out;
    auto* cx_cmd = app.add_subcommand("counterexample",
                                      "List 5-cell graphs with no stable matching");
    cx_cmd->add_option("-o,--out", cx_out, "Report file (default: stdout)");
    add_seed(cx_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        err << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
        if (gen_cmd->parsed()) return cmd_gen(gen, seed, out);
        if (solve_cmd->parsed()) return cmd_solve(solve, seed, out, err);
        if (verify_cmd->parsed()) return cmd_verify(verify, out);
        if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
        if (exp_cmd->parsed()) return cmd_experiment(exp, seed_flag, out);
        if (cx_cmd->parsed()) {
            emit(out, cx_out, counterexample_report(counterexample_search()));
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: parse: " << e.what() << "\n";
        return kExitFailure;
    } catch (const ValidationError& e) {
        err << "error: validation: " << e.what() << "\n";
        return kExitFailure;
    } catch (const ConfigError& e) {
        err << "error: config: " << e.what() << "\n";
        return kExitFailure;
    } catch (const SizeLimitError& e) {
        err << "error: size limit: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: invalid argument: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace spp
