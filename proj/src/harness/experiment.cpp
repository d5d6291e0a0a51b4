#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "spp/detail/overloaded.hpp"
#include "spp/harness.hpp"
#include "spp/instance_io.hpp"
#include "spp/rng.hpp"

namespace spp {

using detail::overloaded;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSizeStream = 0;
constexpr std::uint64_t kAlgorithmStream = 3;

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        out *= base;
    }
    return out;
}

[[noreturn]] void config_fail(const std::string& source, const std::string& field,
                              const std::string& what) {
    throw ConfigError(source + ": field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& source,
                    const std::string& prefix = "") {
    const std::string field = prefix.empty() ? key : prefix + "." + key;
    if (!obj.is_object()) config_fail(source, prefix.empty() ? "<root>" : prefix, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) config_fail(source, field, "missing");
    return *it;
}

int read_int(const json& v, const std::string& source, const std::string& field) {
    if (!v.is_number_integer()) config_fail(source, field, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        config_fail(source, field, "integer out of range");
    }
    return static_cast<int>(x);
}

std::pair<int, int> read_range(const json& v, const std::string& source, const std::string& field) {
    if (!v.is_array() || v.size() != 2) config_fail(source, field, "expected [min, max]");
    return {read_int(v[0], source, field + "[0]"), read_int(v[1], source, field + "[1]")};
}

std::string bool_str(bool b) { return b ? "1" : "0"; }

double mean(double sum, int count) { return count ? sum / count : 0.0; }

struct Accumulator {
    int count = 0;
    double total = 0.0;
    double s = 0.0;
    double l = 0.0;
    double rate = 0.0;
    int stable = 0;
    int nonconverged = 0;
    double seconds = 0.0;

    void add(const AlgorithmRecord& r) {
        ++count;
        total += r.welfare.total_welfare_norm;
        s += r.welfare.s_welfare_norm;
        l += r.welfare.l_welfare_norm;
        rate += r.welfare.sum_rate;
        stable += r.stable ? 1 : 0;
        nonconverged += r.converged ? 0 : 1;
        seconds += r.wall_seconds;
    }
};

std::string group_csv(const std::string& header_line, const std::string& key_name,
                      const std::map<int, std::vector<Accumulator>>& groups,
                      const std::vector<Algorithm>& algorithms) {
    std::string out = header_line;
    out += key_name +
           ",algorithm,count,mean_total_welfare_norm,mean_s_welfare_norm,mean_l_welfare_norm,"
           "mean_sum_rate,stable_rate\n";
    for (const auto& [key, accs] : groups) {
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            const Accumulator& acc = accs[a];
            if (acc.count == 0) continue;
            out += std::to_string(key) + ',' + to_string(algorithms[a]) + ',' +
                   std::to_string(acc.count) + ',' + format_real(mean(acc.total, acc.count)) +
                   ',' + format_real(mean(acc.s, acc.count)) + ',' +
                   format_real(mean(acc.l, acc.count)) + ',' +
                   format_real(mean(acc.rate, acc.count)) + ',' +
                   format_real(mean(acc.stable, acc.count)) + '\n';
        }
    }
    return out;
}

}  // namespace

const char* to_string(Algorithm alg) {
    switch (alg) {
        case Algorithm::dssar: return "dssar";
        case Algorithm::rpr: return "rpr";
        case Algorithm::random: return "random";
        case Algorithm::best_of_random: return "best_of_random";
        case Algorithm::top_ranked: return "top_ranked";
        case Algorithm::optimal: return "optimal";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    std::string n = name;
    for (char& c : n) {
        if (c == '-') c = '_';
    }
    for (Algorithm a : {Algorithm::dssar, Algorithm::rpr, Algorithm::random,
                        Algorithm::best_of_random, Algorithm::top_ranked, Algorithm::optimal}) {
        if (n == to_string(a)) return a;
    }
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (min_cells < 1 || min_cells > max_cells) throw ConfigError("invalid L_range");
    if (min_channels < 2 || min_channels > max_channels) throw ConfigError("invalid S_range");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (algorithms.empty()) throw ConfigError("no algorithms selected");

    GenConfig probe;
    probe.graph = graph;
    probe.profile = profile;
    probe.num_channels = min_channels;
    for (int L = min_cells; L <= max_cells; ++L) {
        probe.num_cells = L;
        try {
            probe.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("graph/profile parameters invalid for L=") +
                              std::to_string(L) + ": " + e.what());
        }
    }
    if (const auto* e = std::get_if<graph_kind::Explicit>(&graph)) {
        for (auto [a, b] : e->edges) {
            if (a < 0 || b < 0 || a >= min_cells || b >= min_cells || a == b) {
                throw ConfigError("explicit edge outside 1..L_min or self-loop");
            }
        }
    }

    const bool ranking = std::holds_alternative<profile_kind::RankingUniform>(profile);
    for (Algorithm a : algorithms) {
        if (a == Algorithm::dssar && ranking) {
            throw ConfigError("dssar requires a utility profile");
        }
        if (a == Algorithm::rpr && !ranking) {
            throw ConfigError("rpr requires a ranking profile");
        }
        if (a == Algorithm::optimal) {
            const std::uint64_t space =
                saturating_pow(static_cast<std::uint64_t>(max_channels), max_cells);
            if (space > oracle_cap) {
                throw ConfigError("optimal requested but S^L = " + std::to_string(max_channels) +
                                  "^" + std::to_string(max_cells) + " exceeds oracle_cap " +
                                  std::to_string(oracle_cap));
            }
        }
    }
}

ExperimentConfig experiment_config_from_json(std::string_view text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": malformed JSON (" + e.what() + ")");
    }
    ExperimentConfig cfg;
    cfg.trials = read_int(require(doc, "trials", source), source, "trials");
    std::tie(cfg.min_cells, cfg.max_cells) =
        read_range(require(doc, "L_range", source), source, "L_range");
    std::tie(cfg.min_channels, cfg.max_channels) =
        read_range(require(doc, "S_range", source), source, "S_range");

    const json& g = require(doc, "graph", source);
    const json& gk = require(g, "kind", source, "graph");
    if (!gk.is_string()) config_fail(source, "graph.kind", "expected a string");
    const std::string kind = gk.get<std::string>();
    if (kind == "geometric") {
        graph_kind::Geometric geo;
        if (g.contains("radius")) {
            if (!g["radius"].is_number()) config_fail(source, "graph.radius", "expected a number");
            geo.radius = g["radius"].get<double>();
        }
        cfg.graph = geo;
    } else if (kind == "empty") {
        cfg.graph = graph_kind::Empty{};
    } else if (kind == "complete") {
        cfg.graph = graph_kind::Complete{};
    } else if (kind == "disjoint_complete") {
        const json& sizes = require(g, "sizes", source, "graph");
        if (!sizes.is_array()) config_fail(source, "graph.sizes", "expected an array");
        graph_kind::DisjointComplete d;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            d.sizes.push_back(read_int(sizes[i], source, "graph.sizes[" + std::to_string(i) + "]"));
        }
        cfg.graph = d;
    } else if (kind == "random_forest") {
        cfg.graph = graph_kind::RandomForest{};
    } else if (kind == "explicit") {
        const json& edges = require(g, "edges", source, "graph");
        if (!edges.is_array()) config_fail(source, "graph.edges", "expected an array");
        graph_kind::Explicit ex;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string f = "graph.edges[" + std::to_string(i) + "]";
            if (!edges[i].is_array() || edges[i].size() != 2) config_fail(source, f, "expected a pair");
            ex.edges.emplace_back(read_int(edges[i][0], source, f) - 1,
                                  read_int(edges[i][1], source, f) - 1);
        }
        cfg.graph = ex;
    } else {
        config_fail(source, "graph.kind", "unknown kind '" + kind + "'");
    }

    const json& p = require(doc, "profile", source);
    const json& pk = require(p, "kind", source, "profile");
    if (!pk.is_string()) config_fail(source, "profile.kind", "expected a string");
    const std::string pkind = pk.get<std::string>();
    if (pkind == "ranking_uniform") {
        cfg.profile = profile_kind::RankingUniform{};
    } else if (pkind == "utility_shannon") {
        profile_kind::UtilityShannon u;
        if (p.contains("snr_db")) {
            if (!p["snr_db"].is_number()) config_fail(source, "profile.snr_db", "expected a number");
            u.snr_db = p["snr_db"].get<double>();
        }
        cfg.profile = u;
    } else {
        config_fail(source, "profile.kind", "unknown kind '" + pkind + "'");
    }

    const json& algs = require(doc, "algorithms", source);
    if (!algs.is_array()) config_fail(source, "algorithms", "expected an array");
    for (std::size_t i = 0; i < algs.size(); ++i) {
        const std::string f = "algorithms[" + std::to_string(i) + "]";
        if (!algs[i].is_string()) config_fail(source, f, "expected a string");
        auto a = parse_algorithm(algs[i].get<std::string>());
        if (!a) config_fail(source, f, "unknown algorithm '" + algs[i].get<std::string>() + "'");
        cfg.algorithms.push_back(*a);
    }

    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            config_fail(source, "seed", "expected a non-negative integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("oracle_cap")) {
        const json& c = doc["oracle_cap"];
        if (!c.is_number_integer() || c.get<std::int64_t>() < 0) {
            config_fail(source, "oracle_cap", "expected a non-negative integer");
        }
        cfg.oracle_cap = c.get<std::uint64_t>();
    }
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) config_fail(source, "output_dir", "expected a string");
        cfg.output_dir = doc["output_dir"].get<std::string>();
    }
    if (doc.contains("threads")) cfg.threads = read_int(doc["threads"], source, "threads");
    cfg.validate();
    return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    json doc;
    doc["trials"] = cfg.trials;
    doc["L_range"] = {cfg.min_cells, cfg.max_cells};
    doc["S_range"] = {cfg.min_channels, cfg.max_channels};
    doc["graph"] = std::visit(
        overloaded{
            [](const graph_kind::Geometric& g) {
                return json{{"kind", "geometric"}, {"radius", g.radius}};
            },
            [](const graph_kind::Empty&) { return json{{"kind", "empty"}}; },
            [](const graph_kind::Complete&) { return json{{"kind", "complete"}}; },
            [](const graph_kind::DisjointComplete& d) {
                return json{{"kind", "disjoint_complete"}, {"sizes", d.sizes}};
            },
            [](const graph_kind::RandomForest&) { return json{{"kind", "random_forest"}}; },
            [](const graph_kind::Explicit& e) {
                json edges = json::array();
                for (auto [a, b] : e.edges) edges.push_back({a + 1, b + 1});
                return json{{"kind", "explicit"}, {"edges", edges}};
            },
        },
        cfg.graph);
    doc["profile"] = std::visit(
        overloaded{
            [](const profile_kind::RankingUniform&) { return json{{"kind", "ranking_uniform"}}; },
            [](const profile_kind::UtilityShannon& u) {
                return json{{"kind", "utility_shannon"}, {"snr_db", u.snr_db}};
            },
        },
        cfg.profile);
    json algs = json::array();
    for (Algorithm a : cfg.algorithms) algs.push_back(to_string(a));
    doc["algorithms"] = algs;
    doc["seed"] = cfg.seed;
    doc["oracle_cap"] = cfg.oracle_cap;
    return doc.dump();
}

std::string config_digest(const ExperimentConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : experiment_config_to_json(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Instance trial_instance(const ExperimentConfig& cfg, int index) {
    const std::uint64_t trial_seed = child_seed(cfg.seed, static_cast<std::uint64_t>(index));
    Rng sizes(child_seed(trial_seed, kSizeStream));
    GenConfig gen;
    gen.seed = trial_seed;
    gen.num_cells = static_cast<int>(sizes.uniform_int(cfg.min_cells, cfg.max_cells));
    gen.num_channels = static_cast<int>(sizes.uniform_int(cfg.min_channels, cfg.max_channels));
    gen.graph = cfg.graph;
    gen.profile = cfg.profile;
    return gen_instance(gen);
}

TrialRecord run_trial(const ExperimentConfig& cfg, int index) {
    const Instance inst = trial_instance(cfg, index);
    const std::uint64_t trial_seed = child_seed(cfg.seed, static_cast<std::uint64_t>(index));
    const std::uint64_t alg_seed = child_seed(trial_seed, kAlgorithmStream);

    TrialRecord rec;
    rec.trial = index;
    rec.num_cells = inst.num_cells();
    rec.num_channels = inst.num_channels();

    for (Algorithm alg : cfg.algorithms) {
        AlgorithmRecord r;
        r.algorithm = alg;
        const auto start = std::chrono::steady_clock::now();
        std::optional<bool> stable;
        switch (alg) {
            case Algorithm::dssar: {
                auto trace = dssar_trace(inst);
                r.iterations = trace.iterations;
                r.matching = std::move(trace.matching);
                break;
            }
            case Algorithm::rpr: {
                auto outcome = rpr(inst, inst.num_cells() * inst.num_channels());
                r.iterations = outcome.iterations_used;
                r.converged = outcome.converged;
                stable = outcome.stable;
                r.matching = std::move(outcome.matching);
                break;
            }
            case Algorithm::random: r.matching = random_matching(inst, alg_seed); break;
            case Algorithm::best_of_random: r.matching = best_of_random(inst, alg_seed); break;
            case Algorithm::top_ranked: r.matching = top_ranked_proposal(inst); break;
            case Algorithm::optimal:
                r.matching = exhaustive_optimal_welfare(inst, cfg.oracle_cap).best_matching;
                break;
        }
        r.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.welfare = welfare_report(inst, r.matching);
        r.harmonious = is_harmonious(inst, r.matching);
        r.stable = stable.value_or(is_stable(inst, r.matching));
        rec.results.push_back(std::move(r));
    }
    return rec;
}

const AlgorithmSummary* ExperimentReport::find(Algorithm alg) const {
    for (const auto& s : summary) {
        if (s.algorithm == alg) return &s;
    }
    return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.trials.resize(cfg.trials);

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < cfg.trials; i = next++) {
            try {
                report.trials[i] = run_trial(cfg, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cfg.trials;
            }
        }
    };
    const int workers = std::min(cfg.threads, cfg.trials);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    const std::string header = "# spp-csv v1 config=" + config_digest(cfg) + "\n";
    const std::size_t n_alg = cfg.algorithms.size();

    std::string& trials = report.trials_csv;
    trials = header +
             "trial,L,S,algorithm,matched,s_welfare_raw,l_welfare_raw,s_welfare_norm,"
             "l_welfare_norm,total_welfare_norm,sum_rate,harmonious,stable,iterations,converged,"
             "assignment\n";
    std::vector<Accumulator> overall(n_alg);
    std::map<int, std::vector<Accumulator>> by_cells;
    std::map<int, std::vector<Accumulator>> by_channels;
    for (const auto& t : report.trials) {
        auto& cell_group = by_cells.try_emplace(t.num_cells, n_alg).first->second;
        auto& channel_group = by_channels.try_emplace(t.num_channels, n_alg).first->second;
        for (std::size_t a = 0; a < n_alg; ++a) {
            const AlgorithmRecord& r = t.results[a];
            overall[a].add(r);
            cell_group[a].add(r);
            channel_group[a].add(r);

            std::string assignment;
            for (int l = 0; l < r.matching.size(); ++l) {
                if (l) assignment += ' ';
                assignment += std::to_string(r.matching[l] + 1);
            }
            const WelfareReport& w = r.welfare;
            trials += std::to_string(t.trial) + ',' + std::to_string(t.num_cells) + ',' +
                      std::to_string(t.num_channels) + ',' + to_string(r.algorithm) + ',' +
                      std::to_string(w.matched_count) + ',' + format_real(w.s_welfare_raw) + ',' +
                      format_real(w.l_welfare_raw) + ',' + format_real(w.s_welfare_norm) + ',' +
                      format_real(w.l_welfare_norm) + ',' + format_real(w.total_welfare_norm) +
                      ',' + format_real(w.sum_rate) + ',' + bool_str(r.harmonious) + ',' +
                      bool_str(r.stable) + ',' + std::to_string(r.iterations) + ',' +
                      bool_str(r.converged) + ',' + assignment + '\n';
        }
    }

    report.by_cells_csv = group_csv(header, "L", by_cells, cfg.algorithms);
    report.by_channels_csv = group_csv(header, "S", by_channels, cfg.algorithms);

    const bool ranking = std::holds_alternative<profile_kind::RankingUniform>(cfg.profile);
    const Accumulator* optimal = nullptr;
    for (std::size_t a = 0; a < n_alg; ++a) {
        if (cfg.algorithms[a] == Algorithm::optimal) optimal = &overall[a];
    }
    auto objective_mean = [&](const Accumulator& acc) {
        return mean(ranking ? acc.total : acc.rate, acc.count);
    };

    report.summary_csv = header +
                         "algorithm,count,mean_total_welfare_norm,mean_s_welfare_norm,"
                         "mean_l_welfare_norm,mean_sum_rate,stable_rate,nonconvergence_rate,"
                         "ratio_to_optimal\n";
    for (std::size_t a = 0; a < n_alg; ++a) {
        const Accumulator& acc = overall[a];
        AlgorithmSummary s;
        s.algorithm = cfg.algorithms[a];
        s.count = acc.count;
        s.mean_total_welfare = mean(acc.total, acc.count);
        s.mean_s_welfare = mean(acc.s, acc.count);
        s.mean_l_welfare = mean(acc.l, acc.count);
        s.mean_sum_rate = mean(acc.rate, acc.count);
        s.stable_rate = mean(acc.stable, acc.count);
        s.nonconvergence_rate = mean(acc.nonconverged, acc.count);
        s.mean_wall_seconds = mean(acc.seconds, acc.count);
        report.summary.push_back(s);

        std::string ratio;
        if (optimal && objective_mean(*optimal) > 0.0) {
            ratio = format_real(objective_mean(acc) / objective_mean(*optimal));
        }
        report.summary_csv += std::string(to_string(s.algorithm)) + ',' +
                              std::to_string(s.count) + ',' + format_real(s.mean_total_welfare) +
                              ',' + format_real(s.mean_s_welfare) + ',' +
                              format_real(s.mean_l_welfare) + ',' + format_real(s.mean_sum_rate) +
                              ',' + format_real(s.stable_rate) + ',' +
                              format_real(s.nonconvergence_rate) + ',' + ratio + '\n';
    }

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        write_text_file(cfg.output_dir / "trials.csv", report.trials_csv);
        write_text_file(cfg.output_dir / "by_L.csv", report.by_cells_csv);
        write_text_file(cfg.output_dir / "by_S.csv", report.by_channels_csv);
        write_text_file(cfg.output_dir / "summary.csv", report.summary_csv);
    }
    return report;
}

}  // namespace spp
