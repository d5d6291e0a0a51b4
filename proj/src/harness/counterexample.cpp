#include <stdexcept>
#include <string>

#include "spp/harness.hpp"

namespace spp {

namespace {

constexpr int kSearchCells = 5;

std::vector<std::pair<int, int>> cell_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
    return pairs;
}

std::string assignment_label(const Matching& m) {
    std::string out = "(";
    for (int l = 0; l < m.size(); ++l) {
        if (l) out += ',';
        out += std::to_string(m[l] + 1);
    }
    return out + ')';
}

std::string edge_list(const ConstraintGraph& g) {
    std::string out;
    for (auto [a, b] : g.undirected_edges()) {
        if (!out.empty()) out += ' ';
        out += '{' + std::to_string(a + 1) + ',' + std::to_string(b + 1) + '}';
    }
    return out.empty() ? "(no edges)" : out;
}

}  // namespace

ConstraintGraph graph_from_mask(int num_cells, unsigned mask) {
    const auto pairs = cell_pairs(num_cells);
    if (pairs.size() < 32 && (mask >> pairs.size()) != 0) {
        throw std::invalid_argument("edge mask has bits beyond the cell pairs");
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask & (1u << i)) edges.push_back(pairs[i]);
    }
    return ConstraintGraph::from_undirected_edges(num_cells, edges);
}

CounterexampleResult counterexample_search() {
    CounterexampleResult result;
    const unsigned masks = 1u << cell_pairs(kSearchCells).size();
    for (unsigned mask = 0; mask < masks; ++mask) {
        ConstraintGraph graph = graph_from_mask(kSearchCells, mask);
        ++result.graphs_examined;
        if (exhaustive_stable_search(theorem2_instance(graph)).solvable) continue;
        result.unsolvable_masks.push_back(mask);
        result.unsolvable_graphs.push_back(std::move(graph));
    }
    if (result.unsolvable_graphs.empty()) {
        throw std::logic_error("no unsolvable constraint graph found on 5 cells");
    }

    const Instance inst = theorem2_instance(result.unsolvable_graphs.front());
    const int S = inst.num_channels();
    Matching m = Matching::all_virtual(inst);
    for (int l = 0; l < m.size(); ++l) m[l] = 0;
    while (true) {
        result.refutation_log.push_back(assignment_label(m) + ": " +
                                        describe_verdict(check_stability(inst, m)));
        int l = m.size() - 1;
        while (l >= 0 && m[l] == S - 1) m[l--] = 0;
        if (l < 0) break;
        ++m[l];
    }
    return result;
}

std::string counterexample_report(const CounterexampleResult& result) {
    std::string out = "graphs examined: " + std::to_string(result.graphs_examined) + "\n";
    out += "graphs with no stable matching: " + std::to_string(result.unsolvable_graphs.size()) +
           "\n";
    for (std::size_t i = 0; i < result.unsolvable_graphs.size(); ++i) {
        out += "  mask " + std::to_string(result.unsolvable_masks[i]) + ": " +
               edge_list(result.unsolvable_graphs[i]) + "\n";
    }
    if (!result.unsolvable_graphs.empty()) {
        out += "\nrefutation for " + edge_list(result.unsolvable_graphs.front()) +
               " (channel 3 is virtual):\n";
        for (const auto& line : result.refutation_log) out += "  " + line + "\n";
    }
    return out;
}

}  // namespace spp
