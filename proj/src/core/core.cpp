#include "spp/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace spp {

namespace {

void check_cell(int num_cells, int cell) {
    if (cell < 0 || cell >= num_cells) {
        throw std::invalid_argument("cell index " + std::to_string(cell) + " out of range [0, " +
                                    std::to_string(num_cells) + ")");
    }
}

void check_channel(int num_channels, int channel) {
    if (channel < 0 || channel >= num_channels) {
        throw std::invalid_argument("channel index " + std::to_string(channel) +
                                    " out of range [0, " + std::to_string(num_channels) + ")");
    }
}

void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

AdjacencyLists underlying_undirected(const AdjacencyLists& directed_sets) {
    const int n = static_cast<int>(directed_sets.size());
    AdjacencyLists out(directed_sets.size());
    for (int from = 0; from < n; ++from) {
        for (int to : directed_sets[from]) {
            check_cell(n, to);
            if (to == from) {
                throw std::invalid_argument("self-loop on cell " + std::to_string(from));
            }
            out[from].push_back(to);
            out[to].push_back(from);
        }
    }
    for (auto& list : out) sort_unique(list);
    return out;
}

ConstraintGraph::ConstraintGraph(int num_cells) : ConstraintGraph(AdjacencyLists(num_cells)) {
    if (num_cells < 0) throw std::invalid_argument("negative cell count");
}

ConstraintGraph::ConstraintGraph(AdjacencyLists directed_sets)
    : directed_(std::move(directed_sets)) {
    undirected_ = underlying_undirected(directed_);
    for (auto& list : directed_) sort_unique(list);
    const std::size_t n = directed_.size();
    matrix_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (int b : undirected_[a]) matrix_[a * n + b] = 1;
    }
}

ConstraintGraph ConstraintGraph::from_edges(int num_cells,
                                            const std::vector<std::pair<int, int>>& edges) {
    if (num_cells < 0) throw std::invalid_argument("negative cell count");
    AdjacencyLists sets(num_cells);
    for (auto [from, to] : edges) {
        check_cell(num_cells, from);
        check_cell(num_cells, to);
        sets[from].push_back(to);
    }
    return ConstraintGraph(std::move(sets));
}

ConstraintGraph ConstraintGraph::from_undirected_edges(
    int num_cells, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::pair<int, int>> both;
    both.reserve(edges.size() * 2);
    for (auto [a, b] : edges) {
        both.emplace_back(a, b);
        both.emplace_back(b, a);
    }
    return from_edges(num_cells, both);
}

bool ConstraintGraph::constrains(int from, int to) const {
    const auto& set = directed_[from];
    return std::binary_search(set.begin(), set.end(), to);
}

std::vector<std::pair<int, int>> ConstraintGraph::directed_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int from = 0; from < num_cells(); ++from) {
        for (int to : directed_[from]) out.emplace_back(from, to);
    }
    return out;
}

std::vector<std::pair<int, int>> ConstraintGraph::undirected_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < num_cells(); ++a) {
        for (int b : undirected_[a]) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

std::size_t ConstraintGraph::num_undirected_edges() const {
    std::size_t twice = 0;
    for (const auto& list : undirected_) twice += list.size();
    return twice / 2;
}

std::vector<std::vector<int>> connected_components(const ConstraintGraph& graph) {
    const int n = graph.num_cells();
    std::vector<int> label(n, -1);
    std::vector<std::vector<int>> components;
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        if (label[root] != -1) continue;
        const int id = static_cast<int>(components.size());
        components.emplace_back();
        label[root] = id;
        stack.push_back(root);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            components[id].push_back(v);
            for (int w : graph.neighbors(v)) {
                if (label[w] == -1) {
                    label[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(components[id].begin(), components[id].end());
    }
    return components;
}

void RankingProfile::validate() const {
    const int L = cell_ranks.rows();
    const int S = cell_ranks.cols();
    if (channel_ranks.rows() != L || channel_ranks.cols() != S) {
        throw ValidationError("ranking matrices have mismatched shapes");
    }
    std::vector<char> seen;
    for (int l = 0; l < L; ++l) {
        seen.assign(S + 1, 0);
        for (int s = 0; s < S; ++s) {
            const int r = cell_ranks(l, s);
            if (r < 1 || r > S || seen[r]) {
                throw ValidationError("cell rank row " + std::to_string(l + 1) +
                                      " is not a permutation of 1.." + std::to_string(S));
            }
            seen[r] = 1;
        }
        if (cell_ranks(l, S - 1) != S) {
            throw ValidationError("cell rank row " + std::to_string(l + 1) +
                                  " must rank the virtual channel last (" + std::to_string(S) + ")");
        }
    }
    for (int s = 0; s < S; ++s) {
        seen.assign(L + 1, 0);
        for (int l = 0; l < L; ++l) {
            const int r = channel_ranks(l, s);
            if (r < 1 || r > L || seen[r]) {
                throw ValidationError("channel rank column " + std::to_string(s + 1) +
                                      " is not a permutation of 1.." + std::to_string(L));
            }
            seen[r] = 1;
        }
    }
    for (int l = 0; l < L; ++l) {
        if (channel_ranks(l, S - 1) != l + 1) {
            throw ValidationError("virtual channel rank column must be the identity 1.." +
                                  std::to_string(L));
        }
    }
}

void UtilityProfile::validate() const {
    const int L = utilities.rows();
    const int S = utilities.cols();
    for (int l = 0; l < L; ++l) {
        for (int s = 0; s + 1 < S; ++s) {
            const double u = utilities(l, s);
            if (!(u > 0.0) || u == std::numeric_limits<double>::infinity()) {
                throw ValidationError("utility (" + std::to_string(l + 1) + "," +
                                      std::to_string(s + 1) + ") must be positive and finite");
            }
        }
        if (utilities(l, S - 1) != 0.0) {
            throw ValidationError("virtual channel utility of cell " + std::to_string(l + 1) +
                                  " must be zero");
        }
    }
}

Instance::Instance(int num_cells, int num_channels, ConstraintGraph constraints, Profile profile)
    : num_cells_(num_cells),
      num_channels_(num_channels),
      constraints_(std::move(constraints)),
      profile_(std::move(profile)) {
    if (num_cells_ < 1) throw ValidationError("need at least one cell");
    if (num_channels_ < 2) throw ValidationError("need at least one real channel plus virtual");
    if (constraints_.num_cells() != num_cells_) {
        throw ValidationError("constraint graph has " + std::to_string(constraints_.num_cells()) +
                              " cells, expected " + std::to_string(num_cells_));
    }
    std::visit(
        [&](const auto& p) {
            int rows = 0;
            int cols = 0;
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RankingProfile>) {
                rows = p.cell_ranks.rows();
                cols = p.cell_ranks.cols();
            } else {
                rows = p.utilities.rows();
                cols = p.utilities.cols();
            }
            if (rows != num_cells_ || cols != num_channels_) {
                throw ValidationError("profile is " + std::to_string(rows) + "x" +
                                      std::to_string(cols) + ", expected " +
                                      std::to_string(num_cells_) + "x" +
                                      std::to_string(num_channels_));
            }
            p.validate();
        },
        profile_);
}

const RankingProfile& Instance::ranking() const {
    if (const auto* p = std::get_if<RankingProfile>(&profile_)) return *p;
    throw std::invalid_argument("instance carries a utility profile, ranking required");
}

const UtilityProfile& Instance::utility() const {
    if (const auto* p = std::get_if<UtilityProfile>(&profile_)) return *p;
    throw std::invalid_argument("instance carries a ranking profile, utility required");
}

Matching Matching::all_virtual(const Instance& inst) {
    return Matching{std::vector<int>(inst.num_cells(), inst.virtual_channel())};
}

void Matching::validate(const Instance& inst) const {
    if (size() != inst.num_cells()) {
        throw ValidationError("matching assigns " + std::to_string(size()) + " cells, expected " +
                              std::to_string(inst.num_cells()));
    }
    for (int l = 0; l < size(); ++l) {
        if (assignment[l] < 0 || assignment[l] >= inst.num_channels()) {
            throw ValidationError("cell " + std::to_string(l + 1) +
                                  " is not assigned a valid channel");
        }
    }
}

bool PreferenceOracle::cell_prefers(int cell, int s1, int s2) const {
    if (const auto* r = std::get_if<RankingProfile>(&inst_->profile())) {
        return r->cell_ranks(cell, s1) < r->cell_ranks(cell, s2);
    }
    const auto& u = std::get<UtilityProfile>(inst_->profile()).utilities;
    return u(cell, s1) > u(cell, s2);
}

bool PreferenceOracle::channel_prefers(int channel, int l1, int l2) const {
    if (const auto* r = std::get_if<RankingProfile>(&inst_->profile())) {
        return r->channel_ranks(l1, channel) < r->channel_ranks(l2, channel);
    }
    const auto& u = std::get<UtilityProfile>(inst_->profile()).utilities;
    return u(l1, channel) > u(l2, channel);
}

bool socially_compatible(const Instance& inst, int l1, int l2) {
    check_cell(inst.num_cells(), l1);
    check_cell(inst.num_cells(), l2);
    if (l1 == l2) throw std::invalid_argument("compatibility of a cell with itself is undefined");
    return !inst.constraints().adjacent(l1, l2);
}

bool socially_available(const Instance& inst, const Matching& matching, int channel, int cell) {
    check_cell(inst.num_cells(), cell);
    check_channel(inst.num_channels(), channel);
    if (channel == inst.virtual_channel()) return true;
    const PreferenceOracle pref(inst);
    for (int other : inst.constraints().neighbors(cell)) {
        if (matching[other] == channel && pref.channel_prefers(channel, other, cell)) return false;
    }
    return true;
}

std::optional<HarmonyViolation> find_harmony_violation(const Instance& inst,
                                                       const Matching& matching) {
    const int V = inst.virtual_channel();
    for (auto [a, b] : inst.constraints().undirected_edges()) {
        if (matching[a] == matching[b] && matching[a] != V) {
            return HarmonyViolation{a, b, matching[a]};
        }
    }
    return std::nullopt;
}

bool is_harmonious(const Instance& inst, const Matching& matching) {
    return !find_harmony_violation(inst, matching).has_value();
}

std::optional<BlockingPair> find_blocking_pair(const Instance& inst, const Matching& matching) {
    const PreferenceOracle pref(inst);
    const auto& graph = inst.constraints();
    for (int l1 = 0; l1 < inst.num_cells(); ++l1) {
        for (int s = 0; s < inst.num_real_channels(); ++s) {
            if (s == matching[l1] || !pref.cell_prefers(l1, s, matching[l1])) continue;
            bool justified = false;
            for (int l2 : graph.neighbors(l1)) {
                if (matching[l2] == s && pref.channel_prefers(s, l2, l1)) {
                    justified = true;
                    break;
                }
            }
            if (!justified) return BlockingPair{l1, s};
        }
    }
    return std::nullopt;
}

StabilityReport check_stability(const Instance& inst, const Matching& matching) {
    matching.validate(inst);
    StabilityReport report;
    report.conflict = find_harmony_violation(inst, matching);
    report.harmonious = !report.conflict.has_value();
    if (!report.harmonious) return report;
    report.blocking = find_blocking_pair(inst, matching);
    report.stable = !report.blocking.has_value();
    return report;
}

bool is_stable(const Instance& inst, const Matching& matching) {
    return check_stability(inst, matching).stable;
}

Instance restrict_to_cells(const Instance& inst, const std::vector<int>& cells) {
    const int n = static_cast<int>(cells.size());
    std::vector<int> position(inst.num_cells(), -1);
    for (int i = 0; i < n; ++i) {
        check_cell(inst.num_cells(), cells[i]);
        if (position[cells[i]] != -1) throw std::invalid_argument("duplicate cell in restriction");
        position[cells[i]] = i;
    }
    AdjacencyLists sets(n);
    for (int i = 0; i < n; ++i) {
        for (int to : inst.constraints().directed_set(cells[i])) {
            if (position[to] != -1) sets[i].push_back(position[to]);
        }
    }
    const int S = inst.num_channels();
    if (const auto* r = std::get_if<RankingProfile>(&inst.profile())) {
        RankingProfile sub{IntMatrix(n, S), IntMatrix(n, S)};
        for (int i = 0; i < n; ++i) {
            for (int s = 0; s < S; ++s) sub.cell_ranks(i, s) = r->cell_ranks(cells[i], s);
        }
        std::vector<int> order(n);
        for (int s = 0; s + 1 < S; ++s) {
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return r->channel_ranks(cells[a], s) < r->channel_ranks(cells[b], s);
            });
            for (int k = 0; k < n; ++k) sub.channel_ranks(order[k], s) = k + 1;
        }
        for (int i = 0; i < n; ++i) sub.channel_ranks(i, S - 1) = i + 1;
        return Instance(n, S, ConstraintGraph(std::move(sets)), std::move(sub));
    }
    const auto& u = inst.utility().utilities;
    UtilityProfile sub{RealMatrix(n, S)};
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < S; ++s) sub.utilities(i, s) = u(cells[i], s);
    }
    return Instance(n, S, ConstraintGraph(std::move(sets)), std::move(sub));
}

}  // namespace spp
