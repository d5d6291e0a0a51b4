// Instance and matching data model for the stable polygamy problem, plus the
// compatibility / availability / harmony / stability predicates.
//
// Indexing: cells are 0..L-1, channels are 0..S-1, and channel S-1 is the
// virtual channel (the "unmatched" sentinel). File formats and the CLI use the
// 1-based convention instead; conversion happens only at those edges.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spp {

/// Raised when data violates a type invariant (bad permutation, wrong shape,
/// non-total matching...).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sorted neighbour lists, one per cell.
using AdjacencyLists = std::vector<std::vector<int>>;

/// Symmetric closure of a family of directed constraint sets. Output lists
/// are sorted and deduplicated. Throws std::invalid_argument on a self-loop
/// or an out-of-range member.
AdjacencyLists underlying_undirected(const AdjacencyLists& directed_sets);

/// Directed social constraints C_l plus the derived undirected interference
/// graph. Immutable after construction.
class ConstraintGraph {
  public:
    ConstraintGraph() = default;
    /// Edgeless graph on `num_cells` cells.
    explicit ConstraintGraph(int num_cells);
    /// From one directed set per cell.
    explicit ConstraintGraph(AdjacencyLists directed_sets);

    /// From a directed edge list: (from, to) means `to` is in C_from.
    static ConstraintGraph from_edges(int num_cells,
                                      const std::vector<std::pair<int, int>>& edges);
    /// Every edge inserted in both directions.
    static ConstraintGraph from_undirected_edges(int num_cells,
                                                 const std::vector<std::pair<int, int>>& edges);

    int num_cells() const { return static_cast<int>(directed_.size()); }

    bool adjacent(int a, int b) const {
        return matrix_[static_cast<std::size_t>(a) * directed_.size() + b] != 0;
    }
    /// Whether `to` is in C_from.
    bool constrains(int from, int to) const;

    const std::vector<int>& neighbors(int cell) const { return undirected_[cell]; }
    const std::vector<int>& directed_set(int cell) const { return directed_[cell]; }
    const AdjacencyLists& directed_sets() const { return directed_; }
    const AdjacencyLists& undirected() const { return undirected_; }

    /// Directed edges (from, to), sorted.
    std::vector<std::pair<int, int>> directed_edges() const;
    /// Undirected edges (a, b) with a < b, sorted.
    std::vector<std::pair<int, int>> undirected_edges() const;
    std::size_t num_undirected_edges() const;

    bool operator==(const ConstraintGraph& other) const { return directed_ == other.directed_; }

  private:
    AdjacencyLists directed_;
    AdjacencyLists undirected_;
    std::vector<unsigned char> matrix_;
};

/// Connected components of the undirected graph. Each component is sorted and
/// components are ordered by their smallest member.
std::vector<std::vector<int>> connected_components(const ConstraintGraph& graph);

/// Row-major L x S integer matrix.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols, int fill = 0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    int operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const std::vector<int>& data() const { return data_; }

    bool operator==(const IntMatrix&) const = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> data_;
};

/// Row-major L x S real matrix.
class RealMatrix {
  public:
    RealMatrix() = default;
    RealMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const RealMatrix&) const = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Preference-ranking model. cell_ranks(l, s) is the rank cell l gives channel
/// s; channel_ranks(l, s) is the rank channel s gives cell l. Rank 1 is best.
struct RankingProfile {
    IntMatrix cell_ranks;
    IntMatrix channel_ranks;

    /// Throws ValidationError unless rows of cell_ranks are permutations of
    /// 1..S with the virtual column fixed to S, and columns of channel_ranks
    /// are permutations of 1..L with the virtual column equal to 1..L.
    void validate() const;

    bool operator==(const RankingProfile&) const = default;
};

/// Common-utility model. u(l, s) > 0 on real channels, 0 on the virtual one.
struct UtilityProfile {
    RealMatrix utilities;

    void validate() const;

    bool operator==(const UtilityProfile&) const = default;
};

using Profile = std::variant<RankingProfile, UtilityProfile>;

/// A complete problem statement. Validated on construction.
class Instance {
  public:
    Instance(int num_cells, int num_channels, ConstraintGraph constraints, Profile profile);

    int num_cells() const { return num_cells_; }
    int num_channels() const { return num_channels_; }
    /// Index of the virtual channel (always num_channels() - 1).
    int virtual_channel() const { return num_channels_ - 1; }
    int num_real_channels() const { return num_channels_ - 1; }

    const ConstraintGraph& constraints() const { return constraints_; }
    const Profile& profile() const { return profile_; }

    bool has_ranking() const { return std::holds_alternative<RankingProfile>(profile_); }
    bool has_utility() const { return std::holds_alternative<UtilityProfile>(profile_); }
    /// Throw std::invalid_argument when the other model is present.
    const RankingProfile& ranking() const;
    const UtilityProfile& utility() const;

    bool operator==(const Instance&) const = default;

  private:
    int num_cells_;
    int num_channels_;
    ConstraintGraph constraints_;
    Profile profile_;
};

/// Total assignment of every cell to a channel index (virtual allowed).
struct Matching {
    std::vector<int> assignment;

    static Matching all_virtual(const Instance& inst);

    int size() const { return static_cast<int>(assignment.size()); }
    int operator[](int cell) const { return assignment[cell]; }
    int& operator[](int cell) { return assignment[cell]; }

    /// Throws ValidationError if the matching is not total for `inst`.
    void validate(const Instance& inst) const;

    bool operator==(const Matching&) const = default;
    auto operator<=>(const Matching&) const = default;
};

/// Strict preference comparisons over either profile model.
class PreferenceOracle {
  public:
    explicit PreferenceOracle(const Instance& inst) : inst_(&inst) {}

    /// Cell l strictly prefers channel s1 over s2.
    bool cell_prefers(int cell, int s1, int s2) const;
    /// Channel s strictly prefers cell l1 over l2.
    bool channel_prefers(int channel, int l1, int l2) const;

  private:
    const Instance* inst_;
};

bool socially_compatible(const Instance& inst, int l1, int l2);

/// Defined for real channels only; the virtual channel is always available.
bool socially_available(const Instance& inst, const Matching& matching, int channel, int cell);

struct HarmonyViolation {
    int cell_a;
    int cell_b;
    int channel;
};

std::optional<HarmonyViolation> find_harmony_violation(const Instance& inst,
                                                       const Matching& matching);
bool is_harmonious(const Instance& inst, const Matching& matching);

struct BlockingPair {
    int cell;
    int channel;
};

/// Full verdict of the stability checker. A non-harmonious matching is never
/// stable; `conflict` then carries the first offending pair.
struct StabilityReport {
    bool harmonious = false;
    bool stable = false;
    std::optional<HarmonyViolation> conflict;
    std::optional<BlockingPair> blocking;
};

StabilityReport check_stability(const Instance& inst, const Matching& matching);
/// First blocking pair of a harmonious matching, scanning cells then channels.
std::optional<BlockingPair> find_blocking_pair(const Instance& inst, const Matching& matching);
bool is_stable(const Instance& inst, const Matching& matching);

/// Sub-instance over `cells` (in the given order). Channel rank columns are
/// re-ranked to permutations of 1..|cells| preserving relative order.
Instance restrict_to_cells(const Instance& inst, const std::vector<int>& cells);

}  // namespace spp
