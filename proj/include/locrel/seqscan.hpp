#pragma once

// Density-based segmentation of symbolic trajectories into dominance
// periods (SeqScan-d), plus point classification and summary quality
// metrics.
//
// Scan semantics, applied identically by summarize() and Summarizer:
//   * A candidate table keeps, per symbol, the occurrence count, the
//     accumulated pair-weight and the first/last occurrence since the last
//     reset. A pair-weight |t_j - t_{j-1}| is credited to l only when both
//     points carry l and both fall after the most recent reset.
//   * A candidate becomes dominant at the first point where its count >= N
//     and its weight >= delta.
//   * The active cluster absorbs every later occurrence of its own symbol.
//   * When another candidate becomes dominant, the active cluster is closed
//     at its last occurrence preceding the candidate's first occurrence, a
//     new cluster is opened from the candidate's entry and ALL candidate
//     entries are cleared. Reoccurrence of the active symbol does not clear
//     the table.

#include "locrel/core.hpp"

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace locrel {

struct SeqScanParams {
    std::size_t min_occurrences = 2;  ///< N, must be >= 2
    Seconds delta = 16 * 60;          ///< minimum accumulated weight, >= 0

    /// Throws std::invalid_argument when N < 2 or delta is negative/non-finite.
    void validate() const;
};

/// Weight of the occurrence at index j: |t_j - t_{j-1}| when the symbol
/// repeats the previous one, else 0. Throws std::out_of_range.
Seconds occurrence_weight(const SymbolicTrajectory& t, std::size_t j);

/// Sum of occurrence weights of `l` over `t`.
Seconds symbol_weight(const SymbolicTrajectory& t, const LocationSymbol& l);

/// Same, restricted to the points with timestamps in [from, to].
Seconds symbol_weight(const SymbolicTrajectory& t, const LocationSymbol& l, Timestamp from, Timestamp to);

SummaryTrajectory summarize(const SymbolicTrajectory& t, const SeqScanParams& params);

/// Incremental summarizer. Concatenating every unit returned by push()
/// with the one returned by finish() reproduces summarize() exactly.
///
/// Not thread-safe; may be moved between threads between calls.
class Summarizer {
public:
    explicit Summarizer(SeqScanParams params);

    /// Throws std::invalid_argument when `p` is older than the previous point.
    std::optional<SummaryUnit> push(const TrajPoint& p);

    /// Closes the active cluster, if any, and resets the summarizer.
    std::optional<SummaryUnit> finish();

    const SeqScanParams& params() const noexcept { return params_; }

private:
    struct Candidate {
        std::size_t count = 0;
        Seconds weight = 0;
        Timestamp first_ts = 0;
        Timestamp last_ts = 0;
        std::size_t first_seq = 0;
        std::size_t last_seq = 0;
    };
    // One row per occurrence of the active symbol, with running totals so a
    // close can cut the cluster at any earlier occurrence.
    struct ClusterOccurrence {
        std::size_t seq;
        Timestamp ts;
        std::size_t count;
        Seconds weight;
    };

    SummaryUnit close_before(std::size_t seq) const;

    SeqScanParams params_;
    std::unordered_map<std::string, Candidate> candidates_;
    std::optional<LocationSymbol> active_;
    Timestamp cluster_start_ = 0;
    std::vector<ClusterOccurrence> cluster_;
    std::optional<TrajPoint> previous_;
    std::size_t seq_ = 0;
};

struct PointClass {
    enum class Kind { Cluster, LocalNoise, Transition };
    Kind kind = Kind::Transition;
    std::size_t unit = 0;  ///< 0-based unit index; meaningless for Transition

    friend bool operator==(const PointClass&, const PointClass&) = default;
};

/// Labels every point of `t` against the units of `summary`. Throws
/// std::invalid_argument when a unit lies outside the time span of `t`.
std::vector<PointClass> classify_points(const SymbolicTrajectory& t, const SummaryTrajectory& summary);

/// 1 - R(summary)/R(t). Throws std::invalid_argument when `t` is empty.
double summarization_rate(const SymbolicTrajectory& t, const SummaryTrajectory& summary);

/// W(l_u, t restricted to [start, end]) / (end - start); 1 for a zero-length unit.
double unit_goodness(const SymbolicTrajectory& t, const SummaryUnit& u);

/// Mean unit goodness; nullopt for an empty summary.
std::optional<double> trajectory_goodness(const SymbolicTrajectory& t, const SummaryTrajectory& summary);

/// Mean trajectory goodness over trajectories with a non-empty summary;
/// nullopt when every summary is empty. Throws on empty or misaligned input.
std::optional<double> dataset_goodness(std::span<const SymbolicTrajectory> natives,
                                       std::span<const SummaryTrajectory> summaries);

/// Mean summarization rate; empty trajectories count as 1.
double dataset_summarization_rate(std::span<const SymbolicTrajectory> natives,
                                  std::span<const SummaryTrajectory> summaries);

}  // namespace locrel
