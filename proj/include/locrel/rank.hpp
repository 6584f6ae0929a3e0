#pragma once

// Visit probability by location rank, per trajectory and averaged over a
// dataset.

#include "locrel/core.hpp"

#include <span>
#include <vector>

namespace locrel {

/// probabilities[r - 1] = P(r).
struct RankDistribution {
    std::vector<double> probabilities;

    std::size_t max_rank() const noexcept { return probabilities.size(); }
    /// Zero beyond max_rank(); r is 1-based.
    double at(std::size_t r) const noexcept {
        return r >= 1 && r <= probabilities.size() ? probabilities[r - 1] : 0.0;
    }
};

/// occ(r) / total under the deterministic ranking. Throws on an empty table.
RankDistribution rank_distribution(const FrequencyTable& table);
RankDistribution rank_distribution_traj(const SymbolicTrajectory& t);
/// Summary occurrences are unit counts per location.
RankDistribution rank_distribution_traj(const SummaryTrajectory& s);

/// Unweighted mean over trajectories, zero-padded to the longest ranking.
/// Throws on an empty dataset or an empty member.
RankDistribution rank_distribution_dataset(std::span<const SymbolicTrajectory> dataset);
/// Empty summaries carry no visits and are left out of the mean.
RankDistribution rank_distribution_dataset(std::span<const SummaryTrajectory> dataset);
RankDistribution mean_distribution(std::span<const RankDistribution> parts);

}  // namespace locrel
