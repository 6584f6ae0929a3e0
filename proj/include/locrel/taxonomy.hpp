#pragma once

// Frequency x attractiveness taxonomy of the locations of a trajectory.
//
//   SL = N_u ∩ A     significant: frequent and attractive
//   TL = N_u \ A     transit: frequent, not attractive
//   PL = A \ N_u     sporadic: attractive, not frequent
//   IL = T_u \ (A ∪ N_u)
//
// where A is the set of summary locations and N_u the |A| most frequent
// native locations under the deterministic frequency ranking.

#include "locrel/core.hpp"

#include <set>
#include <span>

namespace locrel {

struct TaxonomyPartition {
    std::set<LocationSymbol> significant;
    std::set<LocationSymbol> transit;
    std::set<LocationSymbol> sporadic;
    std::set<LocationSymbol> insignificant;
    std::size_t n_types = 0;  ///< |T_u|

    /// Fraction of |T_u| in each class; all zero when T_u is empty.
    double significant_share() const noexcept;
    double transit_share() const noexcept;
    double sporadic_share() const noexcept;
    double insignificant_share() const noexcept;
};

struct ClassShares {
    double significant = 0;
    double transit = 0;
    double sporadic = 0;
    double insignificant = 0;
};

/// First n locations of the frequency ranking. Throws std::invalid_argument
/// when n exceeds the number of distinct locations.
std::set<LocationSymbol> top_n_frequent(const SymbolicTrajectory& t, std::size_t n);
std::set<LocationSymbol> top_n_frequent(const FrequencyTable& table, std::size_t n);

TaxonomyPartition classify_locations(const SymbolicTrajectory& t, const SummaryTrajectory& summary);

/// Unweighted mean of per-trajectory class shares. Throws on empty or
/// misaligned input.
ClassShares class_percentages(std::span<const SymbolicTrajectory> natives,
                              std::span<const SummaryTrajectory> summaries);

/// Largest k such that the k most frequent locations are all attractive.
std::size_t matching_degree(const SymbolicTrajectory& t, const SummaryTrajectory& summary);

}  // namespace locrel
