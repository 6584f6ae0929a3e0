#pragma once

// Diversity of the locations in summary trajectories: Shannon and Simpson
// indices, Hill numbers ("true diversity"), per-user diversity profiles,
// and Jenks natural-breaks classification of users with goodness of
// variance fit.

#include "locrel/core.hpp"

#include <span>
#include <vector>

namespace locrel {

/// Relative frequencies of R location types. Every proportion is positive
/// and they sum to 1 within 1e-9.
class AbundanceVector {
public:
    /// Throws std::invalid_argument on an invalid vector.
    explicit AbundanceVector(std::vector<double> proportions);

    /// Normalizes positive counts; zero counts are dropped.
    static AbundanceVector from_counts(std::span<const double> counts);

    std::span<const double> proportions() const noexcept { return p_; }
    std::size_t richness() const noexcept { return p_.size(); }

private:
    std::vector<double> p_;
};

/// One count per unit, grouped by location in frequency-rank order.
/// Throws std::invalid_argument for an empty summary.
AbundanceVector abundance(const SummaryTrajectory& summary);

/// H = -sum p ln p, in nats.
double shannon_index(const AbundanceVector& p);

/// S = sum p^2.
double simpson_index(const AbundanceVector& p);

/// Hill number of order q >= 0: (sum p^q)^(1/(1-q)), with exp(H) at q = 1.
double true_diversity(const AbundanceVector& p, double q);

struct DiversityProfile {
    std::size_t richness = 0;
    double td_h = 0;  ///< order 1 (exponential of Shannon)
    double td_s = 0;  ///< order 2 (inverse Simpson)
};

DiversityProfile diversity_profile(const SummaryTrajectory& summary);

/// Optimal contiguous partition of sorted values into k classes, minimizing
/// the sum of squared deviations from class means (SDCM). Returns k-1 break
/// indices; a break b starts a class at values[b]. Among optimal partitions
/// the lexicographically smallest break vector is returned.
///
/// Throws std::invalid_argument when k == 0, k > values.size(), or values
/// are not sorted ascending.
std::vector<std::size_t> jenks_breaks(std::span<const double> values, std::size_t k);

/// Sum of squared deviations from class means for the given breaks.
double sdcm(std::span<const double> values, std::span<const std::size_t> breaks);

/// (SDAM - SDCM) / SDAM; 1 when all values are equal.
double gvf(std::span<const double> values, std::span<const std::size_t> breaks);

struct UserClass {
    double lower = 0;
    double upper = 0;
    std::size_t count = 0;
    double share = 0;
};

struct UserClassification {
    std::size_t k = 0;
    double gvf = 0;
    std::vector<double> break_values;  ///< lower bound of classes 2..k
    std::vector<UserClass> classes;
};

/// Runs Jenks for k = 1, 2, ... and stops at the first partition with
/// GVF >= threshold. Values need not be sorted.
UserClassification classify_users(std::span<const double> values, double threshold = 0.7);

}  // namespace locrel
