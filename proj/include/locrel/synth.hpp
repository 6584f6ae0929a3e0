#pragma once

// Seeded generator of synthetic CDR-like trajectories with planted dwell
// periods, used in place of real operator data in tests and benchmarks.
//
// Each dwell episode emits Poisson-spaced events at its location, starting
// at the episode start. An event is replaced by a uniformly random other
// location with probability noise_prob, and repeated at the same timestamp
// with probability burst_prob. Episodes are separated by a gap that holds
// `transition_events` events at random locations.

#include "locrel/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locrel {

struct DwellEpisode {
    std::size_t location = 0;  ///< index into the alphabet
    Seconds duration = 3600;
    double rate_per_hour = 12;
};

/// Per-user random plans whose location popularity decays geometrically:
/// the i-th favourite location of a user has weight ratio^i.
struct HeavyTailPlan {
    std::size_t episodes_per_user = 30;
    std::size_t favourites = 12;  ///< distinct dwell locations per user
    double popularity_ratio = 0.5;
    Seconds mean_duration = 3 * 3600;  ///< durations uniform in [0.5, 1.5] x mean
    double rate_per_hour = 8;
};

struct SynthConfig {
    std::size_t n_users = 100;
    std::size_t alphabet_size = 50;
    /// Explicit plan shared by every user; used when heavy_tail is unset.
    std::vector<DwellEpisode> episodes;
    std::optional<HeavyTailPlan> heavy_tail;
    Seconds transition_gap = 1800;
    std::size_t transition_events = 0;
    double noise_prob = 0;
    double burst_prob = 0;
    std::size_t burst_size = 2;
    std::uint64_t seed = 1;
    Timestamp start_time = 1333238400;  // 2012-04-01T00:00:00Z

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

struct PlantedUnit {
    Timestamp start = 0;
    Timestamp end = 0;  ///< time of the episode's last event
    LocationSymbol location;

    friend bool operator==(const PlantedUnit&, const PlantedUnit&) = default;
};

struct SyntheticDataset {
    std::vector<SymbolicTrajectory> trajectories;
    std::vector<std::vector<PlantedUnit>> ground_truth;  ///< aligned with trajectories
};

/// Label of alphabet entry i, e.g. "LA0007".
std::string location_label(std::size_t index);

SyntheticDataset generate_dataset(const SynthConfig& config);

/// Heavy-tail preset used for rank-distribution checks.
SynthConfig heavy_tail_preset(std::size_t n_users, std::uint64_t seed);

}  // namespace locrel
