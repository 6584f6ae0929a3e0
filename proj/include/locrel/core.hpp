#pragma once

// Domain types for symbolic (telco-style) trajectories: location symbols,
// timestamped points, native and summary trajectories, and visit-frequency
// tables with a deterministic ranking.

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace locrel {

/// Seconds since the epoch. Integer-valued inputs are represented exactly.
using Timestamp = double;
using Seconds = double;

/// Opaque label of a location area. Compared by exact text equality.
class LocationSymbol {
public:
    LocationSymbol() = default;
    explicit LocationSymbol(std::string label);

    const std::string& label() const noexcept { return label_; }
    bool empty() const noexcept { return label_.empty(); }

    friend bool operator==(const LocationSymbol&, const LocationSymbol&) = default;
    friend std::strong_ordering operator<=>(const LocationSymbol& a, const LocationSymbol& b) {
        return a.label_.compare(b.label_) <=> 0;
    }

private:
    std::string label_;
};

struct TrajPoint {
    Timestamp timestamp = 0;
    LocationSymbol location;

    friend bool operator==(const TrajPoint&, const TrajPoint&) = default;
};

/// One user's time-ordered sequence of timestamped location symbols.
/// Construction rejects decreasing or non-finite timestamps.
class SymbolicTrajectory {
public:
    SymbolicTrajectory() = default;
    SymbolicTrajectory(std::string user_id, std::vector<TrajPoint> points);

    const std::string& user_id() const noexcept { return user_id_; }
    std::span<const TrajPoint> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const TrajPoint& operator[](std::size_t i) const { return points_[i]; }

    friend bool operator==(const SymbolicTrajectory&, const SymbolicTrajectory&) = default;

private:
    std::string user_id_;
    std::vector<TrajPoint> points_;
};

/// A period [start, end] dominated by one location.
struct SummaryUnit {
    Timestamp start = 0;
    Timestamp end = 0;
    LocationSymbol location;
    std::size_t occurrences = 0;  ///< dominant-symbol points inside [start, end]
    Seconds weight = 0;           ///< accumulated pair-weight of the dominant symbol

    friend bool operator==(const SummaryUnit&, const SummaryUnit&) = default;
};

struct SummaryTrajectory {
    std::string user_id;
    std::vector<SummaryUnit> units;

    bool empty() const noexcept { return units.empty(); }
    friend bool operator==(const SummaryTrajectory&, const SummaryTrajectory&) = default;
};

/// Visit counts per location plus a total order: count descending, then
/// earliest first occurrence, then label ascending.
class FrequencyTable {
public:
    struct Entry {
        LocationSymbol location;
        std::size_t count = 0;
        Timestamp first_seen = 0;
    };

    FrequencyTable() = default;

    /// Builds a table from a sequence of (time, location) occurrences.
    /// Ties on time fall back to sequence order, then label.
    static FrequencyTable from_occurrences(std::span<const TrajPoint> occurrences);

    /// Entries in rank order; rank r is ranking()[r - 1].
    const std::vector<Entry>& ranking() const noexcept { return ranked_; }
    std::size_t size() const noexcept { return ranked_.size(); }
    bool empty() const noexcept { return ranked_.empty(); }
    std::size_t total() const noexcept { return total_; }

    /// Zero for unknown locations.
    std::size_t count(const LocationSymbol& l) const;
    /// 1-based rank; zero for unknown locations.
    std::size_t rank(const LocationSymbol& l) const;

private:
    std::vector<Entry> ranked_;
    std::unordered_map<std::string, std::size_t> index_;  // label -> position in ranked_
    std::size_t total_ = 0;
};

FrequencyTable frequency_table(const SymbolicTrajectory& t);

/// Unit-level table: each unit counts once for its location; ties broken by
/// the start of the location's first unit.
FrequencyTable frequency_table(const SummaryTrajectory& s);

std::set<LocationSymbol> distinct_locations(const SymbolicTrajectory& t);
std::set<LocationSymbol> distinct_locations(const SummaryTrajectory& s);

struct DatasetStats {
    std::size_t n_traj = 0;
    std::size_t n_records = 0;
    std::size_t n_locations = 0;
    double avg_len = 0;
    double std_len = 0;  ///< population standard deviation
};

DatasetStats dataset_stats(std::span<const SymbolicTrajectory> dataset);

}  // namespace locrel

template <>
struct std::hash<locrel::LocationSymbol> {
    std::size_t operator()(const locrel::LocationSymbol& l) const noexcept {
        return std::hash<std::string>{}(l.label());
    }
};
