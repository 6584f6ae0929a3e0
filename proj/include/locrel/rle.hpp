#pragma once

// Run-length encoding of symbolic trajectories and the constrained RLE+
// baseline, which keeps only runs meeting the (N, delta) thresholds.

#include "locrel/core.hpp"
#include "locrel/seqscan.hpp"

#include <vector>

namespace locrel {

/// A maximal run of one symbol.
struct RleSegment {
    Timestamp t_first = 0;
    Timestamp t_last = 0;
    LocationSymbol location;
    std::size_t count = 0;

    Seconds span() const noexcept { return t_last - t_first; }
    friend bool operator==(const RleSegment&, const RleSegment&) = default;
};

std::vector<RleSegment> rle_encode(const SymbolicTrajectory& t);

/// Runs with count >= N and span >= delta; all others are dropped.
std::vector<RleSegment> rle_plus(const SymbolicTrajectory& t, const SeqScanParams& params);

/// Views RLE+ segments as summary units (weight = span, since runs hold no noise).
SummaryTrajectory as_summary(const std::string& user_id, const std::vector<RleSegment>& segments);

}  // namespace locrel
