#pragma once

// Entropy-rate estimation from longest match-lengths (Lempel-Ziv style
// estimator). Order-sensitive, unlike the diversity indices.

#include "locrel/core.hpp"

#include <span>
#include <vector>

namespace locrel {

using SymbolSequence = std::vector<LocationSymbol>;

/// Ordered unit locations of a summary trajectory.
SymbolSequence unit_sequence(const SummaryTrajectory& summary);

/// Ordered point locations of a native trajectory.
SymbolSequence point_sequence(const SymbolicTrajectory& t);

/// l_i: length of the longest prefix of x[i..] that also starts at some
/// earlier position j < i (matches may overlap position i). l_0 = 0.
std::vector<std::size_t> match_lengths(std::span<const LocationSymbol> x);

/// n log2(n) / sum(l_i + 1), in bits per symbol; 0 when n <= 1.
/// Direct O(n^3) worst-case scan.
double entropy_rate(std::span<const LocationSymbol> x);

}  // namespace locrel
