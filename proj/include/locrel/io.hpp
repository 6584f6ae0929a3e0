#pragma once

// CSV ingestion and serialization of trajectories and summaries.
//
// Input schema: header `user_id,timestamp,location[,event]`. Timestamps
// are epoch seconds or ISO-8601 (`2012-04-10T09:45:00`, optional fraction,
// `Z` or `+HH:MM` offset; no offset means UTC). The event column is ignored.

#include "locrel/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace locrel {

/// Malformed input data or a data-level failure (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad command-line usage or configuration (CLI exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IngestReport {
    std::size_t rows = 0;       ///< data rows read, excluding the header
    std::size_t malformed = 0;  ///< rows rejected
    std::vector<std::string> problems;  ///< first few rejection messages
};

struct IngestOptions {
    bool strict = false;  ///< any malformed row is a DataError
};

/// Groups rows by user (users in ascending id order), stably sorted by
/// timestamp within each user.
std::vector<SymbolicTrajectory> ingest(std::istream& in, IngestReport& report, IngestOptions options = {});
std::vector<SymbolicTrajectory> ingest(const std::filesystem::path& path, IngestReport& report,
                                       IngestOptions options = {});

void write_trajectories_csv(std::ostream& out, std::span<const SymbolicTrajectory> dataset);

/// `user_id,unit_idx,t_start,t_end,location,occurrences,weight_seconds,goodness`;
/// goodness[i][j] belongs to summaries[i].units[j].
void write_summary_csv(std::ostream& out, std::span<const SummaryTrajectory> summaries,
                       std::span<const std::vector<double>> goodness);

/// Epoch seconds or ISO-8601; nullopt when unparseable.
std::optional<double> parse_timestamp(std::string_view text);

/// Duration with optional unit suffix s, m, h or d (`16m`, `0.0111d`, `960`).
/// Throws UsageError.
double parse_duration(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

/// RFC 4180 field splitting (quoted fields, doubled quotes).
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

}  // namespace locrel
