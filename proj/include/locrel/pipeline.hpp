#pragma once

// Batch execution of the analysis commands over whole datasets. Per-user
// work runs on a worker pool; outputs do not depend on the worker count.

#include "locrel/core.hpp"
#include "locrel/io.hpp"
#include "locrel/seqscan.hpp"
#include "locrel/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace locrel {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path output_dir = ".";
    SeqScanParams params;
    std::size_t workers = 1;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Csv;
    bool strict = false;

    bool streaming = false;       ///< summarize: feed points through Summarizer
    double gvf_threshold = 0.7;   ///< diversity
    bool native_entropy = false;  ///< entropy-rate: native point sequence instead of units
    std::vector<std::size_t> grid_n{2, 4, 6, 8};                              ///< metrics
    std::vector<Seconds> grid_delta{0, 120, 240, 480, 960, 1800, 3600, 7200};  ///< metrics
    SynthConfig synth;            ///< synth (seed is taken from `seed`)

    /// Throws UsageError.
    void validate() const;
};

/// Applies fn(i) for i in [0, n) on `workers` threads; results keep index
/// order. The exception of the lowest failing index is rethrown.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(workers, n));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

/// Runs `t` through a Summarizer point by point.
SummaryTrajectory summarize_streaming(const SymbolicTrajectory& t, const SeqScanParams& params);

std::vector<SummaryTrajectory> summarize_all(std::span<const SymbolicTrajectory> dataset, const SeqScanParams& params,
                                             std::size_t workers, bool streaming = false);

std::vector<SymbolicTrajectory> load_inputs(const RunConfig& config, IngestReport& report);

struct RunResult {
    std::vector<std::filesystem::path> files;  ///< written outputs, in creation order
    IngestReport ingest;
};

/// Commands: summarize, baseline, metrics, taxonomy, diversity,
/// entropy-rate, rank, synth, stats. Outputs are staged and moved into
/// output_dir only when the whole command succeeds.
RunResult run_batch(const std::string& command, const RunConfig& config);

}  // namespace locrel
