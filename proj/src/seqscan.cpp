#include "locrel/seqscan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locrel {

void SeqScanParams::validate() const {
    if (min_occurrences < 2) {
        throw std::invalid_argument("N must be at least 2");
    }
    if (!std::isfinite(delta) || delta < 0) {
        throw std::invalid_argument("delta must be a finite non-negative number of seconds");
    }
}

Seconds occurrence_weight(const SymbolicTrajectory& t, std::size_t j) {
    if (j >= t.size()) {
        throw std::out_of_range("occurrence index " + std::to_string(j) + " out of range");
    }
    if (j == 0 || t[j].location != t[j - 1].location) return 0;
    return std::abs(t[j].timestamp - t[j - 1].timestamp);
}

Seconds symbol_weight(const SymbolicTrajectory& t, const LocationSymbol& l) {
    Seconds w = 0;
    for (std::size_t j = 1; j < t.size(); ++j) {
        if (t[j].location == l) w += occurrence_weight(t, j);
    }
    return w;
}

Seconds symbol_weight(const SymbolicTrajectory& t, const LocationSymbol& l, Timestamp from, Timestamp to) {
    Seconds w = 0;
    for (std::size_t j = 1; j < t.size(); ++j) {
        if (t[j - 1].timestamp < from || t[j].timestamp > to) continue;
        if (t[j].location == l && t[j - 1].location == l) {
            w += std::abs(t[j].timestamp - t[j - 1].timestamp);
        }
    }
    return w;
}

namespace {

SummaryUnit unit_over(const SymbolicTrajectory& t, std::size_t first, std::size_t last) {
    SummaryUnit u;
    u.location = t[first].location;
    u.start = t[first].timestamp;
    u.end = t[last].timestamp;
    for (std::size_t i = first; i <= last; ++i) {
        if (t[i].location != u.location) continue;
        ++u.occurrences;
        if (i > first && t[i - 1].location == u.location) {
            u.weight += t[i].timestamp - t[i - 1].timestamp;
        }
    }
    return u;
}

}  // namespace

SummaryTrajectory summarize(const SymbolicTrajectory& t, const SeqScanParams& params) {
    params.validate();

    struct Candidate {
        std::size_t count = 0;
        Seconds weight = 0;
        std::size_t first = 0;
        std::size_t last = 0;
    };
    std::unordered_map<std::string, Candidate> candidates;

    SummaryTrajectory out{t.user_id(), {}};
    bool active = false;
    std::size_t cluster_first = 0;
    std::size_t cluster_last = 0;

    for (std::size_t j = 0; j < t.size(); ++j) {
        const auto& loc = t[j].location;
        if (active && loc == t[cluster_first].location) {
            cluster_last = j;
            continue;
        }

        auto& c = candidates[loc.label()];
        if (c.count == 0) {
            c.first = j;
        } else if (c.last + 1 == j) {
            c.weight += t[j].timestamp - t[j - 1].timestamp;
        }
        ++c.count;
        c.last = j;

        if (c.count < params.min_occurrences || c.weight < params.delta) continue;

        if (active) {
            // last occurrence of the active symbol before the new window
            std::size_t end = c.first - 1;
            while (t[end].location != t[cluster_first].location) --end;
            out.units.push_back(unit_over(t, cluster_first, end));
        }
        active = true;
        cluster_first = c.first;
        cluster_last = j;
        candidates.clear();
    }
    if (active) out.units.push_back(unit_over(t, cluster_first, cluster_last));
    return out;
}

Summarizer::Summarizer(SeqScanParams params) : params_(params) {
    params_.validate();
}

std::optional<SummaryUnit> Summarizer::push(const TrajPoint& p) {
    if (p.location.empty()) {
        throw std::invalid_argument("empty location");
    }
    if (previous_ && p.timestamp < previous_->timestamp) {
        throw std::invalid_argument("point is older than the previous one");
    }
    const std::size_t seq = seq_++;
    const bool repeats = previous_ && previous_->location == p.location;
    const Seconds gap = repeats ? p.timestamp - previous_->timestamp : 0;
    previous_ = p;

    if (active_ && p.location == *active_) {
        const auto& back = cluster_.back();
        cluster_.push_back({seq, p.timestamp, back.count + 1, back.weight + gap});
        return std::nullopt;
    }

    auto& c = candidates_[p.location.label()];
    if (c.count == 0) {
        c.first_ts = p.timestamp;
        c.first_seq = seq;
    } else if (c.last_seq + 1 == seq) {
        c.weight += gap;
    }
    ++c.count;
    c.last_ts = p.timestamp;
    c.last_seq = seq;

    if (c.count < params_.min_occurrences || c.weight < params_.delta) return std::nullopt;

    std::optional<SummaryUnit> closed;
    if (active_) closed = close_before(c.first_seq);

    active_ = p.location;
    cluster_start_ = c.first_ts;
    cluster_.clear();
    cluster_.push_back({c.last_seq, c.last_ts, c.count, c.weight});
    candidates_.clear();
    return closed;
}

SummaryUnit Summarizer::close_before(std::size_t seq) const {
    auto it = std::partition_point(cluster_.begin(), cluster_.end(),
                                   [seq](const ClusterOccurrence& o) { return o.seq < seq; });
    // The opening occurrence always precedes any later candidate window.
    const auto& last = *std::prev(it);
    return SummaryUnit{cluster_start_, last.ts, *active_, last.count, last.weight};
}

std::optional<SummaryUnit> Summarizer::finish() {
    std::optional<SummaryUnit> closed;
    if (active_) {
        const auto& last = cluster_.back();
        closed = SummaryUnit{cluster_start_, last.ts, *active_, last.count, last.weight};
    }
    candidates_.clear();
    active_.reset();
    cluster_.clear();
    previous_.reset();
    seq_ = 0;
    return closed;
}

std::vector<PointClass> classify_points(const SymbolicTrajectory& t, const SummaryTrajectory& summary) {
    for (const auto& u : summary.units) {
        if (t.empty() || u.start < t[0].timestamp || u.end > t[t.size() - 1].timestamp || u.start > u.end) {
            throw std::invalid_argument("summary unit is not covered by the trajectory's time span");
        }
    }
    std::vector<PointClass> out(t.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto ts = t[i].timestamp;
        while (k < summary.units.size() && summary.units[k].end < ts) ++k;
        if (k < summary.units.size() && summary.units[k].start <= ts) {
            const bool own = t[i].location == summary.units[k].location;
            out[i] = {own ? PointClass::Kind::Cluster : PointClass::Kind::LocalNoise, k};
        }
    }
    return out;
}

double summarization_rate(const SymbolicTrajectory& t, const SummaryTrajectory& summary) {
    const auto native = distinct_locations(t).size();
    if (native == 0) {
        throw std::invalid_argument("summarization rate is undefined for an empty trajectory");
    }
    const auto kept = distinct_locations(summary).size();
    return 1.0 - static_cast<double>(kept) / static_cast<double>(native);
}

double unit_goodness(const SymbolicTrajectory& t, const SummaryUnit& u) {
    const Seconds span = u.end - u.start;
    if (span <= 0) return 1.0;
    return symbol_weight(t, u.location, u.start, u.end) / span;
}

std::optional<double> trajectory_goodness(const SymbolicTrajectory& t, const SummaryTrajectory& summary) {
    if (summary.empty()) return std::nullopt;
    double sum = 0;
    for (const auto& u : summary.units) sum += unit_goodness(t, u);
    return sum / static_cast<double>(summary.units.size());
}

namespace {

void check_aligned(std::span<const SymbolicTrajectory> natives, std::span<const SummaryTrajectory> summaries) {
    if (natives.empty()) {
        throw std::invalid_argument("dataset is empty");
    }
    if (natives.size() != summaries.size()) {
        throw std::invalid_argument("native and summary datasets differ in size");
    }
}

}  // namespace

std::optional<double> dataset_goodness(std::span<const SymbolicTrajectory> natives,
                                       std::span<const SummaryTrajectory> summaries) {
    check_aligned(natives, summaries);
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < natives.size(); ++i) {
        if (auto q = trajectory_goodness(natives[i], summaries[i])) {
            sum += *q;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

double dataset_summarization_rate(std::span<const SymbolicTrajectory> natives,
                                  std::span<const SummaryTrajectory> summaries) {
    check_aligned(natives, summaries);
    double sum = 0;
    for (std::size_t i = 0; i < natives.size(); ++i) {
        sum += natives[i].empty() ? 1.0 : summarization_rate(natives[i], summaries[i]);
    }
    return sum / static_cast<double>(natives.size());
}

}  // namespace locrel
