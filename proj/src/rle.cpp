#include "locrel/rle.hpp"

namespace locrel {

std::vector<RleSegment> rle_encode(const SymbolicTrajectory& t) {
    std::vector<RleSegment> out;
    for (const auto& p : t.points()) {
        if (!out.empty() && out.back().location == p.location) {
            out.back().t_last = p.timestamp;
            ++out.back().count;
        } else {
            out.push_back({p.timestamp, p.timestamp, p.location, 1});
        }
    }
    return out;
}

std::vector<RleSegment> rle_plus(const SymbolicTrajectory& t, const SeqScanParams& params) {
    params.validate();
    auto segments = rle_encode(t);
    std::erase_if(segments, [&](const RleSegment& s) {
        return s.count < params.min_occurrences || s.span() < params.delta;
    });
    return segments;
}

SummaryTrajectory as_summary(const std::string& user_id, const std::vector<RleSegment>& segments) {
    SummaryTrajectory s{user_id, {}};
    s.units.reserve(segments.size());
    for (const auto& seg : segments) {
        s.units.push_back({seg.t_first, seg.t_last, seg.location, seg.count, seg.span()});
    }
    return s;
}

}  // namespace locrel
