#include "locrel/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace locrel {

LocationSymbol::LocationSymbol(std::string label) : label_(std::move(label)) {
    if (label_.empty()) {
        throw std::invalid_argument("location label must not be empty");
    }
}

SymbolicTrajectory::SymbolicTrajectory(std::string user_id, std::vector<TrajPoint> points)
    : user_id_(std::move(user_id)), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].timestamp)) {
            throw std::invalid_argument("trajectory " + user_id_ + ": non-finite timestamp");
        }
        if (points_[i].location.empty()) {
            throw std::invalid_argument("trajectory " + user_id_ + ": empty location");
        }
        if (i > 0 && points_[i].timestamp < points_[i - 1].timestamp) {
            throw std::invalid_argument("trajectory " + user_id_ + ": timestamps decrease at index " +
                                        std::to_string(i));
        }
    }
}

FrequencyTable FrequencyTable::from_occurrences(std::span<const TrajPoint> occurrences) {
    FrequencyTable table;
    std::vector<std::size_t> first_pos;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        const auto& p = occurrences[i];
        auto [it, inserted] = table.index_.try_emplace(p.location.label(), table.ranked_.size());
        if (inserted) {
            table.ranked_.push_back({p.location, 0, p.timestamp});
            first_pos.push_back(i);
        }
        ++table.ranked_[it->second].count;
    }
    table.total_ = occurrences.size();

    std::vector<std::size_t> order(table.ranked_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = table.ranked_[a];
        const auto& eb = table.ranked_[b];
        if (ea.count != eb.count) return ea.count > eb.count;
        if (ea.first_seen != eb.first_seen) return ea.first_seen < eb.first_seen;
        if (first_pos[a] != first_pos[b]) return first_pos[a] < first_pos[b];
        return ea.location < eb.location;
    });

    std::vector<Entry> ranked;
    ranked.reserve(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        ranked.push_back(std::move(table.ranked_[order[pos]]));
        table.index_[ranked.back().location.label()] = pos;
    }
    table.ranked_ = std::move(ranked);
    return table;
}

std::size_t FrequencyTable::count(const LocationSymbol& l) const {
    auto it = index_.find(l.label());
    return it == index_.end() ? 0 : ranked_[it->second].count;
}

std::size_t FrequencyTable::rank(const LocationSymbol& l) const {
    auto it = index_.find(l.label());
    return it == index_.end() ? 0 : it->second + 1;
}

FrequencyTable frequency_table(const SymbolicTrajectory& t) {
    return FrequencyTable::from_occurrences(t.points());
}

FrequencyTable frequency_table(const SummaryTrajectory& s) {
    std::vector<TrajPoint> occ;
    occ.reserve(s.units.size());
    for (const auto& u : s.units) occ.push_back({u.start, u.location});
    return FrequencyTable::from_occurrences(occ);
}

std::set<LocationSymbol> distinct_locations(const SymbolicTrajectory& t) {
    std::set<LocationSymbol> out;
    for (const auto& p : t.points()) out.insert(p.location);
    return out;
}

std::set<LocationSymbol> distinct_locations(const SummaryTrajectory& s) {
    std::set<LocationSymbol> out;
    for (const auto& u : s.units) out.insert(u.location);
    return out;
}

DatasetStats dataset_stats(std::span<const SymbolicTrajectory> dataset) {
    DatasetStats st;
    if (dataset.empty()) return st;
    std::unordered_set<std::string> labels;
    for (const auto& t : dataset) {
        st.n_records += t.size();
        for (const auto& p : t.points()) labels.insert(p.location.label());
    }
    st.n_traj = dataset.size();
    st.n_locations = labels.size();
    st.avg_len = static_cast<double>(st.n_records) / static_cast<double>(st.n_traj);
    double ss = 0;
    for (const auto& t : dataset) {
        const double d = static_cast<double>(t.size()) - st.avg_len;
        ss += d * d;
    }
    st.std_len = std::sqrt(ss / static_cast<double>(st.n_traj));
    return st;
}

}  // namespace locrel
