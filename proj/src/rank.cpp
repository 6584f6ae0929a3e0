#include "locrel/rank.hpp"

#include <algorithm>
#include <stdexcept>

namespace locrel {

RankDistribution rank_distribution(const FrequencyTable& table) {
    if (table.empty()) throw std::invalid_argument("rank distribution of an empty sequence");
    RankDistribution d;
    d.probabilities.reserve(table.size());
    const double total = static_cast<double>(table.total());
    for (const auto& e : table.ranking()) d.probabilities.push_back(static_cast<double>(e.count) / total);
    return d;
}

RankDistribution rank_distribution_traj(const SymbolicTrajectory& t) {
    return rank_distribution(frequency_table(t));
}

RankDistribution rank_distribution_traj(const SummaryTrajectory& s) {
    return rank_distribution(frequency_table(s));
}

RankDistribution mean_distribution(std::span<const RankDistribution> parts) {
    if (parts.empty()) throw std::invalid_argument("rank distribution of an empty dataset");
    std::size_t r_max = 0;
    for (const auto& p : parts) r_max = std::max(r_max, p.max_rank());
    RankDistribution out;
    out.probabilities.assign(r_max, 0.0);
    for (const auto& p : parts) {
        for (std::size_t r = 0; r < p.max_rank(); ++r) out.probabilities[r] += p.probabilities[r];
    }
    for (auto& v : out.probabilities) v /= static_cast<double>(parts.size());
    return out;
}

RankDistribution rank_distribution_dataset(std::span<const SymbolicTrajectory> dataset) {
    std::vector<RankDistribution> parts;
    parts.reserve(dataset.size());
    for (const auto& t : dataset) parts.push_back(rank_distribution_traj(t));
    return mean_distribution(parts);
}

RankDistribution rank_distribution_dataset(std::span<const SummaryTrajectory> dataset) {
    std::vector<RankDistribution> parts;
    parts.reserve(dataset.size());
    for (const auto& s : dataset) {
        if (!s.empty()) parts.push_back(rank_distribution_traj(s));
    }
    return mean_distribution(parts);
}

}  // namespace locrel
