#include "locrel/taxonomy.hpp"

#include <algorithm>
#include <stdexcept>

namespace locrel {

namespace {

double share(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

double TaxonomyPartition::significant_share() const noexcept { return share(significant.size(), n_types); }
double TaxonomyPartition::transit_share() const noexcept { return share(transit.size(), n_types); }
double TaxonomyPartition::sporadic_share() const noexcept { return share(sporadic.size(), n_types); }
double TaxonomyPartition::insignificant_share() const noexcept { return share(insignificant.size(), n_types); }

std::set<LocationSymbol> top_n_frequent(const FrequencyTable& table, std::size_t n) {
    if (n > table.size()) {
        throw std::invalid_argument("requested top " + std::to_string(n) + " of only " +
                                    std::to_string(table.size()) + " locations");
    }
    std::set<LocationSymbol> out;
    for (std::size_t i = 0; i < n; ++i) out.insert(table.ranking()[i].location);
    return out;
}

std::set<LocationSymbol> top_n_frequent(const SymbolicTrajectory& t, std::size_t n) {
    return top_n_frequent(frequency_table(t), n);
}

TaxonomyPartition classify_locations(const SymbolicTrajectory& t, const SummaryTrajectory& summary) {
    const auto table = frequency_table(t);
    const auto attractive = distinct_locations(summary);
    const auto frequent = top_n_frequent(table, attractive.size());

    TaxonomyPartition part;
    part.n_types = table.size();
    for (const auto& e : table.ranking()) {
        const bool is_frequent = frequent.contains(e.location);
        const bool is_attractive = attractive.contains(e.location);
        if (is_frequent && is_attractive) {
            part.significant.insert(e.location);
        } else if (is_frequent) {
            part.transit.insert(e.location);
        } else if (is_attractive) {
            part.sporadic.insert(e.location);
        } else {
            part.insignificant.insert(e.location);
        }
    }
    return part;
}

ClassShares class_percentages(std::span<const SymbolicTrajectory> natives,
                              std::span<const SummaryTrajectory> summaries) {
    if (natives.empty()) throw std::invalid_argument("dataset is empty");
    if (natives.size() != summaries.size()) {
        throw std::invalid_argument("native and summary datasets differ in size");
    }
    ClassShares mean;
    for (std::size_t i = 0; i < natives.size(); ++i) {
        const auto p = classify_locations(natives[i], summaries[i]);
        mean.significant += p.significant_share();
        mean.transit += p.transit_share();
        mean.sporadic += p.sporadic_share();
        mean.insignificant += p.insignificant_share();
    }
    const double n = static_cast<double>(natives.size());
    mean.significant /= n;
    mean.transit /= n;
    mean.sporadic /= n;
    mean.insignificant /= n;
    return mean;
}

std::size_t matching_degree(const SymbolicTrajectory& t, const SummaryTrajectory& summary) {
    const auto table = frequency_table(t);
    const auto attractive = distinct_locations(summary);
    std::size_t k = 0;
    while (k < table.size() && attractive.contains(table.ranking()[k].location)) ++k;
    return k;
}

}  // namespace locrel
