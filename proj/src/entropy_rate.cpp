#include "locrel/entropy_rate.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

namespace locrel {

SymbolSequence unit_sequence(const SummaryTrajectory& summary) {
    SymbolSequence out;
    out.reserve(summary.units.size());
    for (const auto& u : summary.units) out.push_back(u.location);
    return out;
}

SymbolSequence point_sequence(const SymbolicTrajectory& t) {
    SymbolSequence out;
    out.reserve(t.size());
    for (const auto& p : t.points()) out.push_back(p.location);
    return out;
}

std::vector<std::size_t> match_lengths(std::span<const LocationSymbol> symbols) {
    // compare small integer codes instead of labels
    std::unordered_map<std::string, std::uint32_t> codes;
    std::vector<std::uint32_t> x;
    x.reserve(symbols.size());
    for (const auto& s : symbols) {
        x.push_back(codes.try_emplace(s.label(), static_cast<std::uint32_t>(codes.size())).first->second);
    }

    const std::size_t n = x.size();
    std::vector<std::size_t> out(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t longest = 0;
        for (std::size_t j = 0; j < i; ++j) {
            std::size_t k = 0;
            while (i + k < n && x[j + k] == x[i + k]) ++k;
            if (k > longest) longest = k;
        }
        out[i] = longest;
    }
    return out;
}

double entropy_rate(std::span<const LocationSymbol> x) {
    const std::size_t n = x.size();
    if (n <= 1) return 0.0;
    double denom = static_cast<double>(n);
    for (std::size_t l : match_lengths(x)) denom += static_cast<double>(l);
    const double nd = static_cast<double>(n);
    return nd * std::log2(nd) / denom;
}

}  // namespace locrel
