#include "locrel/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace locrel {

AbundanceVector::AbundanceVector(std::vector<double> proportions) : p_(std::move(proportions)) {
    if (p_.empty()) throw std::invalid_argument("abundance vector is empty");
    double sum = 0;
    for (double v : p_) {
        if (!(v > 0) || !std::isfinite(v)) {
            throw std::invalid_argument("abundance proportions must be positive and finite");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("abundance proportions must sum to 1");
    }
}

AbundanceVector AbundanceVector::from_counts(std::span<const double> counts) {
    double total = 0;
    for (double c : counts) {
        if (c < 0 || !std::isfinite(c)) throw std::invalid_argument("counts must be non-negative");
        total += c;
    }
    if (!(total > 0)) throw std::invalid_argument("counts sum to zero");
    std::vector<double> p;
    for (double c : counts) {
        if (c > 0) p.push_back(c / total);
    }
    return AbundanceVector(std::move(p));
}

AbundanceVector abundance(const SummaryTrajectory& summary) {
    if (summary.empty()) throw std::invalid_argument("abundance of an empty summary");
    const auto table = frequency_table(summary);
    std::vector<double> counts;
    counts.reserve(table.size());
    for (const auto& e : table.ranking()) counts.push_back(static_cast<double>(e.count));
    return AbundanceVector::from_counts(counts);
}

double shannon_index(const AbundanceVector& p) {
    double h = 0;
    for (double v : p.proportions()) h -= v * std::log(v);
    return h;
}

double simpson_index(const AbundanceVector& p) {
    double s = 0;
    for (double v : p.proportions()) s += v * v;
    return s;
}

double true_diversity(const AbundanceVector& p, double q) {
    if (!std::isfinite(q) || q < 0) throw std::invalid_argument("diversity order must be finite and >= 0");
    if (q == 0) return static_cast<double>(p.richness());
    if (q == 1) return std::exp(shannon_index(p));
    double sum = 0;
    for (double v : p.proportions()) sum += std::pow(v, q);
    return std::pow(sum, 1.0 / (1.0 - q));
}

DiversityProfile diversity_profile(const SummaryTrajectory& summary) {
    const auto p = abundance(summary);
    return {p.richness(), true_diversity(p, 1), true_diversity(p, 2)};
}

namespace {

void require_sorted(std::span<const double> values) {
    if (!std::is_sorted(values.begin(), values.end())) {
        throw std::invalid_argument("values must be sorted ascending");
    }
}

// Prefix sums of values shifted by their mean, so that squared deviations
// of any slice come out of two subtractions without large cancellation.
class SliceMoments {
public:
    explicit SliceMoments(std::span<const double> values) : sum_(values.size() + 1, 0), sq_(values.size() + 1, 0) {
        long double mean = 0;
        for (double v : values) mean += v;
        if (!values.empty()) mean /= static_cast<long double>(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const long double d = values[i] - mean;
            sum_[i + 1] = sum_[i] + d;
            sq_[i + 1] = sq_[i] + d * d;
        }
    }

    /// Squared deviation from the slice mean over [from, to).
    double ssd(std::size_t from, std::size_t to) const {
        const long double n = static_cast<long double>(to - from);
        const long double s = sum_[to] - sum_[from];
        const long double v = (sq_[to] - sq_[from]) - s * s / n;
        return v > 0 ? static_cast<double>(v) : 0.0;
    }

private:
    std::vector<long double> sum_;
    std::vector<long double> sq_;
};

// Fisher's exact dynamic program. Level m holds, for each start index j,
// the minimum SDCM of splitting values[j..n) into m classes. Levels are
// added one at a time so callers can sweep k upwards.
class FisherPartitioner {
public:
    explicit FisherPartitioner(std::span<const double> values) : n_(values.size()), moments_(values) {
        std::vector<double> level(n_ + 1, kInf);
        for (std::size_t j = 0; j < n_; ++j) level[j] = moments_.ssd(j, n_);
        levels_.push_back(std::move(level));
    }

    std::size_t max_classes() const { return n_; }

    std::vector<std::size_t> breaks(std::size_t k) {
        while (levels_.size() < k) add_level();
        std::vector<std::size_t> out;
        std::size_t j = 0;
        for (std::size_t m = k; m > 1; --m) {
            const double best = levels_[m - 1][j];
            const double tol = 1e-12 * (1.0 + std::abs(best));
            for (std::size_t b = j + 1; b + m - 1 <= n_; ++b) {
                if (moments_.ssd(j, b) + levels_[m - 2][b] <= best + tol) {
                    out.push_back(b);
                    j = b;
                    break;
                }
            }
        }
        return out;
    }

private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    void add_level() {
        const std::size_t m = levels_.size() + 1;
        const auto& prev = levels_.back();
        std::vector<double> level(n_ + 1, kInf);
        for (std::size_t j = 0; j + m <= n_; ++j) {
            double best = kInf;
            for (std::size_t b = j + 1; b + m - 1 <= n_; ++b) {
                best = std::min(best, moments_.ssd(j, b) + prev[b]);
            }
            level[j] = best;
        }
        levels_.push_back(std::move(level));
    }

    std::size_t n_;
    SliceMoments moments_;
    std::vector<std::vector<double>> levels_;
};

void check_breaks(std::size_t n, std::span<const std::size_t> breaks) {
    std::size_t prev = 0;
    for (std::size_t b : breaks) {
        if (b <= prev || b >= n) throw std::invalid_argument("invalid break vector");
        prev = b;
    }
}

}  // namespace

std::vector<std::size_t> jenks_breaks(std::span<const double> values, std::size_t k) {
    if (k == 0) throw std::invalid_argument("class count must be at least 1");
    if (k > values.size()) throw std::invalid_argument("more classes than values");
    require_sorted(values);
    FisherPartitioner fisher(values);
    return fisher.breaks(k);
}

double sdcm(std::span<const double> values, std::span<const std::size_t> breaks) {
    check_breaks(values.size(), breaks);
    SliceMoments moments(values);
    double total = 0;
    std::size_t from = 0;
    for (std::size_t b : breaks) {
        total += moments.ssd(from, b);
        from = b;
    }
    if (from < values.size()) total += moments.ssd(from, values.size());
    return total;
}

double gvf(std::span<const double> values, std::span<const std::size_t> breaks) {
    if (values.empty()) throw std::invalid_argument("gvf of no values");
    const double sdam = SliceMoments(values).ssd(0, values.size());
    if (sdam <= 0) return 1.0;
    return std::clamp((sdam - sdcm(values, breaks)) / sdam, 0.0, 1.0);
}

UserClassification classify_users(std::span<const double> values, double threshold) {
    if (values.empty()) throw std::invalid_argument("no values to classify");
    if (!(threshold >= 0 && threshold <= 1)) throw std::invalid_argument("threshold must lie in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    FisherPartitioner fisher(sorted);
    UserClassification out;
    std::vector<std::size_t> breaks;
    for (std::size_t k = 1; k <= fisher.max_classes(); ++k) {
        breaks = fisher.breaks(k);
        out.k = k;
        out.gvf = gvf(sorted, breaks);
        if (out.gvf >= threshold) break;
    }

    std::size_t from = 0;
    auto emit = [&](std::size_t to) {
        out.classes.push_back({sorted[from], sorted[to - 1], to - from,
                               static_cast<double>(to - from) / static_cast<double>(sorted.size())});
        from = to;
    };
    for (std::size_t b : breaks) {
        out.break_values.push_back(sorted[b]);
        emit(b);
    }
    emit(sorted.size());
    return out;
}

}  // namespace locrel
