#include "locrel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

namespace locrel {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool is_probability(double p) { return p >= 0 && p <= 1; }

class UserGenerator {
public:
    UserGenerator(const SynthConfig& config, std::uint64_t seed) : config_(config), rng_(seed) {}

    std::vector<DwellEpisode> plan() {
        if (!config_.heavy_tail) return config_.episodes;
        const auto& ht = *config_.heavy_tail;

        std::vector<std::size_t> alphabet(config_.alphabet_size);
        std::iota(alphabet.begin(), alphabet.end(), std::size_t{0});
        std::shuffle(alphabet.begin(), alphabet.end(), rng_);
        alphabet.resize(ht.favourites);

        std::vector<double> weights(ht.favourites);
        for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = std::pow(ht.popularity_ratio, double(i));

        std::uniform_real_distribution<double> stretch(0.5, 1.5);
        std::vector<DwellEpisode> out;
        std::size_t previous = alphabet.size();
        for (std::size_t e = 0; e < ht.episodes_per_user; ++e) {
            // consecutive episodes at one location would merge into one stay
            auto w = weights;
            if (previous < w.size() && w.size() > 1) w[previous] = 0;
            std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
            const std::size_t fav = pick(rng_);
            previous = fav;
            out.push_back({alphabet[fav], ht.mean_duration * stretch(rng_), ht.rate_per_hour});
        }
        return out;
    }

    SymbolicTrajectory generate(const std::string& user_id, std::vector<PlantedUnit>& truth) {
        const auto episodes = plan();
        std::vector<TrajPoint> points;
        Timestamp t = config_.start_time;
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        for (std::size_t e = 0; e < episodes.size(); ++e) {
            const auto& ep = episodes[e];
            const Timestamp begin = t;
            const Timestamp stop = t + ep.duration;
            std::exponential_distribution<double> spacing(ep.rate_per_hour / 3600.0);
            Timestamp first = -1;
            Timestamp last = 0;
            for (Timestamp at = begin; at <= stop; at += spacing(rng_)) {
                last = emit(points, at, ep.location);
                if (first < 0) first = last;
            }
            truth.push_back({first, last, LocationSymbol(location_label(ep.location))});
            t = stop;

            if (e + 1 < episodes.size()) {
                std::vector<Timestamp> gap_times;
                for (std::size_t k = 0; k < config_.transition_events; ++k) {
                    gap_times.push_back(t + config_.transition_gap * unit(rng_));
                }
                std::sort(gap_times.begin(), gap_times.end());
                for (Timestamp at : gap_times) emit(points, at, random_location());
                t += config_.transition_gap;
            }
        }
        return SymbolicTrajectory(user_id, std::move(points));
    }

private:
    std::size_t random_location() {
        return std::uniform_int_distribution<std::size_t>(0, config_.alphabet_size - 1)(rng_);
    }

    std::size_t maybe_flip(std::size_t location) {
        if (config_.noise_prob == 0 || !std::bernoulli_distribution(config_.noise_prob)(rng_)) return location;
        const std::size_t other = std::uniform_int_distribution<std::size_t>(0, config_.alphabet_size - 2)(rng_);
        return other >= location ? other + 1 : other;
    }

    Timestamp emit(std::vector<TrajPoint>& points, Timestamp at, std::size_t location) {
        // whole seconds, as in operator records
        const Timestamp ts = std::floor(at);
        const Timestamp floor_ts = points.empty() ? ts : std::max(ts, points.back().timestamp);
        std::size_t copies = 1;
        if (config_.burst_prob > 0 && std::bernoulli_distribution(config_.burst_prob)(rng_)) {
            copies = config_.burst_size;
        }
        for (std::size_t c = 0; c < copies; ++c) {
            points.push_back({floor_ts, LocationSymbol(location_label(maybe_flip(location)))});
        }
        return floor_ts;
    }

    const SynthConfig& config_;
    std::mt19937_64 rng_;
};

}  // namespace

void SynthConfig::validate() const {
    if (alphabet_size < 2) throw std::invalid_argument("alphabet must hold at least 2 locations");
    if (!is_probability(noise_prob) || !is_probability(burst_prob)) {
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
    if (burst_size < 1) throw std::invalid_argument("burst size must be at least 1");
    if (!(transition_gap >= 0)) throw std::invalid_argument("transition gap must be non-negative");
    if (!std::isfinite(start_time) || start_time < 0) throw std::invalid_argument("invalid start time");
    for (const auto& ep : episodes) {
        if (ep.location >= alphabet_size) throw std::invalid_argument("episode location outside the alphabet");
        if (!(ep.duration > 0) || !(ep.rate_per_hour > 0)) {
            throw std::invalid_argument("episode durations and rates must be positive");
        }
    }
    if (heavy_tail) {
        const auto& ht = *heavy_tail;
        if (ht.favourites < 1 || ht.favourites > alphabet_size) {
            throw std::invalid_argument("favourite count must lie in [1, alphabet size]");
        }
        if (!(ht.popularity_ratio > 0 && ht.popularity_ratio <= 1)) {
            throw std::invalid_argument("popularity ratio must lie in (0, 1]");
        }
        if (!(ht.mean_duration > 0) || !(ht.rate_per_hour > 0)) {
            throw std::invalid_argument("durations and rates must be positive");
        }
    }
}

std::string location_label(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "LA%04zu", index);
    return buf;
}

SyntheticDataset generate_dataset(const SynthConfig& config) {
    config.validate();
    SyntheticDataset out;
    out.trajectories.reserve(config.n_users);
    out.ground_truth.resize(config.n_users);
    for (std::size_t u = 0; u < config.n_users; ++u) {
        UserGenerator gen(config, splitmix64(config.seed ^ splitmix64(u)));
        char id[32];
        std::snprintf(id, sizeof id, "u%06zu", u);
        out.trajectories.push_back(gen.generate(id, out.ground_truth[u]));
    }
    return out;
}

SynthConfig heavy_tail_preset(std::size_t n_users, std::uint64_t seed) {
    SynthConfig c;
    c.n_users = n_users;
    c.alphabet_size = 200;
    c.heavy_tail = HeavyTailPlan{};
    c.transition_gap = 1800;
    c.transition_events = 1;
    c.noise_prob = 0.03;
    c.seed = seed;
    return c;
}

}  // namespace locrel
