// locrel: attractive-location extraction and mobility diversity toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include "locrel/io.hpp"
#include "locrel/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace locrel;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// "loc:duration:rate,..." e.g. "3:2h:12,7:90m:8"
std::vector<DwellEpisode> parse_episodes(const std::string& text) {
    std::vector<DwellEpisode> out;
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) throw UsageError("episode '" + item + "' must be location:duration:rate");
        try {
            out.push_back({std::stoul(parts[0]), parse_duration(parts[1]), std::stod(parts[2])});
        } catch (const std::logic_error&) {
            throw UsageError("episode '" + item + "' is not numeric");
        }
    }
    return out;
}

struct Options {
    std::vector<std::string> inputs;
    std::string output_dir = ".";
    std::size_t n = 2;
    std::string delta = "16m";
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    std::string format = "csv";
    bool strict = false;

    bool streaming = false;
    double threshold = 0.7;
    std::string source = "summary";
    std::string grid_n;
    std::string grid_delta;

    std::string preset = "plan";
    std::size_t users = 100;
    std::size_t alphabet = 50;
    std::string episodes = "0:3h:12,1:2h:12,2:4h:12";
    double noise = 0;
    double burst_prob = 0;
    std::size_t burst_size = 2;
    std::string transition_gap = "30m";
    std::size_t transition_events = 0;
};

RunConfig to_config(const std::string& command, const Options& o) {
    RunConfig c;
    for (const auto& in : o.inputs) c.inputs.emplace_back(in);
    c.output_dir = o.output_dir;
    c.params = {o.n, parse_duration(o.delta)};
    c.workers = o.workers;
    c.seed = o.seed;
    c.format = o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    c.strict = o.strict;
    c.streaming = o.streaming;
    c.gvf_threshold = o.threshold;
    c.native_entropy = o.source == "native";
    if (!o.grid_n.empty()) {
        c.grid_n.clear();
        for (const auto& v : split(o.grid_n, ',')) {
            try {
                c.grid_n.push_back(std::stoul(v));
            } catch (const std::logic_error&) {
                throw UsageError("invalid N in grid: " + v);
            }
        }
    }
    if (!o.grid_delta.empty()) {
        c.grid_delta.clear();
        for (const auto& v : split(o.grid_delta, ',')) c.grid_delta.push_back(parse_duration(v));
    }
    if (command == "synth") {
        if (o.preset == "heavy-tail") {
            c.synth = heavy_tail_preset(o.users, o.seed);
        } else {
            c.synth.n_users = o.users;
            c.synth.alphabet_size = o.alphabet;
            c.synth.episodes = parse_episodes(o.episodes);
            c.synth.transition_gap = parse_duration(o.transition_gap);
            c.synth.transition_events = o.transition_events;
        }
        c.synth.noise_prob = o.noise;
        c.synth.burst_prob = o.burst_prob;
        c.synth.burst_size = o.burst_size;
    }
    return c;
}

void add_common(CLI::App* sub, Options& o, bool needs_input) {
    auto* in = sub->add_option("-i,--input", o.inputs, "Input CSV file(s): user_id,timestamp,location[,event]");
    if (needs_input) in->required();
    sub->add_option("-o,--output-dir", o.output_dir, "Directory for output files")->capture_default_str();
    sub->add_option("-N", o.n, "Minimum occurrences of a dominant location (>= 2)")->capture_default_str();
    sub->add_option("--delta", o.delta, "Minimum accumulated weight, e.g. 960s, 16m, 0.0111d")
        ->capture_default_str();
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed for randomized commands")->capture_default_str();
    sub->add_option("--format", o.format, "Per-user table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_flag("--strict", o.strict, "Fail on any malformed input row");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attractive-location extraction and mobility diversity analysis for symbolic trajectories"};
    app.require_subcommand(1);
    Options o;

    auto* summarize = app.add_subcommand("summarize", "Summarize trajectories into dominant-location units");
    add_common(summarize, o, true);
    summarize->add_flag("--streaming", o.streaming, "Feed points one at a time through the streaming summarizer");

    auto* baseline = app.add_subcommand("baseline", "RLE+ baseline: runs meeting the N and delta thresholds");
    add_common(baseline, o, true);

    auto* metrics = app.add_subcommand("metrics", "Summarization rate and goodness over an (N, delta) grid");
    add_common(metrics, o, true);
    metrics->add_option("--grid-N", o.grid_n, "Comma-separated N values (default 2,4,6,8)");
    metrics->add_option("--grid-delta", o.grid_delta, "Comma-separated deltas (default 0,2,4,8,16,30,60,120 minutes)");

    auto* taxonomy = app.add_subcommand("taxonomy", "Significant/transit/sporadic/insignificant location classes");
    add_common(taxonomy, o, true);

    auto* diversity = app.add_subcommand("diversity", "Diversity profiles (R, TD_H, TD_S) and Jenks user classes");
    add_common(diversity, o, true);
    diversity->add_option("--threshold", o.threshold, "GVF threshold for choosing the class count")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    auto* entropy = app.add_subcommand("entropy-rate", "Entropy rate of summary (or native) location sequences");
    add_common(entropy, o, true);
    entropy->add_option("--source", o.source, "Sequence to analyse")
        ->check(CLI::IsMember({"summary", "native"}))
        ->capture_default_str();

    auto* rank = app.add_subcommand("rank", "Visit probability by location rank, native and summary");
    add_common(rank, o, true);

    auto* stats = app.add_subcommand("stats", "Dataset summary statistics");
    add_common(stats, o, true);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with planted dwell periods");
    add_common(synth, o, false);
    synth->add_option("--preset", o.preset, "plan (explicit --episodes) or heavy-tail")
        ->check(CLI::IsMember({"plan", "heavy-tail"}))
        ->capture_default_str();
    synth->add_option("--users", o.users, "Number of users")->capture_default_str();
    synth->add_option("--alphabet", o.alphabet, "Number of location labels")->capture_default_str();
    synth->add_option("--episodes", o.episodes, "Dwell plan location:duration:rate_per_hour,...")
        ->capture_default_str();
    synth->add_option("--noise", o.noise, "Probability an event reports another location")->capture_default_str();
    synth->add_option("--burst-prob", o.burst_prob, "Probability of a same-timestamp burst")->capture_default_str();
    synth->add_option("--burst-size", o.burst_size, "Events per burst")->capture_default_str();
    synth->add_option("--transition-gap", o.transition_gap, "Gap between episodes")->capture_default_str();
    synth->add_option("--transition-events", o.transition_events, "Random-location events per gap")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const auto result = run_batch(command, to_config(command, o));
        if (result.ingest.malformed > 0) {
            std::cerr << "warning: skipped " << result.ingest.malformed << " malformed row(s) of "
                      << result.ingest.rows << '\n';
            for (const auto& p : result.ingest.problems) std::cerr << "  " << p << '\n';
        }
        for (const auto& f : result.files) std::cout << f.string() << '\n';
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
