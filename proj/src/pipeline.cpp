#include "locrel/pipeline.hpp"

#include "locrel/diversity.hpp"
#include "locrel/entropy_rate.hpp"
#include "locrel/rank.hpp"
#include "locrel/rle.hpp"
#include "locrel/taxonomy.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace locrel {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (workers < 1) throw UsageError("workers must be at least 1");
    if (!(gvf_threshold >= 0 && gvf_threshold <= 1)) throw UsageError("GVF threshold must lie in [0, 1]");
    for (auto n : grid_n) {
        if (n < 2) throw UsageError("grid values of N must be at least 2");
    }
    for (auto d : grid_delta) {
        if (!(d >= 0) || !std::isfinite(d)) throw UsageError("grid values of delta must be non-negative");
    }
}

SummaryTrajectory summarize_streaming(const SymbolicTrajectory& t, const SeqScanParams& params) {
    Summarizer s(params);
    SummaryTrajectory out{t.user_id(), {}};
    for (const auto& p : t.points()) {
        if (auto u = s.push(p)) out.units.push_back(std::move(*u));
    }
    if (auto u = s.finish()) out.units.push_back(std::move(*u));
    return out;
}

std::vector<SummaryTrajectory> summarize_all(std::span<const SymbolicTrajectory> dataset, const SeqScanParams& params,
                                             std::size_t workers, bool streaming) {
    params.validate();
    return parallel_map(dataset.size(), workers, [&](std::size_t i) {
        return streaming ? summarize_streaming(dataset[i], params) : summarize(dataset[i], params);
    });
}

std::vector<SymbolicTrajectory> load_inputs(const RunConfig& config, IngestReport& report) {
    if (config.inputs.empty()) throw UsageError("no --input given");
    if (config.inputs.size() == 1) return ingest(config.inputs.front(), report, {config.strict});

    // Merge several files before grouping so users may span files.
    std::string merged;
    for (std::size_t i = 0; i < config.inputs.size(); ++i) {
        std::ifstream in(config.inputs[i]);
        if (!in) throw DataError("cannot read " + config.inputs[i].string());
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (header && i > 0) {
                header = false;
                continue;
            }
            header = false;
            merged += line;
            merged += '\n';
        }
    }
    std::istringstream in(merged);
    return ingest(in, report, {config.strict});
}

namespace {

// Files are written into a hidden staging directory and renamed into place
// on commit; an uncommitted staging area is removed on destruction.
class StagedOutputs {
public:
    explicit StagedOutputs(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw DataError("cannot create output directory " + dir_.string() + ": " + ec.message());
        std::random_device rd;
        staging_ = dir_ / (".locrel-staging-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directory(staging_, ec);
        if (ec) throw DataError("cannot create staging directory: " + ec.message());
    }
    StagedOutputs(const StagedOutputs&) = delete;
    StagedOutputs& operator=(const StagedOutputs&) = delete;

    ~StagedOutputs() {
        std::error_code ec;
        fs::remove_all(staging_, ec);
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        std::ofstream out(staging_ / name, std::ios::binary);
        if (!out) throw DataError("cannot write " + name);
        body(out);
        out.flush();
        if (!out) throw DataError("write failed for " + name);
        names_.push_back(name);
    }

    std::vector<fs::path> commit() {
        std::vector<fs::path> out;
        for (const auto& n : names_) {
            std::error_code ec;
            fs::rename(staging_ / n, dir_ / n, ec);
            if (ec) throw DataError("cannot move " + n + " into place: " + ec.message());
            out.push_back(dir_ / n);
        }
        return out;
    }

private:
    fs::path dir_;
    fs::path staging_;
    std::vector<std::string> names_;
};

Json number_or_null(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

void write_table(StagedOutputs& out, const std::string& stem, const Table& table, OutputFormat format) {
    if (format == OutputFormat::Json) {
        out.write(stem + ".json", [&](std::ostream& os) {
            Json arr = Json::array();
            for (const auto& row : table.rows) {
                Json obj = Json::object();
                for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = row[c];
                arr.push_back(std::move(obj));
            }
            os << arr.dump(1) << '\n';
        });
        return;
    }
    out.write(stem + ".csv", [&](std::ostream& os) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ',';
                const auto& v = row[c];
                if (v.is_string()) {
                    os << csv_escape(v.get<std::string>());
                } else if (v.is_number_float()) {
                    os << format_number(v.get<double>());
                } else if (!v.is_null()) {
                    os << v.dump();
                }
            }
            os << '\n';
        }
    });
}

void write_json(StagedOutputs& out, const std::string& name, const Json& j) {
    out.write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

Json params_json(const SeqScanParams& p) {
    return Json{{"N", p.min_occurrences}, {"delta_seconds", p.delta}};
}

Json ingest_json(const IngestReport& r) {
    return Json{{"rows", r.rows}, {"malformed", r.malformed}, {"problems", r.problems}};
}

void write_units(StagedOutputs& out, const std::string& stem, std::span<const SummaryTrajectory> summaries,
                 std::span<const std::vector<double>> goodness, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out.write(stem + ".csv", [&](std::ostream& os) { write_summary_csv(os, summaries, goodness); });
        return;
    }
    Table t{{"user_id", "unit_idx", "t_start", "t_end", "location", "occurrences", "weight_seconds", "goodness"}, {}};
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        for (std::size_t j = 0; j < summaries[i].units.size(); ++j) {
            const auto& u = summaries[i].units[j];
            t.rows.push_back({summaries[i].user_id, j, u.start, u.end, u.location.label(), u.occurrences, u.weight,
                              goodness[i][j]});
        }
    }
    write_table(out, stem, t, format);
}

std::size_t unit_count(std::span<const SummaryTrajectory> summaries) {
    std::size_t n = 0;
    for (const auto& s : summaries) n += s.units.size();
    return n;
}

std::size_t empty_count(std::span<const SummaryTrajectory> summaries) {
    std::size_t n = 0;
    for (const auto& s : summaries) n += s.empty() ? 1 : 0;
    return n;
}

std::vector<SummaryTrajectory> baseline_all(std::span<const SymbolicTrajectory> natives, const SeqScanParams& params,
                                            std::size_t workers) {
    return parallel_map(natives.size(), workers,
                        [&](std::size_t i) { return as_summary(natives[i].user_id(), rle_plus(natives[i], params)); });
}

void cmd_summarize(const RunConfig& cfg, StagedOutputs& out, const IngestReport& report,
                   std::span<const SymbolicTrajectory> natives) {
    const auto summaries = summarize_all(natives, cfg.params, cfg.workers, cfg.streaming);
    const auto goodness = parallel_map(natives.size(), cfg.workers, [&](std::size_t i) {
        std::vector<double> q;
        for (const auto& u : summaries[i].units) q.push_back(unit_goodness(natives[i], u));
        return q;
    });
    write_units(out, "summary", summaries, goodness, cfg.format);

    Json m{{"command", "summarize"},
           {"params", params_json(cfg.params)},
           {"n_traj", natives.size()},
           {"n_units", unit_count(summaries)},
           {"empty_summaries", empty_count(summaries)}};
    m["summarization_rate"] = natives.empty() ? Json(nullptr) : Json(dataset_summarization_rate(natives, summaries));
    m["goodness"] = natives.empty() ? Json(nullptr) : number_or_null(dataset_goodness(natives, summaries));
    m["ingest"] = ingest_json(report);
    write_json(out, "summary_metrics.json", m);
}

void cmd_baseline(const RunConfig& cfg, StagedOutputs& out, const IngestReport& report,
                  std::span<const SymbolicTrajectory> natives) {
    const auto summaries = baseline_all(natives, cfg.params, cfg.workers);
    std::vector<std::vector<double>> goodness;
    for (const auto& s : summaries) goodness.emplace_back(s.units.size(), 1.0);
    write_units(out, "baseline", summaries, goodness, cfg.format);

    Json m{{"command", "baseline"},
           {"params", params_json(cfg.params)},
           {"n_traj", natives.size()},
           {"n_segments", unit_count(summaries)},
           {"empty_summaries", empty_count(summaries)}};
    m["summarization_rate"] = natives.empty() ? Json(nullptr) : Json(dataset_summarization_rate(natives, summaries));
    m["goodness"] = unit_count(summaries) ? Json(1.0) : Json(nullptr);
    m["ingest"] = ingest_json(report);
    write_json(out, "baseline_metrics.json", m);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

void cmd_metrics(const RunConfig& cfg, StagedOutputs& out, const IngestReport&,
                 std::span<const SymbolicTrajectory> natives) {
    if (natives.empty()) throw DataError("metrics need at least one trajectory");
    Table grid{{"N", "delta_seconds", "summarization_rate", "goodness", "mean_attractive", "mean_matching_degree",
                "rle_plus_summarization_rate", "rle_plus_mean_segments"},
               {}};
    for (std::size_t n : cfg.grid_n) {
        for (Seconds delta : cfg.grid_delta) {
            const SeqScanParams p{n, delta};
            const auto summaries = summarize_all(natives, p, cfg.workers);
            const auto baseline = baseline_all(natives, p, cfg.workers);
            const auto k = parallel_map(natives.size(), cfg.workers, [&](std::size_t i) {
                return static_cast<double>(matching_degree(natives[i], summaries[i]));
            });
            std::vector<double> attractive;
            for (const auto& s : summaries) attractive.push_back(static_cast<double>(distinct_locations(s).size()));

            const double rate = dataset_summarization_rate(natives, summaries);
            const auto q = dataset_goodness(natives, summaries);
            const double rle_rate = dataset_summarization_rate(natives, baseline);
            const double rle_segments =
                static_cast<double>(unit_count(baseline)) / static_cast<double>(natives.size());

            Json cell{{"params", params_json(p)},
                      {"n_traj", natives.size()},
                      {"seqscan",
                       {{"summarization_rate", rate},
                        {"goodness", number_or_null(q)},
                        {"mean_attractive", mean_of(attractive)},
                        {"mean_matching_degree", mean_of(k)},
                        {"empty_summaries", empty_count(summaries)}}},
                      {"rle_plus",
                       {{"summarization_rate", rle_rate},
                        {"mean_segments", rle_segments},
                        {"empty_summaries", empty_count(baseline)}}}};
            write_json(out, "metrics_N" + std::to_string(n) + "_delta" + format_number(delta) + "s.json", cell);
            grid.rows.push_back({n, delta, rate, number_or_null(q), mean_of(attractive), mean_of(k), rle_rate,
                                 rle_segments});
        }
    }
    write_table(out, "metrics_grid", grid, cfg.format);
}

void cmd_taxonomy(const RunConfig& cfg, StagedOutputs& out, const IngestReport&,
                  std::span<const SymbolicTrajectory> natives) {
    if (natives.empty()) throw DataError("taxonomy needs at least one trajectory");
    const auto summaries = summarize_all(natives, cfg.params, cfg.workers);
    struct Row {
        TaxonomyPartition part;
        std::size_t k;
        std::size_t attractive;
    };
    const auto rows = parallel_map(natives.size(), cfg.workers, [&](std::size_t i) {
        return Row{classify_locations(natives[i], summaries[i]), matching_degree(natives[i], summaries[i]),
                   distinct_locations(summaries[i]).size()};
    });

    Table t{{"user_id", "n_types", "n_attractive", "SL", "TL", "PL", "IL", "k"}, {}};
    std::vector<double> ks;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i].part;
        t.rows.push_back({natives[i].user_id(), p.n_types, rows[i].attractive, p.significant.size(),
                          p.transit.size(), p.sporadic.size(), p.insignificant.size(), rows[i].k});
        ks.push_back(static_cast<double>(rows[i].k));
    }
    write_table(out, "taxonomy", t, cfg.format);

    const auto shares = class_percentages(natives, summaries);
    write_json(out, "taxonomy_summary.json",
               Json{{"params", params_json(cfg.params)},
                    {"n_traj", natives.size()},
                    {"percentages",
                     {{"SL", 100 * shares.significant},
                      {"TL", 100 * shares.transit},
                      {"PL", 100 * shares.sporadic},
                      {"IL", 100 * shares.insignificant}}},
                    {"mean_matching_degree", mean_of(ks)}});
}

Json classification_json(const UserClassification& c) {
    Json classes = Json::array();
    for (const auto& uc : c.classes) {
        classes.push_back({{"lower", uc.lower}, {"upper", uc.upper}, {"count", uc.count}, {"share", uc.share}});
    }
    return Json{{"k", c.k}, {"gvf", c.gvf}, {"breaks", c.break_values}, {"classes", classes}};
}

void cmd_diversity(const RunConfig& cfg, StagedOutputs& out, const IngestReport&,
                   std::span<const SymbolicTrajectory> natives) {
    const auto summaries = summarize_all(natives, cfg.params, cfg.workers);
    const auto profiles = parallel_map(summaries.size(), cfg.workers, [&](std::size_t i) {
        return summaries[i].empty() ? std::optional<DiversityProfile>{} : diversity_profile(summaries[i]);
    });

    Table t{{"user_id", "R", "TD_H", "TD_S"}, {}};
    std::vector<double> r, h, s;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        if (!profiles[i]) continue;
        t.rows.push_back({summaries[i].user_id, profiles[i]->richness, profiles[i]->td_h, profiles[i]->td_s});
        r.push_back(static_cast<double>(profiles[i]->richness));
        h.push_back(profiles[i]->td_h);
        s.push_back(profiles[i]->td_s);
    }
    write_table(out, "diversity", t, cfg.format);

    Json report{{"params", params_json(cfg.params)},
                {"threshold", cfg.gvf_threshold},
                {"n_users", r.size()},
                {"skipped_empty", natives.size() - r.size()}};
    if (!r.empty()) {
        report["R"] = classification_json(classify_users(r, cfg.gvf_threshold));
        report["TD_H"] = classification_json(classify_users(h, cfg.gvf_threshold));
        report["TD_S"] = classification_json(classify_users(s, cfg.gvf_threshold));
    }
    write_json(out, "diversity_classes.json", report);
}

void cmd_entropy_rate(const RunConfig& cfg, StagedOutputs& out, const IngestReport&,
                      std::span<const SymbolicTrajectory> natives) {
    std::vector<SummaryTrajectory> summaries;
    if (!cfg.native_entropy) summaries = summarize_all(natives, cfg.params, cfg.workers);
    const auto rates = parallel_map(natives.size(), cfg.workers, [&](std::size_t i) {
        const auto seq = cfg.native_entropy ? point_sequence(natives[i]) : unit_sequence(summaries[i]);
        return std::pair{seq.size(), entropy_rate(seq)};
    });

    Table t{{"user_id", cfg.native_entropy ? "n_points" : "n_units", "entropy_rate_bits"}, {}};
    std::vector<double> values;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        t.rows.push_back({natives[i].user_id(), rates[i].first, rates[i].second});
        values.push_back(rates[i].second);
    }
    write_table(out, "entropy_rate", t, cfg.format);

    std::sort(values.begin(), values.end());
    Table ecdf{{"entropy_rate_bits", "cumulative_fraction"}, {}};
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        ecdf.rows.push_back({values[i], static_cast<double>(i + 1) / static_cast<double>(values.size())});
    }
    write_table(out, "entropy_rate_ecdf", ecdf, cfg.format);
}

Table rank_table(const RankDistribution& d) {
    Table t{{"rank", "probability"}, {}};
    for (std::size_t r = 1; r <= d.max_rank(); ++r) t.rows.push_back({r, d.at(r)});
    return t;
}

void cmd_rank(const RunConfig& cfg, StagedOutputs& out, const IngestReport&,
              std::span<const SymbolicTrajectory> natives) {
    if (natives.empty()) throw DataError("rank distribution needs at least one trajectory");
    const auto summaries = summarize_all(natives, cfg.params, cfg.workers);
    const auto native_parts =
        parallel_map(natives.size(), cfg.workers, [&](std::size_t i) { return rank_distribution_traj(natives[i]); });
    write_table(out, "rank_native", rank_table(mean_distribution(native_parts)), cfg.format);
    if (empty_count(summaries) < summaries.size()) {
        write_table(out, "rank_summary", rank_table(rank_distribution_dataset(std::span<const SummaryTrajectory>(summaries))),
                    cfg.format);
    }
}

void cmd_stats(const RunConfig& cfg, StagedOutputs& out, const IngestReport& report,
               std::span<const SymbolicTrajectory> natives) {
    (void)cfg;
    const auto st = dataset_stats(natives);
    write_json(out, "stats.json",
               Json{{"n_traj", st.n_traj},
                    {"n_records", st.n_records},
                    {"n_locations", st.n_locations},
                    {"avg_len", st.avg_len},
                    {"std_len", st.std_len},
                    {"ingest", ingest_json(report)}});
}

Json planted_json(const SyntheticDataset& ds) {
    Json users = Json::array();
    for (std::size_t i = 0; i < ds.trajectories.size(); ++i) {
        Json units = Json::array();
        for (const auto& u : ds.ground_truth[i]) {
            units.push_back({{"start", u.start}, {"end", u.end}, {"location", u.location.label()}});
        }
        users.push_back({{"user_id", ds.trajectories[i].user_id()}, {"planted", units}});
    }
    return users;
}

}  // namespace

RunResult run_batch(const std::string& command, const RunConfig& config) {
    using Handler = void (*)(const RunConfig&, StagedOutputs&, const IngestReport&, std::span<const SymbolicTrajectory>);
    static const std::map<std::string, Handler> handlers{
        {"summarize", cmd_summarize}, {"baseline", cmd_baseline}, {"metrics", cmd_metrics},
        {"taxonomy", cmd_taxonomy},   {"diversity", cmd_diversity}, {"entropy-rate", cmd_entropy_rate},
        {"rank", cmd_rank},           {"stats", cmd_stats}};

    config.validate();
    RunResult result;
    StagedOutputs out(config.output_dir);

    if (command == "synth") {
        auto synth = config.synth;
        synth.seed = config.seed;
        SyntheticDataset ds;
        try {
            ds = generate_dataset(synth);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        out.write("trajectories.csv", [&](std::ostream& os) { write_trajectories_csv(os, ds.trajectories); });
        write_json(out, "ground_truth.json",
                   Json{{"seed", synth.seed}, {"n_users", synth.n_users}, {"users", planted_json(ds)}});
        result.files = out.commit();
        return result;
    }

    const auto it = handlers.find(command);
    if (it == handlers.end()) throw UsageError("unknown command '" + command + "'");
    const auto natives = load_inputs(config, result.ingest);
    it->second(config, out, result.ingest, natives);
    result.files = out.commit();
    return result;
}

}  // namespace locrel
