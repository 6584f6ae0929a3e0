#include "locrel/pipeline.hpp"

#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <sstream>

using namespace locrel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("locrel-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
    return out;
}

fs::path make_corpus(const fs::path& dir) {
    RunConfig c;
    c.output_dir = dir;
    c.seed = 13;
    c.synth = heavy_tail_preset(60, 13);
    c.synth.heavy_tail->episodes_per_user = 8;
    c.synth.burst_prob = 0.05;
    c.synth.noise_prob = 0.1;
    run_batch("synth", c);
    return dir / "trajectories.csv";
}

const std::vector<std::string> kCommands{"summarize", "baseline", "metrics", "taxonomy",
                                         "diversity", "entropy-rate", "rank", "stats"};

}  // namespace

TEST_CASE("parallel_map keeps order and rethrows the first failure") {
    const auto squares = parallel_map(100, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < 100; ++i) CHECK(squares[i] == i * i);
    CHECK(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
    try {
        parallel_map(50, 4, [](std::size_t i) -> int {
            if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
            return 0;
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "7");
    }
}

TEST_CASE("outputs are identical across worker counts and modes") {
    TempDir tmp;
    const auto corpus = make_corpus(tmp.path / "corpus");
    for (const auto& cmd : kCommands) {
        CAPTURE(cmd);
        std::vector<std::map<std::string, std::string>> runs;
        for (std::size_t workers : {1u, 3u, 8u}) {
            for (bool streaming : {false, true}) {
                if (streaming && cmd != "summarize") continue;
                RunConfig c;
                c.inputs = {corpus};
                c.output_dir = tmp.path / (cmd + std::to_string(workers) + (streaming ? "s" : "b"));
                c.workers = workers;
                c.streaming = streaming;
                c.grid_n = {2, 4};
                c.grid_delta = {0, 960};
                const auto r = run_batch(cmd, c);
                CHECK_FALSE(r.files.empty());
                runs.push_back(contents(c.output_dir));
            }
        }
        for (const auto& r : runs) CHECK(r == runs.front());
    }
}

TEST_CASE("summarize with json output") {
    TempDir tmp;
    const auto corpus = make_corpus(tmp.path / "corpus");
    RunConfig c;
    c.inputs = {corpus};
    c.output_dir = tmp.path / "out";
    c.format = OutputFormat::Json;
    run_batch("summarize", c);
    CHECK(fs::exists(c.output_dir / "summary.json"));
    CHECK(fs::exists(c.output_dir / "summary_metrics.json"));
    CHECK_FALSE(fs::exists(c.output_dir / "summary.csv"));
}

TEST_CASE("metrics grid writes one file per cell") {
    TempDir tmp;
    const auto corpus = make_corpus(tmp.path / "corpus");
    RunConfig c;
    c.inputs = {corpus};
    c.output_dir = tmp.path / "out";
    const auto r = run_batch("metrics", c);
    CHECK(r.files.size() == 4 * 8 + 1);
    CHECK(fs::exists(c.output_dir / "metrics_N2_delta960s.json"));
    CHECK(fs::exists(c.output_dir / "metrics_N8_delta7200s.json"));
    CHECK(fs::exists(c.output_dir / "metrics_grid.csv"));
}

TEST_CASE("failures leave no partial outputs") {
    TempDir tmp;
    const auto bad = tmp.path / "bad.csv";
    std::ofstream(bad) << "user_id,timestamp,location\nu,1,A\nu,oops,B\n";
    RunConfig c;
    c.inputs = {bad};
    c.output_dir = tmp.path / "out";
    c.strict = true;
    CHECK_THROWS_AS(run_batch("summarize", c), DataError);
    CHECK(fs::is_empty(c.output_dir));

    c.strict = false;
    const auto r = run_batch("summarize", c);
    CHECK(r.ingest.malformed == 1);
    CHECK(fs::exists(c.output_dir / "summary.csv"));

    RunConfig u = c;
    u.params.min_occurrences = 1;
    CHECK_THROWS_AS(run_batch("summarize", u), UsageError);
    CHECK_THROWS_AS(run_batch("frobnicate", c), UsageError);
}

TEST_CASE("multiple inputs are merged") {
    TempDir tmp;
    std::ofstream(tmp.path / "a.csv") << "user_id,timestamp,location\nu1,1,A\nu1,3,A\n";
    std::ofstream(tmp.path / "b.csv") << "user_id,timestamp,location\nu1,2,B\nu2,1,C\n";
    RunConfig c;
    c.inputs = {tmp.path / "a.csv", tmp.path / "b.csv"};
    IngestReport report;
    const auto d = load_inputs(c, report);
    CHECK(report.malformed == 0);
    REQUIRE(d.size() == 2);
    CHECK(d[0].size() == 3);
    CHECK(d[0][1].location == LocationSymbol("B"));
}
