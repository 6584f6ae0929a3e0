#include "locrel/io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace locrel;
using namespace locrel::testing;

TEST_CASE("timestamp parsing") {
    CHECK(parse_timestamp("1333238400") == 1333238400.0);
    CHECK(parse_timestamp("12.5") == 12.5);
    CHECK(parse_timestamp("1970-01-01T00:00:00") == 0.0);
    CHECK(parse_timestamp("2012-04-01T00:00:00Z") == 1333238400.0);
    CHECK(parse_timestamp("2012-04-10T09:45:00") == 1333238400.0 + 9 * 86400 + 9 * 3600 + 45 * 60);
    CHECK(parse_timestamp("2012-04-01T02:00:00+02:00") == 1333238400.0);
    CHECK(parse_timestamp("2012-03-31T19:00:00-05:00") == 1333238400.0);
    CHECK(parse_timestamp("2012-04-01T00:00:00.25Z") == 1333238400.25);
    CHECK(parse_timestamp("2000-02-29T00:00:00") == 951782400.0);
    CHECK_FALSE(parse_timestamp("").has_value());
    CHECK_FALSE(parse_timestamp("yesterday").has_value());
    CHECK_FALSE(parse_timestamp("-5").has_value());
    CHECK_FALSE(parse_timestamp("2012-13-01T00:00:00").has_value());
    CHECK_FALSE(parse_timestamp("2012-04-01T25:00:00").has_value());
    CHECK_FALSE(parse_timestamp("12abc").has_value());
}

TEST_CASE("duration parsing") {
    CHECK(parse_duration("960") == 960.0);
    CHECK(parse_duration("960s") == 960.0);
    CHECK(parse_duration("16m") == 960.0);
    CHECK(parse_duration("2h") == 7200.0);
    CHECK(parse_duration("1d") == 86400.0);
    CHECK(parse_duration("0.5m") == 30.0);
    CHECK_THROWS_AS(parse_duration(""), UsageError);
    CHECK_THROWS_AS(parse_duration("5x"), UsageError);
    CHECK_THROWS_AS(parse_duration("-1m"), UsageError);
    CHECK_THROWS_AS(parse_duration("m"), UsageError);
}

TEST_CASE("CSV fields") {
    using V = std::vector<std::string>;
    CHECK(split_csv_line("a,b,c") == V{"a", "b", "c"});
    CHECK(split_csv_line("a,,c") == V{"a", "", "c"});
    CHECK(split_csv_line("\"x,y\",\"he said \"\"hi\"\"\",z") == V{"x,y", "he said \"hi\"", "z"});
    CHECK(split_csv_line("a,b\r") == V{"a", "b"});
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("q\"") == "\"q\"\"\"");
    for (std::string s : {"x", "a,b", "\"", "line\nbreak", ""}) CHECK(split_csv_line(csv_escape(s)) == V{s});
}

TEST_CASE("number formatting round-trips") {
    CHECK(format_number(960) == "960");
    CHECK(format_number(0.5) == "0.5");
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        CHECK(std::stod(format_number(v)) == v);
    }
}

TEST_CASE("ingest groups, sorts and reports malformed rows") {
    std::istringstream in(
        "user_id,timestamp,location,event\n"
        "u2,30,B,call\n"
        "u1,20,A,sms\n"
        "u1,10,C,data\n"
        "u1,bad,A,call\n"
        "u2,,B,call\n"
        "u3,5\n"
        ",5,A,x\n"
        "u1,15,,x\n"
        "u2,30,\"D,1\",call\n");
    IngestReport report;
    const auto d = ingest(in, report);
    CHECK(report.rows == 9);
    CHECK(report.malformed == 5);
    CHECK(report.problems.size() == 5);
    REQUIRE(d.size() == 2);
    CHECK(d[0].user_id() == "u1");
    CHECK(d[0][0].location == sym("C"));
    CHECK(d[0][1].location == sym("A"));
    CHECK(d[1].user_id() == "u2");
    // same timestamp keeps file order
    CHECK(d[1][0].location == sym("B"));
    CHECK(d[1][1].location == sym("D,1"));
}

TEST_CASE("ingest header and strict mode") {
    IngestReport report;
    std::istringstream no_event("user_id,timestamp,location\nu,1,A\n");
    CHECK(ingest(no_event, report).size() == 1);

    std::istringstream bad_header("user,time,loc\nu,1,A\n");
    CHECK_THROWS_AS(ingest(bad_header, report), DataError);

    std::istringstream empty("");
    CHECK_THROWS_AS(ingest(empty, report), DataError);

    std::istringstream one_bad("user_id,timestamp,location\nu,1,A\nu,x,A\n");
    CHECK_THROWS_AS(ingest(one_bad, report, {true}), DataError);

    CHECK_THROWS_AS(ingest(std::filesystem::path("/nonexistent/file.csv"), report), DataError);
}

TEST_CASE("trajectory CSV round trip") {
    std::mt19937_64 rng(17);
    std::vector<SymbolicTrajectory> d;
    for (int u = 0; u < 20; ++u) {
        auto t = random_traj(rng, 5, 50);
        if (t.empty()) continue;
        std::vector<TrajPoint> pts(t.points().begin(), t.points().end());
        d.emplace_back("user" + std::to_string(10 + u), std::move(pts));
    }
    std::stringstream buf;
    write_trajectories_csv(buf, d);
    IngestReport report;
    const auto back = ingest(buf, report);
    CHECK(report.malformed == 0);
    CHECK(back == d);
}

TEST_CASE("summary CSV layout") {
    std::vector<SummaryTrajectory> s{{"u", {{2, 8, sym("a"), 4, 2}}}};
    std::vector<std::vector<double>> g{{1.0 / 3}};
    std::ostringstream out;
    write_summary_csv(out, s, g);
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "user_id,unit_idx,t_start,t_end,location,occurrences,weight_seconds,goodness");
    const auto f = split_csv_line(row);
    REQUIRE(f.size() == 8);
    CHECK(f[0] == "u");
    CHECK(f[2] == "2");
    CHECK(f[3] == "8");
    CHECK(f[4] == "a");
    CHECK(f[5] == "4");
    CHECK(std::stod(f[7]) == 1.0 / 3);
}
