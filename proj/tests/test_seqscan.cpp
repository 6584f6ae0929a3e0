#include "locrel/seqscan.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace locrel;
using namespace locrel::testing;

namespace {

SummaryUnit unit(double start, double end, const std::string& l) { return {start, end, sym(l), 0, 0}; }

void check_spans(const SummaryTrajectory& s, const std::vector<SummaryUnit>& expected) {
    REQUIRE(s.units.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(s.units[i].start == expected[i].start);
        CHECK(s.units[i].end == expected[i].end);
        CHECK(s.units[i].location == expected[i].location);
    }
}

std::vector<SummaryUnit> run_streaming(const SymbolicTrajectory& t, const SeqScanParams& p) {
    Summarizer s(p);
    std::vector<SummaryUnit> out;
    for (const auto& pt : t.points()) {
        if (auto u = s.push(pt)) out.push_back(*u);
    }
    if (auto u = s.finish()) out.push_back(*u);
    return out;
}

}  // namespace

TEST_CASE("occurrence weight") {
    const auto t = example_trajectory();
    CHECK(occurrence_weight(t, 1) == 2.0);
    CHECK(occurrence_weight(t, 0) == 0.0);
    CHECK(occurrence_weight(t, 2) == 0.0);
    CHECK_THROWS_AS(occurrence_weight(t, 10), std::out_of_range);
}

TEST_CASE("symbol weight") {
    const auto t = example_trajectory();
    CHECK(symbol_weight(t, sym("a")) == 2.0);
    CHECK(symbol_weight(t, sym("b")) == 4.0);
    CHECK(symbol_weight(t, sym("c")) == 0.0);
    CHECK(symbol_weight(SymbolicTrajectory(), sym("a")) == 0.0);
    CHECK(symbol_weight(make_traj({{0, "a"}, {1, "b"}, {2, "a"}}), sym("a")) == 0.0);
    CHECK(symbol_weight(t, sym("z")) == 0.0);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((SeqScanParams{1, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SeqScanParams{2, -1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((SeqScanParams{2, 0}.validate()));
    CHECK_THROWS_AS(summarize(example_trajectory(), {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Summarizer({2, -5}), std::invalid_argument);
}

TEST_CASE("summarize worked example") {
    const auto t = example_trajectory();
    SUBCASE("N=3, delta=2") {
        const auto s = summarize(t, {3, 2});
        check_spans(s, {unit(tx(1), tx(4), "a"), unit(tx(6), tx(10), "b")});
        CHECK(s.units[0].occurrences == 3);
        CHECK(s.units[0].weight == 2.0);
        CHECK(s.units[1].occurrences == 4);
        CHECK(s.units[1].weight == 4.0);
        CHECK(s.user_id == "u");
    }
    SUBCASE("N=3, delta=4") {
        check_spans(summarize(t, {3, 4}), {unit(tx(6), tx(10), "b")});
    }
}

TEST_CASE("summarize simple cases") {
    check_spans(summarize(make_traj({{0, "a"}, {2, "a"}, {4, "a"}}), {2, 1}), {unit(0, 4, "a")});
    CHECK(summarize(make_traj("abcdefg"), {2, 0}).empty());
    CHECK(summarize(SymbolicTrajectory(), {2, 0}).empty());
    CHECK(summarize(make_traj("a"), {2, 0}).empty());
}

TEST_CASE("reoccurrence of the active symbol does not erase competing evidence") {
    // a@t8 lands between b's occurrences; b still wins at t9.
    const auto s = summarize(example_trajectory(), {3, 2});
    REQUIRE(s.units.size() == 2);
    CHECK(s.units[1].location == sym("b"));
}

TEST_CASE("pair weight needs both points after the last reset") {
    // b@2 precedes the reset at a@3, so b's evidence restarts at b@4.
    const auto t = make_traj({{0, "a"}, {1, "a"}, {2, "b"}, {3, "a"}, {4, "b"}, {5, "b"}, {6, "b"}});
    const auto s = summarize(t, {3, 1});
    REQUIRE(s.units.size() == 2);
    CHECK(s.units[0].location == sym("a"));
    CHECK(s.units[0].end == 3);
    CHECK(s.units[1].start == 4);
    CHECK(s.units[1].weight == 2.0);
}

TEST_CASE("type sets are not monotone in delta") {
    // Opening a's cluster at delta=2 clears x's evidence; at delta=5 a never
    // opens and x accumulates enough occurrences.
    const auto t = make_traj({{0, "x"}, {10, "x"}, {11, "a"}, {12, "a"}, {13, "a"}, {14, "x"}, {24, "x"}});
    const auto low = summarize(t, {3, 2});
    const auto high = summarize(t, {3, 5});
    CHECK(distinct_locations(low) == std::set<LocationSymbol>{sym("a")});
    CHECK(distinct_locations(high) == std::set<LocationSymbol>{sym("x")});
}

TEST_CASE("streaming summarizer") {
    const auto t = example_trajectory();
    SUBCASE("emission timing") {
        Summarizer s({3, 2});
        std::vector<std::pair<std::size_t, SummaryUnit>> emitted;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (auto u = s.push(t[i])) emitted.emplace_back(i, *u);
        }
        REQUIRE(emitted.size() == 1);
        CHECK(emitted[0].first == 8);  // t9
        CHECK(emitted[0].second.start == tx(1));
        CHECK(emitted[0].second.end == tx(4));
        CHECK(emitted[0].second.location == sym("a"));
        const auto last = s.finish();
        REQUIRE(last);
        CHECK(last->start == tx(6));
        CHECK(last->end == tx(10));
        CHECK(last->location == sym("b"));
    }
    SUBCASE("nothing dominant") {
        Summarizer s({2, 0});
        CHECK(!s.push({0, sym("a")}));
        CHECK(!s.push({1, sym("b")}));
        CHECK(!s.finish());
    }
    SUBCASE("single point") {
        Summarizer s({2, 0});
        CHECK(!s.push({0, sym("a")}));
        CHECK(!s.finish());
    }
    SUBCASE("older points are rejected") {
        Summarizer s({2, 0});
        s.push({5, sym("a")});
        CHECK_THROWS_AS(s.push({4, sym("a")}), std::invalid_argument);
        CHECK_NOTHROW(s.push({5, sym("a")}));
    }
    SUBCASE("finish resets the summarizer") {
        Summarizer s({3, 2});
        for (const auto& p : t.points()) s.push(p);
        s.finish();
        CHECK(run_streaming(t, {3, 2}) == summarize(t, {3, 2}).units);
        CHECK_NOTHROW(s.push({0, sym("a")}));
    }
}

TEST_CASE("point classification") {
    const auto t = example_trajectory();
    const auto s = summarize(t, {3, 2});
    const auto c = classify_points(t, s);
    REQUIRE(c.size() == 10);
    using K = PointClass::Kind;
    CHECK(c[0] == PointClass{K::Cluster, 0});
    CHECK(c[2] == PointClass{K::LocalNoise, 0});
    CHECK(c[4].kind == K::Transition);
    CHECK(c[7] == PointClass{K::LocalNoise, 1});
    CHECK(c[9] == PointClass{K::Cluster, 1});

    for (const auto& pc : classify_points(t, SummaryTrajectory{})) CHECK(pc.kind == K::Transition);

    const auto run = make_traj("aaaa", 3.0);
    for (const auto& pc : classify_points(run, summarize(run, {2, 0}))) CHECK(pc == PointClass{K::Cluster, 0});

    SummaryTrajectory outside{"u", {unit(0, 100, "a")}};
    CHECK_THROWS_AS(classify_points(t, outside), std::invalid_argument);
}

TEST_CASE("summarization rate") {
    const auto t3 = make_traj("abaacbccaa", 2.0, 2.0);
    SummaryTrajectory s3{"u", {unit(tx(1), tx(4), "a"), unit(tx(5), tx(8), "c"), unit(tx(9), tx(10), "a")}};
    CHECK(summarization_rate(t3, s3) == doctest::Approx(1.0 / 3.0));
    CHECK(summarization_rate(t3, SummaryTrajectory{}) == 1.0);
    SummaryTrajectory all{"u", {unit(2, 4, "a"), unit(6, 8, "b"), unit(10, 12, "c")}};
    CHECK(summarization_rate(t3, all) == 0.0);
    CHECK_THROWS_AS(summarization_rate(SymbolicTrajectory(), SummaryTrajectory{}), std::invalid_argument);

    const auto t = example_trajectory();
    CHECK(summarization_rate(t, summarize(t, {3, 2})) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("goodness") {
    const auto t = example_trajectory();
    const auto s = summarize(t, {3, 2});
    CHECK(unit_goodness(t, s.units[0]) == doctest::Approx(1.0 / 3.0));
    CHECK(unit_goodness(t, s.units[1]) == doctest::Approx(0.5));
    CHECK(*trajectory_goodness(t, s) == doctest::Approx(5.0 / 12.0));
    CHECK(!trajectory_goodness(t, SummaryTrajectory{}));

    const auto run = make_traj({{0, "a"}, {2, "a"}});
    CHECK(unit_goodness(run, summarize(run, {2, 0}).units[0]) == 1.0);
    const auto same_instant = make_traj({{5, "a"}, {5, "a"}});
    CHECK(unit_goodness(same_instant, summarize(same_instant, {2, 0}).units[0]) == 1.0);
}

TEST_CASE("dataset metrics") {
    // rates 0.5 and 1.0
    std::vector<SymbolicTrajectory> d{make_traj("aabb"), make_traj("ab")};
    std::vector<SummaryTrajectory> s{SummaryTrajectory{"u", {unit(0, 1, "a")}}, SummaryTrajectory{}};
    CHECK(dataset_summarization_rate(d, s) == doctest::Approx(0.75));
    CHECK(*dataset_goodness(d, s) == doctest::Approx(1.0));
    CHECK(!dataset_goodness(std::vector{d[1]}, std::vector{s[1]}));
    CHECK_THROWS_AS(dataset_goodness({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(dataset_summarization_rate(d, std::vector{s[0]}), std::invalid_argument);
}

TEST_CASE("summary invariants on random trajectories") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = random_traj(rng, 5, 120, 6, 0.55, 1);
        const SeqScanParams p{2 + static_cast<std::size_t>(trial % 4), static_cast<double>(trial % 9)};
        const auto s = summarize(t, p);
        for (std::size_t i = 0; i < s.units.size(); ++i) {
            const auto& u = s.units[i];
            if (i > 0) CHECK(s.units[i - 1].end < u.start);
            CHECK(u.start <= u.end);
            CHECK(u.occurrences >= p.min_occurrences);
            CHECK(u.weight >= p.delta);
            CHECK(u.weight <= u.end - u.start);

            // bounded by its own symbol; fields match a direct recount
            std::size_t first = t.size(), last = 0, occ = 0;
            for (std::size_t j = 0; j < t.size(); ++j) {
                if (t[j].timestamp < u.start || t[j].timestamp > u.end) continue;
                first = std::min(first, j);
                last = j;
                if (t[j].location == u.location) ++occ;
            }
            REQUIRE(first < t.size());
            CHECK(t[first].location == u.location);
            CHECK(t[last].location == u.location);
            CHECK(occ == u.occurrences);
            CHECK(pair_weight(t, u.location, first, last) == u.weight);

            const double q = unit_goodness(t, u);
            CHECK(q >= 0.0);
            CHECK(q <= 1.0);
        }
        for (const auto& l : distinct_locations(s)) CHECK(distinct_locations(t).contains(l));
        if (!t.empty()) {
            const double r = summarization_rate(t, s);
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
        CHECK(summarize(t, p) == s);
    }
}

TEST_CASE("streaming equals batch on random trajectories, duplicates included") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = random_traj(rng, 1 + trial % 8, 200, 4, 0.5, 0);
        const SeqScanParams p{2 + static_cast<std::size_t>(trial % 3), static_cast<double>(trial % 7)};
        CHECK(run_streaming(t, p) == summarize(t, p).units);
    }
}

TEST_CASE("every qualifying run is represented") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = random_traj(rng, 1 + trial % 8, 200);
        const SeqScanParams p{2 + static_cast<std::size_t>(trial % 4), static_cast<double>(trial % 11)};
        const auto types = distinct_locations(summarize(t, p));
        for (const auto& l : qualifying_runs(t, p.min_occurrences, p.delta)) CHECK(types.contains(l));
    }
}
