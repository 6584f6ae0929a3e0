#include "locrel/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace locrel {

namespace {

constexpr std::size_t kMaxProblems = 20;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_exact(std::string_view s, T& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

std::optional<double> parse_iso8601(std::string_view s) {
    // YYYY-MM-DD[T| ]HH:MM:SS[.fff][Z|(+|-)HH:MM]
    if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' ||
        s[16] != ':') {
        return std::nullopt;
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!parse_exact(s.substr(0, 4), y) || !parse_exact(s.substr(5, 2), mo) || !parse_exact(s.substr(8, 2), d) ||
        !parse_exact(s.substr(11, 2), h) || !parse_exact(s.substr(14, 2), mi) ||
        !parse_exact(s.substr(17, 2), sec)) {
        return std::nullopt;
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;

    std::string_view rest = s.substr(19);
    double fraction = 0;
    if (!rest.empty() && rest.front() == '.') {
        std::size_t n = 1;
        while (n < rest.size() && rest[n] >= '0' && rest[n] <= '9') ++n;
        if (n == 1 || !parse_exact(rest.substr(0, n), fraction)) return std::nullopt;
        rest.remove_prefix(n);
    }
    long offset = 0;
    if (rest == "Z") {
        rest = {};
    } else if (!rest.empty()) {
        if (rest.size() != 6 || (rest[0] != '+' && rest[0] != '-') || rest[3] != ':') return std::nullopt;
        int oh = 0, om = 0;
        if (!parse_exact(rest.substr(1, 2), oh) || !parse_exact(rest.substr(4, 2), om)) return std::nullopt;
        offset = (oh * 3600L + om * 60L) * (rest[0] == '-' ? -1 : 1);
    }
    const auto days = sys_days{ymd}.time_since_epoch().count();
    const double secs = static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec - offset + fraction;
    return secs;
}

}  // namespace

std::optional<double> parse_timestamp(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    double v = 0;
    if (parse_exact(text, v)) {
        if (!std::isfinite(v) || v < 0) return std::nullopt;
        return v;
    }
    auto iso = parse_iso8601(text);
    if (iso && *iso < 0) return std::nullopt;
    return iso;
}

double parse_duration(std::string_view text) {
    text = trim(text);
    double scale = 1;
    if (!text.empty()) {
        switch (text.back()) {
            case 's': scale = 1; text.remove_suffix(1); break;
            case 'm': scale = 60; text.remove_suffix(1); break;
            case 'h': scale = 3600; text.remove_suffix(1); break;
            case 'd': scale = 86400; text.remove_suffix(1); break;
            default: break;
        }
    }
    double v = 0;
    if (text.empty() || !parse_exact(text, v) || !std::isfinite(v) || v < 0) {
        throw UsageError("invalid duration '" + std::string(text) + "' (expected e.g. 960s, 16m, 0.0111d)");
    }
    return v * scale;
}

std::string format_number(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<SymbolicTrajectory> ingest(std::istream& in, IngestReport& report, IngestOptions options) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("input is empty (missing header)");
    auto header = split_csv_line(line);
    for (auto& h : header) h = std::string(trim(h));
    if (header.size() < 3 || header.size() > 4 || header[0] != "user_id" || header[1] != "timestamp" ||
        header[2] != "location" || (header.size() == 4 && header[3] != "event")) {
        throw DataError("unexpected header '" + line + "' (expected user_id,timestamp,location[,event])");
    }

    std::map<std::string, std::vector<TrajPoint>> by_user;
    std::size_t line_no = 1;
    auto reject = [&](const std::string& why) {
        ++report.malformed;
        if (report.problems.size() < kMaxProblems) {
            report.problems.push_back("line " + std::to_string(line_no) + ": " + why);
        }
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++report.rows;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            reject("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
            continue;
        }
        const auto user = trim(fields[0]);
        const auto location = trim(fields[2]);
        const auto ts = parse_timestamp(fields[1]);
        if (user.empty()) {
            reject("empty user_id");
        } else if (location.empty()) {
            reject("empty location");
        } else if (!ts) {
            reject("unparseable timestamp '" + fields[1] + "'");
        } else {
            by_user[std::string(user)].push_back({*ts, LocationSymbol(std::string(location))});
        }
    }
    if (options.strict && report.malformed > 0) {
        std::string msg = std::to_string(report.malformed) + " malformed row(s)";
        if (!report.problems.empty()) msg += "; first: " + report.problems.front();
        throw DataError(msg);
    }

    std::vector<SymbolicTrajectory> out;
    out.reserve(by_user.size());
    for (auto& [user, points] : by_user) {
        std::stable_sort(points.begin(), points.end(),
                         [](const TrajPoint& a, const TrajPoint& b) { return a.timestamp < b.timestamp; });
        out.emplace_back(user, std::move(points));
    }
    return out;
}

std::vector<SymbolicTrajectory> ingest(const std::filesystem::path& path, IngestReport& report,
                                       IngestOptions options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    return ingest(in, report, options);
}

void write_trajectories_csv(std::ostream& out, std::span<const SymbolicTrajectory> dataset) {
    out << "user_id,timestamp,location\n";
    for (const auto& t : dataset) {
        const auto user = csv_escape(t.user_id());
        for (const auto& p : t.points()) {
            out << user << ',' << format_number(p.timestamp) << ',' << csv_escape(p.location.label()) << '\n';
        }
    }
}

void write_summary_csv(std::ostream& out, std::span<const SummaryTrajectory> summaries,
                       std::span<const std::vector<double>> goodness) {
    out << "user_id,unit_idx,t_start,t_end,location,occurrences,weight_seconds,goodness\n";
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const auto user = csv_escape(summaries[i].user_id);
        const auto& units = summaries[i].units;
        for (std::size_t j = 0; j < units.size(); ++j) {
            const auto& u = units[j];
            out << user << ',' << j << ',' << format_number(u.start) << ',' << format_number(u.end) << ','
                << csv_escape(u.location.label()) << ',' << u.occurrences << ',' << format_number(u.weight) << ','
                << format_number(goodness[i][j]) << '\n';
        }
    }
}

}  // namespace locrel
