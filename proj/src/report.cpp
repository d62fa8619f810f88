#include "hedgelab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hedgelab {

namespace {

// Keeps JSON round-trips exact: nlohmann serializes non-finite doubles as
// null, so clamp them to a finite sentinel before they reach a row.
double finite_or_sentinel(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return 0.0;
    return v > 0 ? 1e300 : -1e300;
}

std::string kind_name(CheckKind k) {
    switch (k) {
        case CheckKind::none: return "none";
        case CheckKind::target: return "target";
        case CheckKind::upper_bound: return "upper-bound";
        case CheckKind::lower_bound: return "lower-bound";
    }
    return "none";
}

CheckKind kind_from_name(const std::string& s) {
    if (s == "none") return CheckKind::none;
    if (s == "target") return CheckKind::target;
    if (s == "upper-bound") return CheckKind::upper_bound;
    if (s == "lower-bound") return CheckKind::lower_bound;
    throw std::invalid_argument("unknown check kind: " + s);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

ResultRow ResultRow::plain(std::string name, double value,
                           std::string reference) {
    ResultRow r;
    r.name = std::move(name);
    r.value = finite_or_sentinel(value);
    r.reference = std::move(reference);
    return r;
}

ResultRow ResultRow::with_target(std::string name, double value,
                                 std::string reference, double target,
                                 double tolerance) {
    ResultRow r = plain(std::move(name), value, std::move(reference));
    r.kind = CheckKind::target;
    r.target = target;
    r.tolerance = tolerance;
    r.pass = std::abs(r.value - target) <= tolerance;
    return r;
}

ResultRow ResultRow::with_upper_bound(std::string name, double value,
                                      std::string reference, double bound) {
    ResultRow r = plain(std::move(name), value, std::move(reference));
    r.kind = CheckKind::upper_bound;
    r.target = bound;
    r.pass = r.value <= bound;
    return r;
}

ResultRow ResultRow::with_lower_bound(std::string name, double value,
                                      std::string reference, double bound) {
    ResultRow r = plain(std::move(name), value, std::move(reference));
    r.kind = CheckKind::lower_bound;
    r.target = bound;
    r.pass = r.value >= bound;
    return r;
}

bool ResultRow::operator==(const ResultRow& o) const {
    return name == o.name && value == o.value && reference == o.reference &&
           kind == o.kind && target == o.target && tolerance == o.tolerance &&
           pass == o.pass;
}

void Report::finalize() { status = all_pass() ? "ok" : "failed"; }

bool Report::all_pass() const {
    for (const ResultRow& r : results)
        if (!r.pass) return false;
    return true;
}

bool Report::operator==(const Report& o) const {
    return command == o.command && inputs == o.inputs && results == o.results &&
           artifacts == o.artifacts && status == o.status &&
           wall_time_ms == o.wall_time_ms;
}

nlohmann::ordered_json to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    auto& res = j["results"] = nlohmann::ordered_json::object();
    for (const ResultRow& row : r.results) {
        nlohmann::ordered_json e;
        e["value"] = row.value;
        e["reference"] = row.reference;
        e["check"] = kind_name(row.kind);
        if (row.kind == CheckKind::target) {
            e["target"] = row.target;
            e["tolerance"] = row.tolerance;
        } else if (row.kind != CheckKind::none) {
            e["bound"] = row.target;
        }
        e["pass"] = row.pass;
        res[row.name] = std::move(e);
    }
    if (!r.artifacts.empty()) {
        auto& art = j["artifacts"] = nlohmann::ordered_json::object();
        for (const auto& [key, text] : r.artifacts) art[key] = text;
    }
    j["status"] = r.status;
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
    try {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        for (const auto& [name, e] : j.at("results").items()) {
            ResultRow row;
            row.name = name;
            row.value = e.at("value").get<double>();
            row.reference = e.at("reference").get<std::string>();
            row.kind = kind_from_name(e.at("check").get<std::string>());
            if (row.kind == CheckKind::target) {
                row.target = e.at("target").get<double>();
                row.tolerance = e.at("tolerance").get<double>();
            } else if (row.kind != CheckKind::none) {
                row.target = e.at("bound").get<double>();
            }
            row.pass = e.at("pass").get<bool>();
            r.results.push_back(std::move(row));
        }
        if (j.contains("artifacts"))
            for (const auto& [key, text] : j.at("artifacts").items())
                r.artifacts[key] = text.get<std::string>();
        r.status = j.at("status").get<std::string>();
        r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed report JSON: ") +
                                    e.what());
    }
}

std::string render_table(const Report& r) {
    std::string out = "command: " + r.command + "\n";
    for (const auto& [key, val] : r.inputs.items())
        out += "  " + key + " = " +
               (val.is_string() ? val.get<std::string>() : val.dump()) + "\n";

    size_t name_w = 4, value_w = 5;
    for (const ResultRow& row : r.results) {
        name_w = std::max(name_w, row.name.size());
        value_w = std::max(value_w, fmt(row.value).size());
    }
    char line[256];
    for (const ResultRow& row : r.results) {
        std::string expect;
        switch (row.kind) {
            case CheckKind::none: break;
            case CheckKind::target:
                expect = fmt(row.target) + " +- " + fmt(row.tolerance);
                break;
            case CheckKind::upper_bound:
                expect = "<= " + fmt(row.target);
                break;
            case CheckKind::lower_bound:
                expect = ">= " + fmt(row.target);
                break;
        }
        std::snprintf(line, sizeof line, "%-*s  %*s  %-24s %s  [%s]\n",
                      int(name_w), row.name.c_str(), int(value_w),
                      fmt(row.value).c_str(), expect.c_str(),
                      row.kind == CheckKind::none
                          ? "    "
                          : (row.pass ? "ok  " : "FAIL"),
                      row.reference.c_str());
        out += line;
    }
    for (const auto& [key, text] : r.artifacts) {
        out += "-- " + key + " --\n";
        out += text;
        if (!text.empty() && text.back() != '\n') out += "\n";
    }
    out += "status: " + r.status + " (" + std::to_string(r.wall_time_ms) +
           " ms)\n";
    return out;
}

}  // namespace hedgelab
