// Structured command output: a named set of computed quantities, each with
// the identity it is checked against, serialized either as an aligned text
// table or as JSON that parses back to an equal value.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace hedgelab {

enum class CheckKind { none, target, upper_bound, lower_bound };

struct ResultRow {
    std::string name;
    double value = 0.0;
    std::string reference;  // what the expected number is, in math terms
    CheckKind kind = CheckKind::none;
    double target = 0.0;     // target value, or the bound for bound kinds
    double tolerance = 0.0;  // half-width for CheckKind::target
    bool pass = true;

    static ResultRow plain(std::string name, double value,
                           std::string reference);
    static ResultRow with_target(std::string name, double value,
                                 std::string reference, double target,
                                 double tolerance);
    static ResultRow with_upper_bound(std::string name, double value,
                                      std::string reference, double bound);
    static ResultRow with_lower_bound(std::string name, double value,
                                      std::string reference, double bound);

    bool operator==(const ResultRow& o) const;
};

struct Report {
    std::string command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::vector<ResultRow> results;
    // Free-form renderings (strategy tables, annotated trees, per-check
    // details) keyed by name.
    std::map<std::string, std::string> artifacts;
    std::string status = "ok";
    std::int64_t wall_time_ms = 0;

    // status = "ok" iff every row passes.
    void finalize();
    bool all_pass() const;
    bool operator==(const Report& o) const;
};

nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::ordered_json& j);

// Aligned human-readable rendering, artifacts appended verbatim.
std::string render_table(const Report& r);

}  // namespace hedgelab
