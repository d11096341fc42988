#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace jetcalc::cli {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct CheckRecord {
    std::string name;
    bool passed = false;
    std::string summary;        // one line for the text report
    nlohmann::json details;     // structured detail for --json
};

/// Outcome of one CLI invocation; serialized per docs/report.schema.json.
struct RunReport {
    std::vector<std::string> command;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;
    nlohmann::json data = nlohmann::json::object();
    double wall_time_s = 0;

    void add(std::string name, bool passed, std::string summary = {}, nlohmann::json details = {});
    bool passed() const;
    nlohmann::json to_json() const;
    /// PASS/FAIL line per check and a verdict line; no timing, so it is stable.
    std::string to_text() const;
};

} // namespace jetcalc::cli
