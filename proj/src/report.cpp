#include "jetcalc/report.hpp"

#include <sstream>

namespace jetcalc::cli {

void RunReport::add(std::string name, bool passed, std::string summary, nlohmann::json details) {
    checks.push_back({std::move(name), passed, std::move(summary), std::move(details)});
}

bool RunReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}};
        e["details"] = c.details.is_null() ? nlohmann::json(c.summary) : c.details;
        arr.push_back(std::move(e));
    }
    return {{"schema_version", kReportSchemaVersion},
            {"command", command},
            {"seed", seed},
            {"checks", arr},
            {"verdict", passed() ? "pass" : "fail"},
            {"wall_time_s", wall_time_s},
            {"data", data}};
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    int ok = 0;
    for (const auto& c : checks) {
        ok += c.passed ? 1 : 0;
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.summary.empty()) os << ": " << c.summary;
        os << '\n';
    }
    os << "verdict: " << (passed() ? "pass" : "fail") << " (" << ok << '/' << checks.size() << " checks passed)\n";
    return os.str();
}

} // namespace jetcalc::cli
