#pragma once

// Suite reports: named check records with measured value vs threshold,
// JSON serialization, and CSV tables at fixed precision.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ctlab {

// 12 significant digits, reproducible formatting.
inline std::string format_sig(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

struct CheckRecord {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string note;  // optional context (criterion tag, comparison mode)
};

struct CsvTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckRecord> checks;
    std::vector<CsvTable> tables;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> config_echo;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    // measured <= threshold
    CheckRecord& check_le(const std::string& name, double measured, double threshold,
                          const std::string& note = "") {
        checks.push_back({name, measured, threshold, std::isfinite(measured) && measured <= threshold, note});
        return checks.back();
    }
    // measured >= threshold
    CheckRecord& check_ge(const std::string& name, double measured, double threshold,
                          const std::string& note = "") {
        checks.push_back({name, measured, threshold, std::isfinite(measured) && measured >= threshold, note});
        return checks.back();
    }
    // |measured - target| <= width
    CheckRecord& check_near(const std::string& name, double measured, double target, double width,
                            const std::string& note = "") {
        checks.push_back({name, measured, target,
                          std::isfinite(measured) && std::abs(measured - target) <= width, note});
        checks.back().note = note.empty() ? ("target " + format_sig(target) + " +- " + format_sig(width))
                                          : note;
        return checks.back();
    }
    void record_failure(const std::string& name, const std::string& why) {
        checks.push_back({name, std::numeric_limits<double>::quiet_NaN(), 0.0, false, why});
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["pass"] = passed();
        j["wall_seconds"] = format_sig(wall_seconds);
        nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
        for (const auto& [k, v] : config_echo) cfg[k] = v;
        j["config"] = cfg;
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json rec;
            rec["name"] = c.name;
            rec["measured"] = format_sig(c.measured);
            rec["threshold"] = format_sig(c.threshold);
            rec["pass"] = c.pass;
            if (!c.note.empty()) rec["note"] = c.note;
            j["checks"].push_back(rec);
        }
        return j;
    }

    void write(const std::string& out_dir) const {
        {
            std::ofstream os(out_dir + "/" + suite + ".json");
            os << to_json().dump(2) << "\n";
        }
        for (const auto& t : tables) {
            std::ofstream os(out_dir + "/" + suite + "_" + t.name + ".csv");
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                os << (i ? "," : "") << t.columns[i];
            os << "\n";
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    os << (i ? "," : "") << format_sig(row[i]);
                os << "\n";
            }
        }
    }
};

}  // namespace ctlab
