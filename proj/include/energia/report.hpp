#pragma once

// Machine-readable classification records: JSON lines for single runs,
// CSV for scans. Every record names the module, the operation, the
// parameters, the verdict, the value when finite, the provenance of the
// result (symbolic, numeric, or cited) and a short anchor describing the
// threshold it reproduces.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "energia/verdict.hpp"

namespace energia {

inline std::string verdict_name(const ConvergenceVerdict& v) {
    return v.converges ? "Converges" : "Diverges";
}

inline std::string rate_name(const ConvergenceVerdict& v) {
    if (v.converges || !v.rate) return "";
    return *v.rate == DivergenceRate::Power ? "PowerDivergence" : "LogDivergence";
}

struct Record {
    std::string module;
    std::string operation;
    nlohmann::json params;
    ConvergenceVerdict verdict;
    std::string provenance;  // "symbolic" | "numeric" | "cited"
    std::string anchor;
};

inline nlohmann::json to_json(const Record& r) {
    nlohmann::json j;
    j["module"] = r.module;
    j["operation"] = r.operation;
    j["parameters"] = r.params;
    j["verdict"] = verdict_name(r.verdict);
    j["value"] = r.verdict.value ? nlohmann::json(*r.verdict.value) : nlohmann::json(nullptr);
    if (!r.verdict.converges) {
        j["rate"] = rate_name(r.verdict);
        if (r.verdict.divergence_exponent) j["rate_exponent"] = *r.verdict.divergence_exponent;
    }
    j["provenance"] = r.provenance;
    j["anchor"] = r.anchor;
    return j;
}

/// One row of a parameter scan; ordered by parameter value.
struct ScanRow {
    double parameter = 0.0;
    ConvergenceVerdict verdict;
    std::vector<std::pair<std::string, std::string>> extra;
};

inline std::string csv_header(const std::string& param_name,
                              const std::vector<std::string>& extra_names = {}) {
    std::ostringstream out;
    out << param_name << ",verdict,value";
    for (const auto& name : extra_names) out << ',' << name;
    return out.str();
}

inline std::string csv_row(const ScanRow& row) {
    std::ostringstream out;
    out.precision(17);
    out << row.parameter << ',' << verdict_name(row.verdict) << ',';
    if (row.verdict.value) out << *row.verdict.value;
    for (const auto& [_, value] : row.extra) out << ',' << value;
    return out.str();
}

}  // namespace energia
