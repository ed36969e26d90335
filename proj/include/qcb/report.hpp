// report.hpp — Bound evaluation records and their JSON/CSV serialization.

#pragma once

#include "qcb/common.hpp"

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcb {

// One evaluated bound: name, named inputs, right-hand-side value, comparison
// partners, validity verdict and the measured left-hand side when a state pair
// was involved.
struct BoundReport {
    std::string bound;
    std::vector<std::pair<std::string, double>> inputs;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> partners;
    std::string verdict = "not-applicable"; // holds | violated | not-applicable
    std::optional<double> lhs;

    nlohmann::json to_json() const {
        nlohmann::json in = nlohmann::json::object();
        for (const auto& [k, v] : inputs) in[k] = v;
        nlohmann::json pr = nlohmann::json::object();
        for (const auto& [k, v] : partners) pr[k] = v;
        nlohmann::json j{{"bound", bound}, {"inputs", in},     {"value", value},
                         {"partners", pr}, {"verdict", verdict}};
        if (lhs) {
            j["lhs"] = *lhs;
        } else {
            j["lhs"] = nullptr;
        }
        return j;
    }
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string join_pairs(const std::vector<std::pair<std::string, double>>& kv) {
    std::string out;
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) out += ';';
        out += kv[i].first;
        out += '=';
        out += format_double(kv[i].second);
    }
    return out;
}

} // namespace detail

inline std::string reports_csv_header() { return "bound,verdict,lhs,value,inputs,partners"; }

inline std::string report_csv_row(const BoundReport& r) {
    std::string out = r.bound;
    out += ',';
    out += r.verdict;
    out += ',';
    out += r.lhs ? detail::format_double(*r.lhs) : std::string();
    out += ',';
    out += detail::format_double(r.value);
    out += ',';
    out += detail::join_pairs(r.inputs);
    out += ',';
    out += detail::join_pairs(r.partners);
    return out;
}

inline std::string serialize_reports(const std::vector<BoundReport>& reports,
                                     const std::string& format) {
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const BoundReport& r : reports) arr.push_back(r.to_json());
        return arr.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = reports_csv_header() + "\n";
        for (const BoundReport& r : reports) out += report_csv_row(r) + "\n";
        return out;
    }
    throw ConfigError("serialize_reports: unknown format '" + format + "'");
}

} // namespace qcb
