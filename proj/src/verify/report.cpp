#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "pcc/verify.hpp"

namespace pcc {

using nlohmann::ordered_json;

CheckReport make_report(std::string id, double max_error, double tolerance, long samples,
                        std::map<std::string, std::string> metadata) {
    CheckReport r;
    r.check_id = std::move(id);
    r.max_error = max_error;
    r.tolerance = tolerance;
    r.samples = samples;
    r.passed = max_error <= tolerance;  // false for NaN
    r.metadata = std::move(metadata);
    return r;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(Complex z) { return "[" + fmt(z.real()) + "," + fmt(z.imag()) + "]"; }

std::string reports_to_json(const std::vector<CheckReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json o;
        o["check_id"] = r.check_id;
        // JSON has no NaN/inf; a non-finite error is written as null
        if (std::isfinite(r.max_error))
            o["max_error"] = r.max_error;
        else
            o["max_error"] = nullptr;
        o["tolerance"] = r.tolerance;
        o["samples"] = r.samples;
        o["passed"] = r.passed;
        ordered_json meta = ordered_json::object();
        for (const auto& [k, v] : r.metadata)
            meta[k] = v;
        o["metadata"] = meta;
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

std::vector<CheckReport> reports_from_json(const std::string& text) {
    auto arr = ordered_json::parse(text);
    std::vector<CheckReport> out;
    for (const auto& o : arr) {
        CheckReport r;
        r.check_id = o.at("check_id").get<std::string>();
        r.max_error = o.at("max_error").is_null() ? NAN : o.at("max_error").get<double>();
        r.tolerance = o.at("tolerance").get<double>();
        r.samples = o.at("samples").get<long>();
        r.passed = o.at("passed").get<bool>();
        for (const auto& [k, v] : o.at("metadata").items())
            r.metadata[k] = v.get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_line(const CheckReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s %s max_error=%.3e tol=%.1e n=%ld", r.passed ? "PASS" : "FAIL",
                  r.check_id.c_str(), r.max_error, r.tolerance, r.samples);
    return buf;
}

} // namespace pcc
