#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "normshell/error.hpp"
#include "normshell/norm.hpp"

namespace normshell {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

} // namespace detail

inline double parse_number(std::string_view text) {
    const std::string s(detail::trim(text));
    if (s.empty()) throw Error(Errc::parse_error, "empty number");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        throw Error(Errc::parse_error, "not a finite number: '" + s + "'");
    }
    return v;
}

/// "1,2.5,-3" -> {1, 2.5, -3}
inline std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    if (detail::trim(text).empty()) throw Error(Errc::parse_error, "empty list");
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(parse_number(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Norm spec grammar: l<p> with p a decimal >= 1 or "inf", optionally
/// followed by ":w=<comma list>" of positive weights. Examples: l1, l2.5,
/// linf, l2:w=1,4.
inline Norm parse_norm_spec(std::string_view spec) {
    const std::string_view full = detail::trim(spec);
    std::string_view head = full;
    std::string_view weights;
    if (const auto colon = full.find(':'); colon != std::string_view::npos) {
        head = full.substr(0, colon);
        const std::string_view tail = full.substr(colon + 1);
        if (tail.substr(0, 2) != "w=") {
            throw Error(Errc::parse_error, "unknown norm suffix in '" + std::string(full) + "'");
        }
        weights = tail.substr(2);
    }
    if (head.size() < 2 || head.front() != 'l') {
        throw Error(Errc::parse_error, "unknown norm '" + std::string(full) + "' (expected l<p> or linf)");
    }
    const std::string_view exponent = head.substr(1);
    double p = 0.0;
    if (exponent == "inf") {
        p = Norm::infinity;
    } else {
        try {
            p = parse_number(exponent);
        } catch (const Error&) {
            throw Error(Errc::parse_error, "bad norm exponent in '" + std::string(full) + "'");
        }
        if (p < 1.0) throw Error(Errc::parse_error, "norm exponent must be at least 1 in '" + std::string(full) + "'");
    }
    if (weights.data() == nullptr) return Norm::lp(p);
    try {
        return Norm::weighted_lp(p, parse_number_list(weights));
    } catch (const Error& e) {
        throw Error(Errc::parse_error, "bad weights in '" + std::string(full) + "': " + e.what());
    }
}

/// Shortest round-trip decimal for a double.
inline std::string format_double(double v) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

/// Numeric CSV, one row per line. A first line that does not parse as
/// numbers is taken as a header and skipped; blank lines are ignored.
/// Row lengths are not checked here.
inline std::vector<std::vector<double>> read_numeric_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        try {
            rows.push_back(parse_number_list(line));
        } catch (const Error& e) {
            if (rows.empty() && line_no == 1) continue;
            throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

} // namespace normshell
