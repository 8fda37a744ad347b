#pragma once

// Parsing of parameter grids given on the command line.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tangle {

/// Raised for invalid sweep configuration; `field()` names the offending option.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

/// Parses a plain decimal number, or "pi", "pi/N", "K*pi/N".
inline double parse_number(std::string_view token, const std::string &field) {
    token = detail::trim(token);
    auto plain = [&](std::string_view t) {
        double v = 0.0;
        const auto *end = t.data() + t.size();
        const auto res = std::from_chars(t.data(), end, v);
        if (t.empty() || res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
            throw ConfigError(field, "cannot parse number '" + std::string(token) + "'");
        }
        return v;
    };
    const auto pi_pos = token.find("pi");
    if (pi_pos == std::string_view::npos) {
        return plain(token);
    }
    double scale = 1.0;
    if (pi_pos > 0) {
        auto head = token.substr(0, pi_pos);
        if (head.back() != '*') {
            throw ConfigError(field, "cannot parse number '" + std::string(token) + "'");
        }
        scale = plain(head.substr(0, head.size() - 1));
    }
    auto tail = token.substr(pi_pos + 2);
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') {
            throw ConfigError(field, "cannot parse number '" + std::string(token) + "'");
        }
        divisor = plain(tail.substr(1));
        if (divisor == 0.0) {
            throw ConfigError(field, "division by zero in '" + std::string(token) + "'");
        }
    }
    return scale * std::numbers::pi / divisor;
}

inline std::vector<double> parse_list(std::string_view text, const std::string &field) {
    std::vector<double> out;
    for (auto tok : detail::split(text, ',')) {
        out.push_back(parse_number(tok, field));
    }
    return out;
}

/// start:stop:step, inclusive of stop when it lies on the lattice.
inline std::vector<double> parse_range(std::string_view text, const std::string &field) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) {
        throw ConfigError(field, "expected start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = parse_number(parts[0], field);
    const double stop = parse_number(parts[1], field);
    const double step = parse_number(parts[2], field);
    if (!(step > 0.0) || stop < start) {
        throw ConfigError(field, "range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1'000'000) {
        throw ConfigError(field, "range has too many points");
    }
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(std::min(start + static_cast<double>(i) * step, stop));
    }
    return out;
}

/// {0, pi/12, pi/6, pi/4}.
inline std::vector<double> default_r_grid() {
    return {0.0, std::numbers::pi / 12.0, std::numbers::pi / 6.0, std::numbers::pi / 4.0};
}

/// 0, 0.01, ..., 1.
inline std::vector<double> default_p_grid() { return parse_range("0:1:0.01", "p-grid"); }

inline std::vector<double> parse_r_grid(std::string_view text) {
    if (detail::trim(text) == "default") {
        return default_r_grid();
    }
    return parse_list(text, "r-grid");
}

inline std::vector<double> parse_p_grid(std::string_view text) {
    if (detail::trim(text) == "default") {
        return default_p_grid();
    }
    if (text.find(':') != std::string_view::npos) {
        return parse_range(text, "p-grid");
    }
    return parse_list(text, "p-grid");
}

}  // namespace tangle
