#pragma once

// Helpers shared between the command line tool and its tests: range parsing
// and the small formatting routines whose exact output is pinned.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "boolcube/errors.hpp"

namespace boolcube::cli {

inline constexpr double kGridSlack = 1e-12;
inline constexpr std::size_t kGridLimit = 10'000'000;

// One number, or the token "rmax" when the calling context defines it.
inline double parse_grid_number(const std::string& token, double rmax) {
    if (token == "rmax") {
        if (!std::isfinite(rmax))
            throw DomainError("'rmax' is not defined for this range");
        return rmax;
    }
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + token + "'");
    }
    if (used != token.size())
        throw DomainError("not a number: '" + token + "'");
    if (!std::isfinite(value)) throw DomainError("range values must be finite");
    return value;
}

// "v" for a single point, or "start:stop:step" with step > 0, inclusive of
// stop whenever a step lands within kGridSlack of it.
inline std::vector<double> parse_grid(
    const std::string& text,
    double rmax = std::numeric_limits<double>::quiet_NaN()) {
    std::vector<std::string> tokens(1);
    for (const char ch : text) {
        if (ch == ':')
            tokens.emplace_back();
        else
            tokens.back() += ch;
    }
    if (tokens.size() == 1) return {parse_grid_number(tokens[0], rmax)};
    if (tokens.size() != 3)
        throw DomainError("expected a value or start:stop:step, got '" + text +
                          "'");
    const double start = parse_grid_number(tokens[0], rmax);
    const double stop = parse_grid_number(tokens[1], rmax);
    const double step = parse_grid_number(tokens[2], rmax);
    if (!(step > 0.0)) throw DomainError("range step must be positive");
    if (stop < start - kGridSlack)
        throw DomainError("range stop lies below its start");

    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double value = start + static_cast<double>(i) * step;
        if (value > stop + kGridSlack) break;
        if (grid.size() >= kGridLimit)
            throw DomainError("range has too many points");
        grid.push_back(value);
    }
    return grid;
}

// Shortest unambiguous decimal for report text and CSV cells.
inline std::string number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

// num/den reduced; a plain integer when the denominator divides out, else
// "p/q (decimal)". den must be positive.
inline std::string fraction(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den) + " (" +
           number(static_cast<double>(num) / static_cast<double>(den)) + ")";
}

// Coordinate set for a subset mask, one-based: "S=∅", "S={1,2}".
inline std::string subset(std::uint64_t mask) {
    if (mask == 0) return "S=∅";
    std::string out = "S={";
    bool first = true;
    for (int i = 0; i < 64; ++i) {
        if (((mask >> i) & 1u) == 0) continue;
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

}  // namespace boolcube::cli
