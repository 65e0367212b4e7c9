#pragma once

// Reference computations written independently of the library code.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace divsub::oracle {

/// Nearest binary32 value to a non-negative integer, ties to even, by bit
/// manipulation only.
inline std::uint64_t round_to_binary32(std::uint64_t n) {
    if (n == 0) return 0;
    int top = 63;
    while (((n >> top) & 1u) == 0) --top;
    if (top < 24) return n;
    int drop = top - 23;
    std::uint64_t kept = n >> drop;
    std::uint64_t rest = n & ((std::uint64_t{1} << drop) - 1);
    std::uint64_t half = std::uint64_t{1} << (drop - 1);
    if (rest > half || (rest == half && (kept & 1u))) ++kept;
    return kept << drop;
}

/// Fewest significant digits d such that printing v with d digits reads back
/// to v, found by trying every precision.
inline int min_roundtrip_digits(double v) {
    char buf[64];
    for (int d = 1; d <= 17; ++d) {
        std::snprintf(buf, sizeof buf, "%.*e", d - 1, v);
        if (std::strtod(buf, nullptr) == v) return d;
    }
    return 17;
}

inline int min_roundtrip_digits(float v) {
    char buf[64];
    for (int d = 1; d <= 9; ++d) {
        std::snprintf(buf, sizeof buf, "%.*e", d - 1, static_cast<double>(v));
        if (std::strtof(buf, nullptr) == v) return d;
    }
    return 9;
}

/// The minimal-digit scientific rendering, e.g. "1.5129018e+12".
inline std::string scientific_min(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", min_roundtrip_digits(v) - 1, v);
    return buf;
}

inline std::string scientific_min(float v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", min_roundtrip_digits(v) - 1, static_cast<double>(v));
    return buf;
}

/// Significant digits in a decimal literal such as "-1.25e-3" or "1500".
inline int significant_digits(const std::string& s) {
    std::string digits;
    for (char c : s) {
        if (c == 'e' || c == 'E') break;
        if (c >= '0' && c <= '9') digits += c;
    }
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) return 1;
    digits.erase(0, first);
    // Trailing zeros of an integer part without a fraction carry no precision.
    std::size_t last = digits.find_last_not_of('0');
    return static_cast<int>(last + 1);
}

}  // namespace divsub::oracle
