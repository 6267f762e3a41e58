#pragma once

// Deterministic number formatting for CSV and JSON output.

#include <charconv>
#include <complex>
#include <cstdint>
#include <string>
#include <system_error>

namespace goldbach_lab {

/// Shortest round-trip representation.
inline std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc()) return "nan";
    return std::string(buf, res.ptr);
}

inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(std::int64_t v) { return std::to_string(v); }

}  // namespace goldbach_lab
