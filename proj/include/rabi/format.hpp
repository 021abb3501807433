// format.hpp — deterministic float formatting for CSV/JSON emission

#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace rabi {

// Shortest representation that round-trips through a double. Negative zero
// is folded into "0" so phases like sin(-0.0) do not leak sign noise.
inline std::string format_double(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec == std::errc{}) return std::string(buf, res.ptr);
    std::snprintf(buf, sizeof(buf), "%.17g", v);  // fallback
    return std::string(buf);
}

// Fixed 17 significant digits (trajectory CSV convention).
inline std::string format_double17(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf, buf + len);
}

}  // namespace rabi
