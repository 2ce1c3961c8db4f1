#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "error.hpp"

namespace vqremap {

// Shortest round-trip decimal form; identical bits in, identical bytes out,
// which is what the byte-level determinism of run outputs rests on.
inline std::string fmt_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view text, const std::string& where) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw Error(ErrorCode::Ingest, "textio",
                    "cannot parse '" + std::string(text) + "' as a number in " + where);
    }
    return value;
}

inline long parse_long(std::string_view text, const std::string& where) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::Ingest, "textio",
                    "cannot parse '" + std::string(text) + "' as an integer in " + where);
    }
    return value;
}

} // namespace vqremap
