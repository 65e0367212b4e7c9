#pragma once

// Argument coercions shared by the bridge surfaces.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "divsub/bridges.hpp"
#include "divsub/errors.hpp"

namespace divsub::bridges {

inline const JsonValue& value_arg(const std::vector<Datum>& args, std::size_t i) {
    if (const auto* v = std::get_if<JsonValue>(&args[i])) return *v;
    throw AccessError("argument " + std::to_string(i) + " is not a JSON value");
}

inline JsonValue& value_arg(std::vector<Datum>& args, std::size_t i) {
    if (auto* v = std::get_if<JsonValue>(&args[i])) return *v;
    throw AccessError("argument " + std::to_string(i) + " is not a JSON value");
}

inline std::string text_arg(const std::vector<Datum>& args, std::size_t i) {
    if (const auto* t = std::get_if<JsonText>(&args[i])) return t->text;
    if (const auto* v = std::get_if<JsonValue>(&args[i]); v && v->is_string()) return v->as_string();
    throw AccessError("argument " + std::to_string(i) + " is not text");
}

inline std::string key_arg(const std::vector<Datum>& args, std::size_t i) {
    const JsonValue& v = value_arg(args, i);
    if (!v.is_string()) throw AccessError("argument " + std::to_string(i) + " is not a member name");
    return v.as_string();
}

inline std::size_t index_arg(const std::vector<Datum>& args, std::size_t i) {
    const JsonValue& v = value_arg(args, i);
    if (!v.is_number() || v.as_number().kind() != NumberRepr::Kind::ExactInt || v.as_number().as_int() < 0) {
        throw AccessError("argument " + std::to_string(i) + " is not an index");
    }
    return static_cast<std::size_t>(v.as_number().as_int());
}

/// Truncating conversion of any number to a 64-bit integer, saturating at the bounds.
inline std::int64_t truncate_to_long(const NumberRepr& n) {
    if (n.kind() == NumberRepr::Kind::ExactInt) return n.as_int();
    long double d = std::trunc(n.as_long_double());
    if (d >= 9223372036854775807.0L) return std::numeric_limits<std::int64_t>::max();
    if (d <= -9223372036854775808.0L) return std::numeric_limits<std::int64_t>::min();
    return static_cast<std::int64_t>(d);
}

inline JsonValue string_list(const std::vector<std::string>& names) {
    JsonArray a;
    for (const auto& n : names) a.push_back(JsonValue(n));
    return JsonValue(std::move(a));
}

}  // namespace divsub::bridges
