#include "divsub/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"

namespace divsub {

EquivalenceMode EquivalenceMode::numeric_tolerant(double epsilon) {
    if (!(epsilon > 0.0)) throw UsageError("NUMERIC_TOLERANT requires epsilon > 0");
    return EquivalenceMode(Kind::NumericTolerant, epsilon);
}

EquivalenceMode EquivalenceMode::full_relaxed(double epsilon) {
    if (!(epsilon > 0.0)) throw UsageError("FULL_RELAXED requires epsilon > 0");
    return EquivalenceMode(Kind::FullRelaxed, epsilon);
}

bool EquivalenceMode::implies(const EquivalenceMode& other) const noexcept {
    if (kind_ == Kind::Strict) return true;
    if (other.kind_ == Kind::Strict) return false;
    if (kind_ == Kind::WhitespaceTolerant) return true;
    if (ignores_key_order() && !other.ignores_key_order()) return false;
    if (tolerates_numbers()) {
        if (!other.tolerates_numbers()) return false;
        return other.epsilon_ >= epsilon_;
    }
    return other.kind_ != Kind::WhitespaceTolerant;
}

std::string to_string(const EquivalenceMode& m) {
    switch (m.kind()) {
        case EquivalenceMode::Kind::Strict: return "STRICT";
        case EquivalenceMode::Kind::WhitespaceTolerant: return "WHITESPACE_TOLERANT";
        case EquivalenceMode::Kind::KeyOrderTolerant: return "KEY_ORDER_TOLERANT";
        case EquivalenceMode::Kind::NumericTolerant: return "NUMERIC_TOLERANT";
        case EquivalenceMode::Kind::FullRelaxed: return "FULL_RELAXED";
    }
    return "?";
}

std::optional<EquivalenceMode> equivalence_mode_from_string(std::string_view name, double epsilon) {
    if (name == "STRICT") return EquivalenceMode::strict();
    if (name == "WHITESPACE_TOLERANT") return EquivalenceMode::whitespace_tolerant();
    if (name == "KEY_ORDER_TOLERANT") return EquivalenceMode::key_order_tolerant();
    if (name == "NUMERIC_TOLERANT") return EquivalenceMode::numeric_tolerant(epsilon);
    if (name == "FULL_RELAXED") return EquivalenceMode::full_relaxed(epsilon);
    return std::nullopt;
}

bool numbers_close(const NumberRepr& a, const NumberRepr& b, double epsilon) {
    long double x = a.as_long_double();
    long double y = b.as_long_double();
    if (x == y) return true;
    long double scale = std::max(std::fabs(x), std::fabs(y));
    return std::fabs(x - y) <= static_cast<long double>(epsilon) * scale;
}

namespace {

bool values_equivalent(const JsonValue& a, const JsonValue& b, const EquivalenceMode& mode) {
    if (a.type() != b.type()) return false;
    switch (a.type()) {
        case JsonType::Null: return true;
        case JsonType::Boolean: return a.as_bool() == b.as_bool();
        case JsonType::String: return a.as_string() == b.as_string();
        case JsonType::Number:
            if (mode.tolerates_numbers()) return numbers_close(a.as_number(), b.as_number(), mode.epsilon());
            return a.as_number() == b.as_number();
        case JsonType::Array: {
            const auto& xs = a.as_array().items();
            const auto& ys = b.as_array().items();
            if (xs.size() != ys.size()) return false;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (!values_equivalent(xs[i], ys[i], mode)) return false;
            }
            return true;
        }
        case JsonType::Object: {
            const auto& xs = a.as_object().members();
            const auto& ys = b.as_object().members();
            if (xs.size() != ys.size()) return false;
            if (mode.ignores_key_order()) {
                const auto& bo = b.as_object();
                for (const auto& m : xs) {
                    const JsonValue* other = bo.find(m.name);
                    if (other == nullptr || !values_equivalent(m.value, *other, mode)) return false;
                }
                return true;
            }
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (xs[i].name != ys[i].name) return false;
                if (!values_equivalent(xs[i].value, ys[i].value, mode)) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace

bool json_equivalent(const JsonValue& a, const JsonValue& b, const EquivalenceMode& mode) {
    return values_equivalent(a, b, mode);
}

std::string strip_insignificant_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_string = false;
    bool escaped = false;
    for (char c : text) {
        if (in_string) {
            out += c;
            if (escaped) escaped = false;
            else if (c == '\\') escaped = true;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '"') in_string = true;
        out += c;
    }
    return out;
}

bool json_equivalent(std::string_view a, std::string_view b, const EquivalenceMode& mode) {
    JsonValue va = parse_reference(a);
    JsonValue vb = parse_reference(b);
    switch (mode.kind()) {
        case EquivalenceMode::Kind::Strict: return a == b;
        case EquivalenceMode::Kind::WhitespaceTolerant:
            return strip_insignificant_whitespace(a) == strip_insignificant_whitespace(b);
        default: return values_equivalent(va, vb, mode);
    }
}

bool json_equivalent(const JsonText& a, const JsonText& b, const EquivalenceMode& mode) {
    return json_equivalent(std::string_view(a.text), std::string_view(b.text), mode);
}

bool json_equivalent(const JsonText& a, const JsonValue& b, const EquivalenceMode& mode) {
    return values_equivalent(parse_reference(a.text), b, mode);
}

bool json_equivalent(const JsonValue& a, const JsonText& b, const EquivalenceMode& mode) {
    return values_equivalent(a, parse_reference(b.text), mode);
}

}  // namespace divsub
