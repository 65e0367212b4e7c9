#include "divsub/reservoir.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>

#include "divsub/canonical.hpp"
#include "divsub/equivalence.hpp"
#include "divsub/errors.hpp"
#include "engines/engines.hpp"

namespace divsub {

std::string_view to_string(NumberKind k) {
    switch (k) {
        case NumberKind::Int32Range: return "Int32Range";
        case NumberKind::Int64: return "Int64";
        case NumberKind::Float32: return "Float32";
        case NumberKind::Float64: return "Float64";
    }
    return "?";
}

void EngineProfile::validate() const {
    if (number_detection_order.empty()) {
        throw UsageError(engine_id + ": number detection order is empty");
    }
    std::set<NumberKind> seen(number_detection_order.begin(), number_detection_order.end());
    if (seen.size() != number_detection_order.size()) {
        throw UsageError(engine_id + ": number detection order repeats a kind");
    }
}

bool EngineProfile::precision_limited() const {
    for (auto k : number_detection_order) {
        if (k == NumberKind::Float64) return false;
        if (k == NumberKind::Float32) return true;
    }
    return false;
}

// -------------------------------------------------------------------- Engine

Engine::Engine(EngineProfile profile) : profile_(std::move(profile)) { profile_.validate(); }

EngineOutcome Engine::parse(std::string_view text) const {
    try {
        return Accepted{do_parse(text)};
    } catch (const ParseError& e) {
        Rejected r{std::nullopt, e.message()};
        if (profile_.reports_error_position) r.position = e.position();
        return r;
    } catch (const OutOfRange& e) {
        return Rejected{std::nullopt, e.what()};
    }
}

std::string Engine::serialize(const JsonValue& v) const { return do_serialize(v); }

void Engine::insert_member(JsonObject& obj, std::string key, JsonValue value) const {
    obj.set(std::move(key), std::move(value));
}

// ----------------------------------------------------------------- Reservoir

Reservoir::Reservoir(std::vector<std::unique_ptr<Engine>> engines) : engines_(std::move(engines)) {
    std::set<std::string> ids;
    for (const auto& e : engines_) {
        if (!ids.insert(e->id()).second) throw UsageError("duplicate engine id " + e->id());
    }
}

const Reservoir& Reservoir::bundled() {
    static const Reservoir instance = [] {
        std::vector<std::unique_ptr<Engine>> v;
        v.push_back(engines::make_strict_rfc());
        v.push_back(engines::make_lenient());
        v.push_back(engines::make_ecma5ish());
        v.push_back(engines::make_no_unicode());
        v.push_back(engines::make_float_first());
        v.push_back(engines::make_reference());
        return Reservoir(std::move(v));
    }();
    return instance;
}

const Engine& Reservoir::engine(std::string_view id) const {
    for (const auto& e : engines_) {
        if (e->id() == id) return *e;
    }
    throw UnknownEngine(std::string(id));
}

bool Reservoir::contains(std::string_view id) const {
    return std::any_of(engines_.begin(), engines_.end(), [&](const auto& e) { return e->id() == id; });
}

std::vector<std::string> Reservoir::ids() const {
    std::vector<std::string> out;
    for (const auto& e : engines_) out.push_back(e->id());
    return out;
}

EngineOutcome engine_parse(std::string_view engine_id, std::string_view text) {
    return Reservoir::bundled().engine(engine_id).parse(text);
}

std::string engine_serialize(std::string_view engine_id, const JsonValue& v) {
    return Reservoir::bundled().engine(engine_id).serialize(v);
}

// ------------------------------------------------------------ detect_number

namespace {

struct LiteralShape {
    bool integral = true;
};

// Validates the RFC 8259 number grammar.
LiteralShape check_number_grammar(std::string_view s) {
    auto bad = [&] { return UsageError("not a JSON number literal: " + std::string(s)); };
    std::size_t i = 0;
    auto digit = [&](std::size_t k) { return k < s.size() && s[k] >= '0' && s[k] <= '9'; };
    LiteralShape shape;
    if (i < s.size() && s[i] == '-') ++i;
    if (!digit(i)) throw bad();
    if (s[i] == '0') {
        ++i;
    } else {
        while (digit(i)) ++i;
    }
    if (i < s.size() && s[i] == '.') {
        shape.integral = false;
        ++i;
        if (!digit(i)) throw bad();
        while (digit(i)) ++i;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        shape.integral = false;
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (!digit(i)) throw bad();
        while (digit(i)) ++i;
    }
    if (i != s.size()) throw bad();
    return shape;
}

std::optional<std::int64_t> as_int64(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// Underflow is a finite result (zero or subnormal); only overflow fails.
std::optional<double> as_double(std::string_view s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size()) return v;
    if (ec == std::errc::result_out_of_range) {
        std::string copy(s);
        double r = std::strtod(copy.c_str(), nullptr);
        if (std::isfinite(r)) return r;
    }
    return std::nullopt;
}

std::optional<float> as_float(std::string_view s) {
    float v = 0.0f;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size()) return v;
    if (ec == std::errc::result_out_of_range) {
        std::string copy(s);
        float r = std::strtof(copy.c_str(), nullptr);
        if (std::isfinite(r)) return r;
    }
    return std::nullopt;
}

}  // namespace

NumberRepr detect_number(const EngineProfile& profile, std::string_view literal) {
    LiteralShape shape = check_number_grammar(literal);
    for (NumberKind kind : profile.number_detection_order) {
        switch (kind) {
            case NumberKind::Int32Range:
                if (shape.integral) {
                    if (auto v = as_int64(literal);
                        v && *v >= std::numeric_limits<std::int32_t>::min() &&
                        *v <= std::numeric_limits<std::int32_t>::max()) {
                        return NumberRepr::exact(*v);
                    }
                }
                break;
            case NumberKind::Int64:
                if (shape.integral) {
                    if (auto v = as_int64(literal)) return NumberRepr::exact(*v);
                }
                break;
            case NumberKind::Float32:
                if (auto v = as_float(literal)) return NumberRepr::binary32(*v);
                break;
            case NumberKind::Float64:
                if (auto v = as_double(literal)) return NumberRepr::binary64(*v);
                break;
        }
    }
    throw OutOfRange(std::string(literal));
}

// -------------------------------------------------------------------- admits

std::vector<std::string> number_literals(std::string_view text) {
    std::vector<std::string> out;
    bool in_string = false;
    bool escaped = false;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (in_string) {
            if (escaped) escaped = false;
            else if (c == '\\') escaped = true;
            else if (c == '"') in_string = false;
            ++i;
            continue;
        }
        if (c == '"') {
            in_string = true;
            ++i;
            continue;
        }
        if (c == '-' || (c >= '0' && c <= '9')) {
            std::size_t start = i;
            while (i < text.size() && (text[i] == '-' || text[i] == '+' || text[i] == '.' ||
                                       text[i] == 'e' || text[i] == 'E' ||
                                       (text[i] >= '0' && text[i] <= '9'))) {
                ++i;
            }
            out.emplace_back(text.substr(start, i - start));
            continue;
        }
        ++i;
    }
    return out;
}

bool contains_unicode_escape(std::string_view text) {
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (!in_string) {
            if (c == '"') in_string = true;
            continue;
        }
        if (c == '\\') {
            if (i + 1 < text.size() && text[i + 1] == 'u') return true;
            ++i;
        } else if (c == '"') {
            in_string = false;
        }
    }
    return false;
}

namespace {

bool has_digit_leading_key(const JsonValue& v) {
    switch (v.type()) {
        case JsonType::Object:
            for (const auto& m : v.as_object().members()) {
                if (!m.name.empty() && m.name[0] >= '0' && m.name[0] <= '9') return true;
                if (has_digit_leading_key(m.value)) return true;
            }
            return false;
        case JsonType::Array:
            for (const auto& item : v.as_array().items()) {
                if (has_digit_leading_key(item)) return true;
            }
            return false;
        default: return false;
    }
}

}  // namespace

bool admits(const EngineProfile& profile, std::string_view text) {
    if (!profile.supports_unicode_escapes && contains_unicode_escape(text)) return false;
    if (profile.rejects_digit_leading_keys && has_digit_leading_key(parse_reference(text))) {
        return false;
    }
    if (profile.precision_limited()) {
        EngineProfile wide;
        for (const auto& lit : number_literals(text)) {
            NumberRepr exact = detect_number(wide, lit);
            try {
                if (!numbers_close(detect_number(profile, lit), exact, kDefaultEpsilon)) return false;
            } catch (const OutOfRange&) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace divsub
