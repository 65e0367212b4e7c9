// float-first: number typing tries a 32-bit integer, then binary32, then
// binary64, so large integers silently lose digits. The reader stops after the
// first complete value and ignores whatever follows it.

#include <string>

#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"
#include "engines/engines.hpp"

namespace divsub::engines {
namespace {

constexpr int kDepthLimit = 512;

struct Cursor {
    const char* begin;
    const char* p;
    const char* end;
};

[[noreturn]] void reject(const Cursor& c, const char* why) {
    throw ParseError(why, static_cast<std::size_t>(c.p - c.begin));
}

void blanks(Cursor& c) {
    while (c.p != c.end && (*c.p == ' ' || *c.p == '\t' || *c.p == '\n' || *c.p == '\r')) ++c.p;
}

bool take(Cursor& c, char want) {
    if (c.p != c.end && *c.p == want) {
        ++c.p;
        return true;
    }
    return false;
}

JsonValue read_value(const EngineProfile& prof, Cursor& c, int depth);

int hexval(char h) {
    if (h >= '0' && h <= '9') return h - '0';
    h = static_cast<char>(h | 0x20);
    if (h >= 'a' && h <= 'f') return h - 'a' + 10;
    return -1;
}

char32_t read_u16(Cursor& c) {
    if (c.end - c.p < 4) reject(c, "short \\u escape");
    char32_t v = 0;
    for (int i = 0; i < 4; ++i, ++c.p) {
        int h = hexval(*c.p);
        if (h < 0) reject(c, "bad \\u escape");
        v = v * 16 + static_cast<char32_t>(h);
    }
    return v;
}

std::string read_string(Cursor& c) {
    ++c.p;
    std::string s;
    for (;;) {
        if (c.p == c.end) reject(c, "string not closed");
        auto ch = static_cast<unsigned char>(*c.p);
        if (ch == '"') {
            ++c.p;
            return s;
        }
        if (ch < 0x20) reject(c, "control character in string");
        if (ch == '\\') {
            ++c.p;
            if (c.p == c.end) reject(c, "string not closed");
            char e = *c.p++;
            if (e == 'u') {
                char32_t u = read_u16(c);
                if (u >= 0xDC00 && u <= 0xDFFF) reject(c, "unpaired surrogate");
                if (u >= 0xD800 && u <= 0xDBFF) {
                    if (!(take(c, '\\') && take(c, 'u'))) reject(c, "unpaired surrogate");
                    char32_t lo = read_u16(c);
                    if (lo < 0xDC00 || lo > 0xDFFF) reject(c, "unpaired surrogate");
                    u = 0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00);
                }
                append_utf8(s, u);
                continue;
            }
            static constexpr std::string_view from = "\"\\/bfnrt";
            static constexpr std::string_view to = "\"\\/\b\f\n\r\t";
            auto k = from.find(e);
            if (k == std::string_view::npos) reject(c, "bad escape");
            s += to[k];
            continue;
        }
        if (ch < 0x80) {
            s += static_cast<char>(ch);
            ++c.p;
            continue;
        }
        int len = ch >= 0xF0 ? 4 : ch >= 0xE0 ? 3 : ch >= 0xC0 ? 2 : 0;
        if (len == 0 || ch > 0xF4 || ch == 0xC0 || ch == 0xC1 || c.end - c.p < len) reject(c, "bad UTF-8");
        char32_t cp = ch & (0xFF >> (len + 1));
        for (int i = 1; i < len; ++i) {
            auto b = static_cast<unsigned char>(c.p[i]);
            if ((b >> 6) != 2) reject(c, "bad UTF-8");
            cp = (cp << 6) | (b & 0x3F);
        }
        if ((len == 3 && cp < 0x800) || (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ||
            (cp >= 0xD800 && cp <= 0xDFFF)) {
            reject(c, "bad UTF-8");
        }
        s.append(c.p, static_cast<std::size_t>(len));
        c.p += len;
    }
}

JsonValue read_number(const EngineProfile& prof, Cursor& c) {
    const char* start = c.p;
    auto digits = [&] {
        const char* from = c.p;
        while (c.p != c.end && *c.p >= '0' && *c.p <= '9') ++c.p;
        return c.p != from;
    };
    take(c, '-');
    if (take(c, '0')) {
        // a single zero
    } else if (!digits()) {
        reject(c, "digit expected");
    }
    if (take(c, '.') && !digits()) reject(c, "digit expected after '.'");
    if (c.p != c.end && (*c.p == 'e' || *c.p == 'E')) {
        ++c.p;
        if (!take(c, '+')) take(c, '-');
        if (!digits()) reject(c, "digit expected in exponent");
    }
    try {
        return JsonValue(detect_number(prof, std::string_view(start, static_cast<std::size_t>(c.p - start))));
    } catch (const OutOfRange&) {
        c.p = start;
        reject(c, "number too large");
    }
}

JsonValue read_object(const EngineProfile& prof, Cursor& c, int depth) {
    ++c.p;
    JsonObject o;
    blanks(c);
    if (take(c, '}')) return JsonValue(std::move(o));
    do {
        blanks(c);
        if (c.p == c.end || *c.p != '"') reject(c, "expected string key");
        std::string k = read_string(c);
        blanks(c);
        if (!take(c, ':')) reject(c, "expected ':'");
        o.set(std::move(k), read_value(prof, c, depth));
        blanks(c);
    } while (take(c, ','));
    if (!take(c, '}')) reject(c, "expected '}'");
    return JsonValue(std::move(o));
}

JsonValue read_array(const EngineProfile& prof, Cursor& c, int depth) {
    ++c.p;
    JsonArray a;
    blanks(c);
    if (take(c, ']')) return JsonValue(std::move(a));
    do {
        a.push_back(read_value(prof, c, depth));
        blanks(c);
    } while (take(c, ','));
    if (!take(c, ']')) reject(c, "expected ']'");
    return JsonValue(std::move(a));
}

bool keyword(Cursor& c, std::string_view w) {
    if (static_cast<std::size_t>(c.end - c.p) < w.size() || std::string_view(c.p, w.size()) != w) return false;
    c.p += w.size();
    return true;
}

JsonValue read_value(const EngineProfile& prof, Cursor& c, int depth) {
    blanks(c);
    if (c.p == c.end) reject(c, "value expected");
    switch (*c.p) {
        case '{':
            if (depth >= kDepthLimit) reject(c, "too deeply nested");
            return read_object(prof, c, depth + 1);
        case '[':
            if (depth >= kDepthLimit) reject(c, "too deeply nested");
            return read_array(prof, c, depth + 1);
        case '"': return JsonValue(read_string(c));
        default: break;
    }
    if (keyword(c, "true")) return JsonValue(true);
    if (keyword(c, "false")) return JsonValue(false);
    if (keyword(c, "null")) return JsonValue::null();
    if (*c.p == '-' || (*c.p >= '0' && *c.p <= '9')) return read_number(prof, c);
    reject(c, "value expected");
}

std::string to_text(const JsonValue& v) {
    switch (v.type()) {
        case JsonType::Null: return "null";
        case JsonType::Boolean: return v.as_bool() ? "true" : "false";
        case JsonType::Number: {
            const auto& n = v.as_number();
            if (n.kind() == NumberRepr::Kind::ExactInt) return std::to_string(n.as_int());
            if (n.kind() == NumberRepr::Kind::Binary32) return shortest_decimal(n.as_float());
            return shortest_decimal(n.as_double());
        }
        case JsonType::String: {
            std::string out;
            append_quoted(out, v.as_string());
            return out;
        }
        case JsonType::Array: {
            std::string out = "[";
            for (const auto& item : v.as_array().items()) {
                if (out.size() > 1) out += ',';
                out += to_text(item);
            }
            return out + "]";
        }
        case JsonType::Object: {
            std::string out = "{";
            for (const auto& m : v.as_object().members()) {
                if (out.size() > 1) out += ',';
                append_quoted(out, m.name);
                out += ':';
                out += to_text(m.value);
            }
            return out + "}";
        }
    }
    return {};
}

class FloatFirst final : public Engine {
public:
    FloatFirst()
        : Engine(EngineProfile{std::string(engine_ids::kFloatFirst), false, false, false, false, true,
                               {NumberKind::Int32Range, NumberKind::Float32, NumberKind::Float64}, false}) {}

protected:
    JsonValue do_parse(std::string_view text) const override {
        Cursor c{text.data(), text.data(), text.data() + text.size()};
        return read_value(profile(), c, 0);
    }
    std::string do_serialize(const JsonValue& v) const override { return to_text(v); }
};

}  // namespace

std::unique_ptr<Engine> make_float_first() { return std::make_unique<FloatFirst>(); }

}  // namespace divsub::engines
