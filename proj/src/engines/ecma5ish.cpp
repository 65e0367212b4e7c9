// ecma5ish: an ECMAScript-flavored object-literal reader. Accepts single
// quotes and identifier member names, refuses member names that start with a
// digit, and reports 1-based character positions.

#include <string>

#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"
#include "engines/engines.hpp"

namespace divsub::engines {
namespace {

constexpr int kMaxDepth = 256;

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$'; }
bool ident_part(char c) { return ident_start(c) || is_digit(c); }

class Parser {
public:
    Parser(const EngineProfile& profile, std::string_view src) : profile_(profile), src_(src) {}

    JsonValue run() {
        space();
        JsonValue v = parse_value(0);
        space();
        if (at_ < src_.size()) error("Unexpected token after JSON value");
        return v;
    }

private:
    [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, at_ + 1); }

    char ch() const { return at_ < src_.size() ? src_[at_] : '\0'; }

    void space() {
        while (at_ < src_.size()) {
            switch (src_[at_]) {
                case ' ':
                case '\t':
                case '\n':
                case '\r':
                case '\f':
                case '\v': ++at_; break;
                default: return;
            }
        }
    }

    JsonValue parse_value(int depth) {
        char c = ch();
        if (c == '{' || c == '[') {
            if (depth >= kMaxDepth) error("Maximum nesting depth exceeded");
            return c == '{' ? parse_object(depth + 1) : parse_array(depth + 1);
        }
        if (c == '"' || c == '\'') return JsonValue(parse_string());
        if (c == '-' || is_digit(c)) return parse_number();
        if (ident_start(c)) {
            std::size_t start = at_;
            while (ident_part(ch())) ++at_;
            std::string_view word = src_.substr(start, at_ - start);
            if (word == "true") return JsonValue(true);
            if (word == "false") return JsonValue(false);
            if (word == "null") return JsonValue::null();
            at_ = start;
            error("Unexpected identifier");
        }
        if (at_ >= src_.size()) error("Unexpected end of input");
        error("Unexpected token");
    }

    std::string parse_key() {
        std::size_t start = at_;
        std::string key;
        if (ch() == '"' || ch() == '\'') {
            key = parse_string();
        } else if (is_digit(ch())) {
            error("Member names must not start with a digit");
        } else if (ident_start(ch())) {
            while (ident_part(ch())) ++at_;
            key = std::string(src_.substr(start, at_ - start));
        } else {
            error(at_ >= src_.size() ? "Unexpected end of input" : "Expected a member name");
        }
        if (!key.empty() && is_digit(key[0])) {
            at_ = start;
            error("Member names must not start with a digit");
        }
        return key;
    }

    JsonValue parse_object(int depth) {
        ++at_;
        JsonObject obj;
        space();
        if (ch() == '}') {
            ++at_;
            return JsonValue(std::move(obj));
        }
        while (true) {
            space();
            std::string key = parse_key();
            space();
            if (ch() != ':') error("Expected ':'");
            ++at_;
            space();
            obj.set(std::move(key), parse_value(depth));
            space();
            if (ch() == '}') {
                ++at_;
                return JsonValue(std::move(obj));
            }
            if (ch() != ',') error("Expected ',' or '}'");
            ++at_;
        }
    }

    JsonValue parse_array(int depth) {
        ++at_;
        JsonArray arr;
        space();
        if (ch() == ']') {
            ++at_;
            return JsonValue(std::move(arr));
        }
        while (true) {
            space();
            arr.push_back(parse_value(depth));
            space();
            if (ch() == ']') {
                ++at_;
                return JsonValue(std::move(arr));
            }
            if (ch() != ',') error("Expected ',' or ']'");
            ++at_;
        }
    }

    JsonValue parse_number() {
        std::size_t start = at_;
        if (ch() == '-') ++at_;
        if (!is_digit(ch())) error("No number after minus sign");
        if (ch() == '0' && is_digit(at_ + 1 < src_.size() ? src_[at_ + 1] : '\0')) {
            error("Leading zeros are not allowed");
        }
        while (is_digit(ch())) ++at_;
        if (ch() == '.') {
            ++at_;
            if (!is_digit(ch())) error("Unterminated fractional number");
            while (is_digit(ch())) ++at_;
        }
        if (ch() == 'e' || ch() == 'E') {
            ++at_;
            if (ch() == '+' || ch() == '-') ++at_;
            if (!is_digit(ch())) error("Exponent part is missing a number");
            while (is_digit(ch())) ++at_;
        }
        try {
            return JsonValue(detect_number(profile_, src_.substr(start, at_ - start)));
        } catch (const OutOfRange&) {
            at_ = start;
            error("Number out of range");
        }
    }

    unsigned read_hex4() {
        unsigned v = 0;
        for (int k = 0; k < 4; ++k) {
            char c = ch();
            unsigned d;
            if (is_digit(c)) d = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
            else error("Bad Unicode escape");
            v = v * 16 + d;
            ++at_;
        }
        return v;
    }

    void read_utf8(std::string& out) {
        auto b = [&](std::size_t k) { return static_cast<unsigned char>(src_[at_ + k]); };
        unsigned char lead = b(0);
        std::size_t n = lead < 0xC2 ? 0 : lead < 0xE0 ? 2 : lead < 0xF0 ? 3 : lead < 0xF5 ? 4 : 0;
        if (n == 0 || at_ + n > src_.size()) error("Invalid UTF-8");
        for (std::size_t k = 1; k < n; ++k) {
            if ((b(k) & 0xC0) != 0x80) error("Invalid UTF-8");
        }
        if (n == 3) {
            unsigned cp = ((lead & 0x0Fu) << 12) | ((b(1) & 0x3Fu) << 6) | (b(2) & 0x3Fu);
            if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) error("Invalid UTF-8");
        } else if (n == 4) {
            unsigned cp = ((lead & 0x07u) << 18) | ((b(1) & 0x3Fu) << 12) | ((b(2) & 0x3Fu) << 6) | (b(3) & 0x3Fu);
            if (cp < 0x10000 || cp > 0x10FFFF) error("Invalid UTF-8");
        }
        out.append(src_.substr(at_, n));
        at_ += n;
    }

    std::string parse_string() {
        char quote = ch();
        ++at_;
        std::string out;
        while (true) {
            if (at_ >= src_.size()) error("Unterminated string");
            char c = src_[at_];
            if (c == quote) {
                ++at_;
                return out;
            }
            if (static_cast<unsigned char>(c) < 0x20) error("Bad control character in string literal");
            if (static_cast<unsigned char>(c) >= 0x80) {
                read_utf8(out);
                continue;
            }
            ++at_;
            if (c != '\\') {
                out += c;
                continue;
            }
            char e = ch();
            ++at_;
            switch (e) {
                case '"':
                case '\'':
                case '\\':
                case '/': out += e; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'u': {
                    unsigned cp = read_hex4();
                    if (cp >= 0xD800 && cp <= 0xDBFF && ch() == '\\' && at_ + 1 < src_.size() &&
                        src_[at_ + 1] == 'u') {
                        std::size_t back = at_;
                        at_ += 2;
                        unsigned lo = read_hex4();
                        if (lo >= 0xDC00 && lo <= 0xDFFF) {
                            cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                        } else {
                            at_ = back;
                        }
                    }
                    append_utf8(out, (cp >= 0xD800 && cp <= 0xDFFF) ? 0xFFFD : cp);
                    break;
                }
                default: --at_; error("Bad escaped character");
            }
        }
    }

    const EngineProfile& profile_;
    std::string_view src_;
    std::size_t at_ = 0;
};

void put_hex4(std::string& out, unsigned v) {
    static constexpr char digits[] = "0123456789abcdef";
    out += "\\u";
    for (int shift = 12; shift >= 0; shift -= 4) out += digits[(v >> shift) & 0xF];
}

// Escapes everything outside printable ASCII.
void put_string(std::string& out, std::string_view s) {
    out += '"';
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\b': out += "\\b"; break;
                case '\f': out += "\\f"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (c < 0x20 || c == 0x7F) put_hex4(out, c);
                    else out += static_cast<char>(c);
            }
            ++i;
            continue;
        }
        std::size_t n = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : 2;
        unsigned cp = c & (0xFFu >> (n + 1));
        for (std::size_t k = 1; k < n && i + k < s.size(); ++k) {
            cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3Fu);
        }
        if (cp >= 0x10000) {
            cp -= 0x10000;
            put_hex4(out, 0xD800 + (cp >> 10));
            put_hex4(out, 0xDC00 + (cp & 0x3FF));
        } else {
            put_hex4(out, cp);
        }
        i += n;
    }
    out += '"';
}

void put_value(std::string& out, const JsonValue& v) {
    switch (v.type()) {
        case JsonType::Null: out += "null"; break;
        case JsonType::Boolean: out += v.as_bool() ? "true" : "false"; break;
        case JsonType::String: put_string(out, v.as_string()); break;
        case JsonType::Number: {
            const auto& n = v.as_number();
            switch (n.kind()) {
                case NumberRepr::Kind::ExactInt: out += std::to_string(n.as_int()); break;
                case NumberRepr::Kind::Binary64: out += shortest_decimal(n.as_double()); break;
                case NumberRepr::Kind::Binary32: out += shortest_decimal(n.as_float()); break;
            }
            break;
        }
        case JsonType::Array: {
            out += '[';
            const char* sep = "";
            for (const auto& item : v.as_array().items()) {
                out += sep;
                put_value(out, item);
                sep = ", ";
            }
            out += ']';
            break;
        }
        case JsonType::Object: {
            out += '{';
            const char* sep = "";
            for (const auto& m : v.as_object().members()) {
                out += sep;
                put_string(out, m.name);
                out += ": ";
                put_value(out, m.value);
                sep = ", ";
            }
            out += '}';
            break;
        }
    }
}

class Ecma5ish final : public Engine {
public:
    Ecma5ish()
        : Engine(EngineProfile{std::string(engine_ids::kEcma5ish), false, true, true, true, true,
                               {NumberKind::Int64, NumberKind::Float64}, true}) {}

protected:
    JsonValue do_parse(std::string_view text) const override { return Parser(profile(), text).run(); }
    std::string do_serialize(const JsonValue& v) const override {
        std::string out;
        put_value(out, v);
        return out;
    }
};

}  // namespace

std::unique_ptr<Engine> make_ecma5ish() { return std::make_unique<Ecma5ish>(); }

}  // namespace divsub::engines
