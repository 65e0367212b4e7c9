// strict-rfc: a recursive-descent reader that accepts exactly the RFC 8259
// grammar over valid UTF-8, and a minimal writer.

#include <string>

#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"
#include "engines/engines.hpp"

namespace divsub::engines {
namespace {

constexpr std::size_t kMaxDepth = 1000;

class Reader {
public:
    Reader(const EngineProfile& profile, std::string_view text) : profile_(profile), s_(text) {}

    JsonValue document() {
        skip_ws();
        JsonValue v = value(0);
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected data after the root value");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }

    void skip_ws() {
        while (!at_end()) {
            char c = s_[pos_];
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
            ++pos_;
        }
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void literal(std::string_view word) {
        if (s_.substr(pos_, word.size()) != word) fail("invalid literal");
        pos_ += word.size();
    }

    JsonValue value(std::size_t depth) {
        if (at_end()) fail("unexpected end of input");
        switch (peek()) {
            case '{': return object(depth + 1);
            case '[': return array(depth + 1);
            case '"': return JsonValue(string());
            case 't': literal("true"); return JsonValue(true);
            case 'f': literal("false"); return JsonValue(false);
            case 'n': literal("null"); return JsonValue::null();
            default:
                if (peek() == '-' || (peek() >= '0' && peek() <= '9')) return number();
                fail("unexpected character");
        }
    }

    JsonValue object(std::size_t depth) {
        if (depth > kMaxDepth) fail("nesting too deep");
        expect('{');
        JsonObject obj;
        skip_ws();
        if (peek() == '}') {
            ++pos_;
            return JsonValue(std::move(obj));
        }
        for (;;) {
            skip_ws();
            if (peek() != '"') fail("expected a member name");
            std::string name = string();
            skip_ws();
            expect(':');
            skip_ws();
            obj.set(std::move(name), value(depth));
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect('}');
            return JsonValue(std::move(obj));
        }
    }

    JsonValue array(std::size_t depth) {
        if (depth > kMaxDepth) fail("nesting too deep");
        expect('[');
        JsonArray arr;
        skip_ws();
        if (peek() == ']') {
            ++pos_;
            return JsonValue(std::move(arr));
        }
        for (;;) {
            skip_ws();
            arr.push_back(value(depth));
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(']');
            return JsonValue(std::move(arr));
        }
    }

    JsonValue number() {
        std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (!at_end() && s_[pos_] >= '0' && s_[pos_] <= '9') {
                ++pos_;
                ++n;
            }
            return n;
        };
        if (peek() == '-') ++pos_;
        if (peek() == '0') {
            ++pos_;
        } else if (digits() == 0) {
            fail("expected a digit");
        }
        if (peek() == '.') {
            ++pos_;
            if (digits() == 0) fail("expected a fraction digit");
        }
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (digits() == 0) fail("expected an exponent digit");
        }
        std::string_view lit = s_.substr(start, pos_ - start);
        try {
            return JsonValue(detect_number(profile_, lit));
        } catch (const OutOfRange&) {
            pos_ = start;
            fail("number out of range");
        }
    }

    unsigned hex4() {
        if (pos_ + 4 > s_.size()) fail("truncated \\u escape");
        unsigned v = 0;
        for (int i = 0; i < 4; ++i) {
            char c = s_[pos_++];
            v <<= 4;
            if (c >= '0' && c <= '9') v |= static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') v |= static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') v |= static_cast<unsigned>(c - 'A' + 10);
            else fail("invalid hex digit");
        }
        return v;
    }

    // Copies one UTF-8 encoded scalar value, rejecting overlong and surrogate forms.
    void copy_utf8(std::string& out) {
        auto lead = static_cast<unsigned char>(s_[pos_]);
        std::size_t len;
        char32_t min;
        if (lead >= 0xC2 && lead <= 0xDF) {
            len = 2;
            min = 0x80;
        } else if (lead >= 0xE0 && lead <= 0xEF) {
            len = 3;
            min = 0x800;
        } else if (lead >= 0xF0 && lead <= 0xF4) {
            len = 4;
            min = 0x10000;
        } else {
            fail("invalid UTF-8");
        }
        if (pos_ + len > s_.size()) fail("truncated UTF-8 sequence");
        char32_t cp = lead & (0x7F >> len);
        for (std::size_t i = 1; i < len; ++i) {
            auto b = static_cast<unsigned char>(s_[pos_ + i]);
            if ((b & 0xC0) != 0x80) fail("invalid UTF-8");
            cp = (cp << 6) | (b & 0x3F);
        }
        if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid UTF-8");
        out.append(s_.substr(pos_, len));
        pos_ += len;
    }

    std::string string() {
        expect('"');
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated string");
            auto c = static_cast<unsigned char>(s_[pos_]);
            if (c == '"') {
                ++pos_;
                return out;
            }
            if (c < 0x20) fail("control character in string");
            if (c >= 0x80) {
                copy_utf8(out);
                continue;
            }
            if (c != '\\') {
                out += static_cast<char>(c);
                ++pos_;
                continue;
            }
            ++pos_;
            if (at_end()) fail("unterminated escape");
            char e = s_[pos_++];
            switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'u': {
                    unsigned hi = hex4();
                    if (hi >= 0xDC00 && hi <= 0xDFFF) fail("lone low surrogate");
                    if (hi >= 0xD800 && hi <= 0xDBFF) {
                        if (s_.substr(pos_, 2) != "\\u") fail("lone high surrogate");
                        pos_ += 2;
                        unsigned lo = hex4();
                        if (lo < 0xDC00 || lo > 0xDFFF) fail("lone high surrogate");
                        append_utf8(out, 0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00));
                    } else {
                        append_utf8(out, hi);
                    }
                    break;
                }
                default: --pos_; fail("invalid escape");
            }
        }
    }

    const EngineProfile& profile_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

void write(std::string& out, const JsonValue& v) {
    switch (v.type()) {
        case JsonType::Null: out += "null"; return;
        case JsonType::Boolean: out += v.as_bool() ? "true" : "false"; return;
        case JsonType::String: append_quoted(out, v.as_string()); return;
        case JsonType::Number: {
            const auto& n = v.as_number();
            if (n.kind() == NumberRepr::Kind::ExactInt) out += std::to_string(n.as_int());
            else if (n.kind() == NumberRepr::Kind::Binary32) out += shortest_decimal(n.as_float());
            else out += shortest_decimal(n.as_double());
            return;
        }
        case JsonType::Array: {
            out += '[';
            const auto& items = v.as_array().items();
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (i) out += ',';
                write(out, items[i]);
            }
            out += ']';
            return;
        }
        case JsonType::Object: {
            out += '{';
            const auto& members = v.as_object().members();
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i) out += ',';
                append_quoted(out, members[i].name);
                out += ':';
                write(out, members[i].value);
            }
            out += '}';
            return;
        }
    }
}

class StrictRfc final : public Engine {
public:
    StrictRfc() : Engine(EngineProfile{std::string(engine_ids::kStrictRfc)}) {}

protected:
    JsonValue do_parse(std::string_view text) const override { return Reader(profile(), text).document(); }
    std::string do_serialize(const JsonValue& v) const override {
        std::string out;
        write(out, v);
        return out;
    }
};

}  // namespace

std::unique_ptr<Engine> make_strict_rfc() { return std::make_unique<StrictRfc>(); }

}  // namespace divsub::engines
