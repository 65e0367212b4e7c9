#include "divsub/canonical.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <system_error>
#include <vector>

#include "divsub/errors.hpp"

namespace divsub {

// ----------------------------------------------------------------- writing

std::string shortest_decimal(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

std::string shortest_decimal(float v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

namespace {

std::string with_fraction(std::string s) {
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void write_number(std::string& out, const NumberRepr& n) {
    switch (n.kind()) {
        case NumberRepr::Kind::ExactInt: out += std::to_string(n.as_int()); break;
        case NumberRepr::Kind::Binary64: out += with_fraction(shortest_decimal(n.as_double())); break;
        case NumberRepr::Kind::Binary32: out += with_fraction(shortest_decimal(n.as_float())); break;
    }
}

void write_value(std::string& out, const JsonValue& v) {
    switch (v.type()) {
        case JsonType::Null: out += "null"; break;
        case JsonType::Boolean: out += v.as_bool() ? "true" : "false"; break;
        case JsonType::Number: write_number(out, v.as_number()); break;
        case JsonType::String: append_quoted(out, v.as_string()); break;
        case JsonType::Array: {
            out += '[';
            bool first = true;
            for (const auto& item : v.as_array().items()) {
                if (!first) out += ',';
                first = false;
                write_value(out, item);
            }
            out += ']';
            break;
        }
        case JsonType::Object: {
            out += '{';
            bool first = true;
            for (const auto& m : v.as_object().members()) {
                if (!first) out += ',';
                first = false;
                append_quoted(out, m.name);
                out += ':';
                write_value(out, m.value);
            }
            out += '}';
            break;
        }
    }
}

}  // namespace

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

void append_quoted(std::string& out, std::string_view s) {
    static constexpr char hex[] = "0123456789abcdef";
    out += '"';
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (u < 0x20) {
                    out += "\\u00";
                    out += hex[u >> 4];
                    out += hex[u & 0xF];
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

std::string facade_serialize(const JsonValue& v) {
    std::string out;
    write_value(out, v);
    return out;
}

// ----------------------------------------------------------------- reading
//
// Iterative reader: containers live on an explicit stack so that the depth
// limit is the only bound on nesting.

namespace {

class ReferenceReader {
public:
    ReferenceReader(std::string_view text, std::size_t max_depth)
        : s_(text), max_depth_(max_depth) {}

    JsonValue run() {
        skip_ws();
        JsonValue root = read_any();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected content after JSON value");
        return root;
    }

private:
    struct Frame {
        JsonValue container;
        std::string pending_key;
    };

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }

    void skip_ws() {
        while (!at_end()) {
            char c = s_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') ++pos_;
            else break;
        }
    }

    void expect(char c) {
        if (peek() != c || at_end()) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    // Reads one complete value, descending iteratively into containers.
    JsonValue read_any() {
        std::vector<Frame> stack;
        for (;;) {
            JsonValue scalar;
            bool have_value = false;
            skip_ws();
            if (at_end()) fail("unexpected end of input");
            char c = peek();
            if (c == '{' || c == '[') {
                if (stack.size() >= max_depth_) fail("nesting too deep");
                ++pos_;
                Frame f{c == '{' ? JsonValue::object() : JsonValue::array(), {}};
                skip_ws();
                if ((c == '{' && peek() == '}') || (c == '[' && peek() == ']')) {
                    ++pos_;
                    scalar = std::move(f.container);
                    have_value = true;
                } else {
                    if (c == '{') {
                        f.pending_key = read_key();
                    }
                    stack.push_back(std::move(f));
                    continue;
                }
            } else {
                scalar = read_scalar();
                have_value = true;
            }

            // Attach finished values to enclosing containers, closing as many as possible.
            while (have_value) {
                if (stack.empty()) return scalar;
                Frame& top = stack.back();
                if (top.container.is_object()) {
                    top.container.as_object().set(std::move(top.pending_key), std::move(scalar));
                } else {
                    top.container.as_array().push_back(std::move(scalar));
                }
                skip_ws();
                char d = peek();
                if (at_end()) fail("unexpected end of input");
                if (d == ',') {
                    ++pos_;
                    if (top.container.is_object()) {
                        skip_ws();
                        top.pending_key = read_key();
                    }
                    have_value = false;
                } else if ((d == '}' && top.container.is_object()) ||
                           (d == ']' && top.container.is_array())) {
                    ++pos_;
                    scalar = std::move(top.container);
                    stack.pop_back();
                } else {
                    fail(top.container.is_object() ? "expected ',' or '}'" : "expected ',' or ']'");
                }
            }
        }
    }

    std::string read_key() {
        if (peek() != '"' || at_end()) fail("expected string key");
        std::string key = read_string();
        skip_ws();
        expect(':');
        return key;
    }

    JsonValue read_scalar() {
        char c = peek();
        if (c == '"') return JsonValue(read_string());
        if (c == '-' || (c >= '0' && c <= '9')) return read_number();
        if (s_.substr(pos_, 4) == "true") { pos_ += 4; return JsonValue(true); }
        if (s_.substr(pos_, 5) == "false") { pos_ += 5; return JsonValue(false); }
        if (s_.substr(pos_, 4) == "null") { pos_ += 4; return JsonValue::null(); }
        fail("unexpected character");
    }

    JsonValue read_number() {
        std::size_t start = pos_;
        bool integral = true;
        if (peek() == '-') ++pos_;
        if (peek() == '0') {
            ++pos_;
        } else if (peek() >= '1' && peek() <= '9') {
            while (peek() >= '0' && peek() <= '9' && !at_end()) ++pos_;
        } else {
            fail("invalid number");
        }
        if (peek() == '.' && !at_end()) {
            integral = false;
            ++pos_;
            if (!(peek() >= '0' && peek() <= '9') || at_end()) fail("digit expected after '.'");
            while (peek() >= '0' && peek() <= '9' && !at_end()) ++pos_;
        }
        if ((peek() == 'e' || peek() == 'E') && !at_end()) {
            integral = false;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!(peek() >= '0' && peek() <= '9') || at_end()) fail("digit expected in exponent");
            while (peek() >= '0' && peek() <= '9' && !at_end()) ++pos_;
        }
        const char* first = s_.data() + start;
        const char* last = s_.data() + pos_;
        if (integral) {
            std::int64_t iv = 0;
            auto [p, ec] = std::from_chars(first, last, iv);
            if (ec == std::errc() && p == last) return JsonValue(NumberRepr::exact(iv));
        }
        double dv = 0.0;
        auto [p, ec] = std::from_chars(first, last, dv);
        if (ec != std::errc() || p != last || !std::isfinite(dv)) {
            pos_ = start;
            fail("number out of range");
        }
        return JsonValue(NumberRepr::binary64(dv));
    }

    unsigned read_hex4() {
        if (pos_ + 4 > s_.size()) fail("truncated \\u escape");
        unsigned v = 0;
        for (int i = 0; i < 4; ++i) {
            char h = s_[pos_++];
            v <<= 4;
            if (h >= '0' && h <= '9') v |= static_cast<unsigned>(h - '0');
            else if (h >= 'a' && h <= 'f') v |= static_cast<unsigned>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') v |= static_cast<unsigned>(h - 'A' + 10);
            else { --pos_; fail("invalid hex digit in \\u escape"); }
        }
        return v;
    }

    std::string read_string() {
        ++pos_;  // opening quote
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated string");
            auto c = static_cast<unsigned char>(s_[pos_]);
            if (c == '"') { ++pos_; return out; }
            if (c < 0x20) fail("control character in string");
            if (c == '\\') {
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
                        unsigned cp = read_hex4();
                        if (cp >= 0xD800 && cp <= 0xDBFF) {
                            if (s_.substr(pos_, 2) == "\\u") {
                                std::size_t save = pos_;
                                pos_ += 2;
                                unsigned lo = read_hex4();
                                if (lo >= 0xDC00 && lo <= 0xDFFF) {
                                    cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                                } else {
                                    pos_ = save;
                                    cp = 0xFFFD;
                                }
                            } else {
                                cp = 0xFFFD;
                            }
                        } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
                            cp = 0xFFFD;
                        }
                        append_utf8(out, static_cast<char32_t>(cp));
                        break;
                    }
                    default: --pos_; fail("invalid escape");
                }
                continue;
            }
            if (c < 0x80) {
                out += static_cast<char>(c);
                ++pos_;
                continue;
            }
            copy_utf8_sequence(out);
        }
    }

    // Validates one multi-byte UTF-8 sequence (RFC 3629) and copies it.
    void copy_utf8_sequence(std::string& out) {
        auto b0 = static_cast<unsigned char>(s_[pos_]);
        std::size_t len = 0;
        char32_t min = 0;
        if ((b0 & 0xE0) == 0xC0) { len = 2; min = 0x80; }
        else if ((b0 & 0xF0) == 0xE0) { len = 3; min = 0x800; }
        else if ((b0 & 0xF8) == 0xF0) { len = 4; min = 0x10000; }
        else fail("invalid UTF-8 lead byte");
        if (pos_ + len > s_.size()) fail("truncated UTF-8 sequence");
        char32_t cp = b0 & (0x7F >> len);
        for (std::size_t i = 1; i < len; ++i) {
            auto b = static_cast<unsigned char>(s_[pos_ + i]);
            if ((b & 0xC0) != 0x80) fail("invalid UTF-8 continuation byte");
            cp = (cp << 6) | (b & 0x3F);
        }
        if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid UTF-8 scalar");
        out.append(s_.substr(pos_, len));
        pos_ += len;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t max_depth_;
};

}  // namespace

JsonValue parse_reference(std::string_view text, std::size_t max_depth) {
    return ReferenceReader(text, max_depth).run();
}

bool is_reference_wellformed(std::string_view text) {
    try {
        parse_reference(text);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

}  // namespace divsub
