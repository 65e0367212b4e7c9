// lenient: tokenizer plus recursive builder. Tolerates trailing commas,
// single-quoted strings, bare member names, raw control characters and broken
// UTF-8. Objects keep their members sorted by name, numbers are always binary64.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"
#include "engines/engines.hpp"

namespace divsub::engines {
namespace {

constexpr std::size_t kMaxDepth = 512;

enum class Tok { LBrace, RBrace, LBracket, RBracket, Colon, Comma, String, Number, Word, End };

struct Token {
    Tok kind;
    std::string text;
};

bool word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '$';
}

bool number_char(char c) {
    return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E';
}

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
        if (i_ >= s_.size()) return {Tok::End, {}};
        char c = s_[i_];
        switch (c) {
            case '{': ++i_; return {Tok::LBrace, {}};
            case '}': ++i_; return {Tok::RBrace, {}};
            case '[': ++i_; return {Tok::LBracket, {}};
            case ']': ++i_; return {Tok::RBracket, {}};
            case ':': ++i_; return {Tok::Colon, {}};
            case ',': ++i_; return {Tok::Comma, {}};
            case '"':
            case '\'': return {Tok::String, quoted(c)};
            default: break;
        }
        if (c == '-' || (c >= '0' && c <= '9')) {
            std::size_t start = i_;
            while (i_ < s_.size() && number_char(s_[i_])) ++i_;
            // A bare name may start with a digit ("1abc").
            if (i_ < s_.size() && word_char(s_[i_])) {
                while (i_ < s_.size() && word_char(s_[i_])) ++i_;
                return {Tok::Word, std::string(s_.substr(start, i_ - start))};
            }
            return {Tok::Number, std::string(s_.substr(start, i_ - start))};
        }
        if (word_char(c)) {
            std::size_t start = i_;
            while (i_ < s_.size() && word_char(s_[i_])) ++i_;
            return {Tok::Word, std::string(s_.substr(start, i_ - start))};
        }
        throw ParseError("unexpected character");
    }

private:
    static int hex(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    char32_t hex4() {
        if (i_ + 4 > s_.size()) throw ParseError("bad unicode escape");
        char32_t v = 0;
        for (int k = 0; k < 4; ++k) {
            int h = hex(s_[i_++]);
            if (h < 0) throw ParseError("bad unicode escape");
            v = (v << 4) | static_cast<char32_t>(h);
        }
        return v;
    }

    // Decodes one UTF-8 sequence; any malformed byte becomes U+FFFD.
    void utf8(std::string& out) {
        static constexpr char32_t mins[] = {0, 0x80, 0x800, 0x10000};
        auto b0 = static_cast<unsigned char>(s_[i_]);
        std::size_t need = 0;
        if (b0 >= 0xC2 && b0 <= 0xDF) need = 1;
        else if (b0 >= 0xE0 && b0 <= 0xEF) need = 2;
        else if (b0 >= 0xF0 && b0 <= 0xF4) need = 3;
        char32_t cp = b0 & (0x3F >> need);
        bool ok = need > 0 && i_ + need < s_.size();
        for (std::size_t k = 1; ok && k <= need; ++k) {
            auto b = static_cast<unsigned char>(s_[i_ + k]);
            ok = (b & 0xC0) == 0x80;
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok || cp < mins[need] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            append_utf8(out, 0xFFFD);
            ++i_;
            return;
        }
        append_utf8(out, cp);
        i_ += need + 1;
    }

    std::string quoted(char q) {
        ++i_;
        std::string out;
        while (true) {
            if (i_ >= s_.size()) throw ParseError("unterminated string");
            char c = s_[i_];
            if (c == q) {
                ++i_;
                return out;
            }
            if (static_cast<unsigned char>(c) >= 0x80) {
                utf8(out);
                continue;
            }
            ++i_;
            if (c != '\\') {
                out += c;
                continue;
            }
            if (i_ >= s_.size()) throw ParseError("unterminated string");
            char e = s_[i_++];
            switch (e) {
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'u': {
                    char32_t cp = hex4();
                    if (cp >= 0xD800 && cp <= 0xDBFF && s_.substr(i_, 2) == "\\u") {
                        std::size_t save = i_;
                        i_ += 2;
                        char32_t lo = hex4();
                        if (lo >= 0xDC00 && lo <= 0xDFFF) {
                            cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                        } else {
                            i_ = save;
                        }
                    }
                    if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0xFFFD;
                    append_utf8(out, cp);
                    break;
                }
                default: out += e;
            }
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

class Builder {
public:
    Builder(const Engine& engine, std::string_view text) : engine_(engine), lex_(text) { advance(); }

    JsonValue document() {
        JsonValue v = value(0);
        if (cur_.kind != Tok::End) throw ParseError("trailing characters");
        return v;
    }

private:
    void advance() { cur_ = lex_.next(); }

    JsonValue value(std::size_t depth) {
        if (depth > kMaxDepth) throw ParseError("too deep");
        Token t = std::move(cur_);
        advance();
        switch (t.kind) {
            case Tok::LBrace: return object(depth + 1);
            case Tok::LBracket: return array(depth + 1);
            case Tok::String: return JsonValue(std::move(t.text));
            case Tok::Number:
                try {
                    return JsonValue(detect_number(engine_.profile(), t.text));
                } catch (const UsageError&) {
                    throw ParseError("bad number " + t.text);
                }
            case Tok::Word:
                if (t.text == "true") return JsonValue(true);
                if (t.text == "false") return JsonValue(false);
                if (t.text == "null") return JsonValue::null();
                throw ParseError("unknown word " + t.text);
            default: throw ParseError("value expected");
        }
    }

    JsonValue object(std::size_t depth) {
        JsonObject obj;
        while (cur_.kind != Tok::RBrace) {
            if (cur_.kind != Tok::String && cur_.kind != Tok::Word && cur_.kind != Tok::Number) {
                throw ParseError("key expected");
            }
            std::string key = std::move(cur_.text);
            advance();
            if (cur_.kind != Tok::Colon) throw ParseError("':' expected");
            advance();
            JsonValue v = value(depth);
            engine_.insert_member(obj, std::move(key), std::move(v));
            if (cur_.kind == Tok::Comma) {
                advance();
            } else if (cur_.kind != Tok::RBrace) {
                throw ParseError("',' or '}' expected");
            }
        }
        advance();
        return JsonValue(std::move(obj));
    }

    JsonValue array(std::size_t depth) {
        JsonArray arr;
        while (cur_.kind != Tok::RBracket) {
            arr.push_back(value(depth));
            if (cur_.kind == Tok::Comma) {
                advance();
            } else if (cur_.kind != Tok::RBracket) {
                throw ParseError("',' or ']' expected");
            }
        }
        advance();
        return JsonValue(std::move(arr));
    }

    const Engine& engine_;
    Lexer lex_;
    Token cur_{Tok::End, {}};
};

void quote(std::string& out, std::string_view s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    out += '"';
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\t') {
            out += "\\t";
        } else if (u < 0x20) {
            out += "\\u00";
            out += hex[u >> 4];
            out += hex[u & 0xF];
        } else {
            out += c;
        }
    }
    out += '"';
}

std::string number_text(const NumberRepr& n) {
    if (n.kind() == NumberRepr::Kind::ExactInt) return std::to_string(n.as_int());
    double d = n.as_double();
    if (std::trunc(d) == d && std::fabs(d) < 1e21) {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
        (void)ec;
        return std::string(buf, end);
    }
    if (n.kind() == NumberRepr::Kind::Binary32) return shortest_decimal(n.as_float());
    return shortest_decimal(d);
}

void write(std::string& out, const JsonValue& v) {
    switch (v.type()) {
        case JsonType::Null: out += "null"; break;
        case JsonType::Boolean: out += v.as_bool() ? "true" : "false"; break;
        case JsonType::Number: out += number_text(v.as_number()); break;
        case JsonType::String: quote(out, v.as_string()); break;
        case JsonType::Array: {
            out += '[';
            bool first = true;
            for (const auto& item : v.as_array().items()) {
                if (!first) out += ',';
                first = false;
                write(out, item);
            }
            out += ']';
            break;
        }
        case JsonType::Object: {
            std::vector<const JsonMember*> sorted;
            for (const auto& m : v.as_object().members()) sorted.push_back(&m);
            std::sort(sorted.begin(), sorted.end(),
                      [](const JsonMember* a, const JsonMember* b) { return a->name < b->name; });
            out += '{';
            bool first = true;
            for (const auto* m : sorted) {
                if (!first) out += ',';
                first = false;
                quote(out, m->name);
                out += ':';
                write(out, m->value);
            }
            out += '}';
            break;
        }
    }
}

class Lenient final : public Engine {
public:
    Lenient()
        : Engine(EngineProfile{std::string(engine_ids::kLenient), true, true, true, false, true,
                               {NumberKind::Float64}, false}) {}

    void insert_member(JsonObject& obj, std::string key, JsonValue value) const override {
        obj.set_sorted(std::move(key), std::move(value));
    }

protected:
    JsonValue do_parse(std::string_view text) const override { return Builder(*this, text).document(); }
    std::string do_serialize(const JsonValue& v) const override {
        std::string out;
        write(out, v);
        return out;
    }
};

}  // namespace

std::unique_ptr<Engine> make_lenient() { return std::make_unique<Lenient>(); }

}  // namespace divsub::engines
