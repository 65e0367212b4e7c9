// no-unicode: a table-free state machine over an explicit container stack.
// Any \u escape is refused outright; stray non-UTF-8 bytes are replaced.

#include <optional>
#include <string>
#include <vector>

#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"
#include "engines/engines.hpp"

namespace divsub::engines {
namespace {

class Machine {
public:
    Machine(const EngineProfile& profile, std::string_view in) : profile_(profile), in_(in) {}

    JsonValue run() {
        enum class State { Value, ValueOrClose, Key, KeyOrClose, Colon, Separator };
        State state = State::Value;
        while (true) {
            skip();
            char c = p_ < in_.size() ? in_[p_] : '\0';
            std::optional<JsonValue> done;
            switch (state) {
                case State::ValueOrClose:
                    if (c == ']') {
                        ++p_;
                        done = close();
                        break;
                    }
                    [[fallthrough]];
                case State::Value:
                    if (c == '{') {
                        ++p_;
                        stack_.push_back({JsonValue::object(), {}});
                        state = State::KeyOrClose;
                    } else if (c == '[') {
                        ++p_;
                        stack_.push_back({JsonValue::array(), {}});
                        state = State::ValueOrClose;
                    } else {
                        done = scalar();
                    }
                    break;
                case State::KeyOrClose:
                    if (c == '}') {
                        ++p_;
                        done = close();
                        break;
                    }
                    [[fallthrough]];
                case State::Key:
                    if (c != '"') throw ParseError("member name expected");
                    ++p_;
                    stack_.back().key = text();
                    state = State::Colon;
                    break;
                case State::Colon:
                    if (c != ':') throw ParseError("colon expected");
                    ++p_;
                    state = State::Value;
                    break;
                case State::Separator: {
                    bool in_array = stack_.back().container.is_array();
                    if (c == ',') {
                        ++p_;
                        state = in_array ? State::Value : State::Key;
                    } else if (c == (in_array ? ']' : '}')) {
                        ++p_;
                        done = close();
                    } else {
                        throw ParseError("separator expected");
                    }
                    break;
                }
            }
            if (!done) continue;
            if (stack_.empty()) {
                skip();
                if (p_ != in_.size()) throw ParseError("extra input after document");
                return std::move(*done);
            }
            Frame& top = stack_.back();
            if (top.container.is_array()) top.container.as_array().push_back(std::move(*done));
            else top.container.as_object().set(std::move(top.key), std::move(*done));
            state = State::Separator;
        }
    }

private:
    struct Frame {
        JsonValue container;
        std::string key;
    };

    JsonValue close() {
        JsonValue v = std::move(stack_.back().container);
        stack_.pop_back();
        return v;
    }

    void skip() {
        while (p_ < in_.size() && (in_[p_] == ' ' || in_[p_] == '\n' || in_[p_] == '\r' || in_[p_] == '\t')) ++p_;
    }

    JsonValue scalar() {
        if (p_ >= in_.size()) throw ParseError("value expected at end of input");
        char c = in_[p_];
        if (c == '"') {
            ++p_;
            return JsonValue(text());
        }
        for (std::string_view word : {"true", "false", "null"}) {
            if (in_.substr(p_, word.size()) == word) {
                p_ += word.size();
                if (word == "null") return JsonValue::null();
                return JsonValue(word == "true");
            }
        }
        std::size_t start = p_;
        while (p_ < in_.size() && std::string_view("+-.0123456789eE").find(in_[p_]) != std::string_view::npos) {
            ++p_;
        }
        if (start == p_) throw ParseError("value expected");
        try {
            return JsonValue(detect_number(profile_, in_.substr(start, p_ - start)));
        } catch (const UsageError&) {
            throw ParseError("malformed number");
        }
    }

    // Reads the rest of a string whose opening quote was consumed.
    std::string text() {
        std::string out;
        while (true) {
            if (p_ >= in_.size()) throw ParseError("unterminated string");
            auto c = static_cast<unsigned char>(in_[p_++]);
            if (c == '"') return out;
            if (c < 0x20) throw ParseError("raw control character");
            if (c == '\\') {
                if (p_ >= in_.size()) throw ParseError("unterminated string");
                char e = in_[p_++];
                switch (e) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case '/': out += '/'; break;
                    case 'b': out += '\b'; break;
                    case 'f': out += '\f'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 't': out += '\t'; break;
                    case 'u': throw ParseError("unicode escapes are not supported");
                    default: throw ParseError("unknown escape");
                }
                continue;
            }
            if (c < 0x80) {
                out += static_cast<char>(c);
                continue;
            }
            // Multi-byte sequence: keep it when well-formed, otherwise U+FFFD for the lead byte.
            std::size_t extra = (c & 0xE0) == 0xC0 ? 1 : (c & 0xF0) == 0xE0 ? 2 : (c & 0xF8) == 0xF0 ? 3 : 0;
            std::size_t lead = p_ - 1;
            bool good = extra > 0 && lead + extra < in_.size();
            char32_t cp = c & (0x7Fu >> (extra + 1));
            for (std::size_t k = 1; good && k <= extra; ++k) {
                auto b = static_cast<unsigned char>(in_[lead + k]);
                good = (b & 0xC0) == 0x80;
                cp = (cp << 6) | (b & 0x3Fu);
            }
            if (good) {
                static constexpr char32_t floor[] = {0, 0x80, 0x800, 0x10000};
                good = cp >= floor[extra] && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
            }
            if (good) {
                out.append(in_.substr(lead, extra + 1));
                p_ = lead + extra + 1;
            } else {
                append_utf8(out, 0xFFFD);
            }
        }
    }

    const EngineProfile& profile_;
    std::string_view in_;
    std::size_t p_ = 0;
    std::vector<Frame> stack_;
};

void emit_string(std::string& out, std::string_view s) {
    static constexpr char hex[] = "0123456789abcdef";
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '/': out += "\\/"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    out += "\\u00";
                    out += hex[(c >> 4) & 0xF];
                    out += hex[c & 0xF];
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void emit(std::string& out, const JsonValue& v) {
    if (v.is_null()) {
        out += "null";
    } else if (v.is_bool()) {
        out += v.as_bool() ? "true" : "false";
    } else if (v.is_string()) {
        emit_string(out, v.as_string());
    } else if (v.is_number()) {
        const auto& n = v.as_number();
        if (n.kind() == NumberRepr::Kind::ExactInt) out += std::to_string(n.as_int());
        else if (n.kind() == NumberRepr::Kind::Binary32) out += shortest_decimal(n.as_float());
        else out += shortest_decimal(n.as_double());
    } else if (v.is_array()) {
        out += '[';
        for (std::size_t i = 0; i < v.as_array().size(); ++i) {
            if (i > 0) out += ',';
            emit(out, v.as_array().at(i));
        }
        out += ']';
    } else {
        out += '{';
        bool first = true;
        for (const auto& m : v.as_object().members()) {
            if (!first) out += ',';
            first = false;
            emit_string(out, m.name);
            out += ':';
            emit(out, m.value);
        }
        out += '}';
    }
}

class NoUnicode final : public Engine {
public:
    NoUnicode()
        : Engine(EngineProfile{std::string(engine_ids::kNoUnicode), false, false, false, false, false,
                               {NumberKind::Int64, NumberKind::Float64}, false}) {}

protected:
    JsonValue do_parse(std::string_view text) const override { return Machine(profile(), text).run(); }
    std::string do_serialize(const JsonValue& v) const override {
        std::string out;
        emit(out, v);
        return out;
    }
};

}  // namespace

std::unique_ptr<Engine> make_no_unicode() { return std::make_unique<NoUnicode>(); }

}  // namespace divsub::engines
