#pragma once

// Facade value model shared by every bridge and wrapper.
//
// A JsonValue is a tagged tree (Object, Array, String, Number, Boolean,
// Null). Objects keep their members in a sequence so that engines can
// expose their own ordering policy; names are unique within one object.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace divsub {

enum class JsonType { Object, Array, String, Number, Boolean, Null };

std::string_view to_string(JsonType t);
std::optional<JsonType> json_type_from_string(std::string_view name);

/// Numeric payload. Binary32 exists so that narrowing engines are observable.
class NumberRepr {
public:
    enum class Kind { ExactInt, Binary64, Binary32 };

    static NumberRepr exact(std::int64_t v) { return NumberRepr(v); }
    /// Throws UsageError on NaN/Infinity.
    static NumberRepr binary64(double v);
    static NumberRepr binary32(float v);

    Kind kind() const noexcept { return kind_; }
    std::int64_t as_int() const;  ///< only for ExactInt
    float as_float() const;       ///< only for Binary32
    /// Value widened to double. Exact for Binary32/Binary64.
    double as_double() const noexcept;
    /// Value widened to long double; exact for every ExactInt.
    long double as_long_double() const noexcept;

    /// Kind and value both equal (STRICT number equality).
    friend bool operator==(const NumberRepr& a, const NumberRepr& b) noexcept;

private:
    explicit NumberRepr(std::int64_t v) : kind_(Kind::ExactInt), int_(v) {}
    Kind kind_ = Kind::ExactInt;
    std::int64_t int_ = 0;
    double dbl_ = 0.0;
    float flt_ = 0.0f;
};

std::string_view to_string(NumberRepr::Kind k);

struct JsonNull {
    friend bool operator==(JsonNull, JsonNull) noexcept { return true; }
};

class JsonValue;
struct JsonMember;

class JsonObject {
public:
    JsonObject() = default;

    std::size_t size() const noexcept;
    bool empty() const noexcept;
    bool contains(std::string_view name) const;
    const JsonValue* find(std::string_view name) const;
    JsonValue* find(std::string_view name);
    /// Last write wins; an existing member keeps its position.
    void set(std::string name, JsonValue value);
    /// Same as set() but new members are placed in sorted name order.
    void set_sorted(std::string name, JsonValue value);
    bool erase(std::string_view name);
    std::vector<std::string> keys() const;

    const std::vector<JsonMember>& members() const noexcept { return members_; }
    std::vector<JsonMember>& members() noexcept { return members_; }

    friend bool operator==(const JsonObject& a, const JsonObject& b);

private:
    std::vector<JsonMember> members_;
};

class JsonArray {
public:
    JsonArray() = default;
    JsonArray(std::initializer_list<JsonValue> items);

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const JsonValue& at(std::size_t i) const;
    JsonValue& at(std::size_t i);
    void push_back(JsonValue v);
    void erase(std::size_t i);

    const std::vector<JsonValue>& items() const noexcept { return items_; }
    std::vector<JsonValue>& items() noexcept { return items_; }

    friend bool operator==(const JsonArray& a, const JsonArray& b);

private:
    std::vector<JsonValue> items_;
};

class JsonValue {
public:
    using Storage = std::variant<JsonNull, bool, NumberRepr, std::string, JsonArray, JsonObject>;

    JsonValue() : v_(JsonNull{}) {}
    JsonValue(JsonNull) : v_(JsonNull{}) {}
    JsonValue(bool b) : v_(b) {}
    JsonValue(NumberRepr n) : v_(n) {}
    JsonValue(std::string s) : v_(std::move(s)) {}
    JsonValue(const char* s) : v_(std::string(s)) {}
    JsonValue(JsonArray a) : v_(std::move(a)) {}
    JsonValue(JsonObject o) : v_(std::move(o)) {}

    static JsonValue null() { return JsonValue(); }
    static JsonValue integer(std::int64_t v) { return JsonValue(NumberRepr::exact(v)); }
    static JsonValue real(double v) { return JsonValue(NumberRepr::binary64(v)); }
    static JsonValue object() { return JsonValue(JsonObject{}); }
    static JsonValue array() { return JsonValue(JsonArray{}); }

    JsonType type() const noexcept;
    bool is_null() const noexcept { return type() == JsonType::Null; }
    bool is_object() const noexcept { return type() == JsonType::Object; }
    bool is_array() const noexcept { return type() == JsonType::Array; }
    bool is_string() const noexcept { return type() == JsonType::String; }
    bool is_number() const noexcept { return type() == JsonType::Number; }
    bool is_bool() const noexcept { return type() == JsonType::Boolean; }

    // Checked accessors; throw AccessError on type mismatch.
    const JsonObject& as_object() const;
    JsonObject& as_object();
    const JsonArray& as_array() const;
    JsonArray& as_array();
    const std::string& as_string() const;
    const NumberRepr& as_number() const;
    bool as_bool() const;

    const Storage& storage() const noexcept { return v_; }

    /// STRICT structural equality: member order and number kind matter.
    friend bool operator==(const JsonValue& a, const JsonValue& b);

private:
    Storage v_;
};

struct JsonMember {
    std::string name;
    JsonValue value;

    friend bool operator==(const JsonMember& a, const JsonMember& b) {
        return a.name == b.name && a.value == b.value;
    }
};

/// Serialized JSON text, kept distinct from a String value holding the same bytes.
struct JsonText {
    std::string text;
    friend bool operator==(const JsonText&, const JsonText&) = default;
};

/// Human-readable one-line rendering used in diagnostics (canonical serialization).
std::string describe(const JsonValue& v);

}  // namespace divsub
