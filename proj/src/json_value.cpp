#include "divsub/json_value.hpp"

#include <algorithm>
#include <cmath>

#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"

namespace divsub {

std::string_view to_string(JsonType t) {
    switch (t) {
        case JsonType::Object: return "object";
        case JsonType::Array: return "array";
        case JsonType::String: return "string";
        case JsonType::Number: return "number";
        case JsonType::Boolean: return "boolean";
        case JsonType::Null: return "null";
    }
    return "?";
}

std::optional<JsonType> json_type_from_string(std::string_view name) {
    for (auto t : {JsonType::Object, JsonType::Array, JsonType::String, JsonType::Number,
                   JsonType::Boolean, JsonType::Null}) {
        if (to_string(t) == name) return t;
    }
    return std::nullopt;
}

std::string_view to_string(NumberRepr::Kind k) {
    switch (k) {
        case NumberRepr::Kind::ExactInt: return "ExactInt";
        case NumberRepr::Kind::Binary64: return "Binary64";
        case NumberRepr::Kind::Binary32: return "Binary32";
    }
    return "?";
}

// ---------------------------------------------------------------- NumberRepr

NumberRepr NumberRepr::binary64(double v) {
    if (!std::isfinite(v)) throw UsageError("JSON numbers must be finite");
    NumberRepr n(std::int64_t{0});
    n.kind_ = Kind::Binary64;
    n.dbl_ = v;
    return n;
}

NumberRepr NumberRepr::binary32(float v) {
    if (!std::isfinite(v)) throw UsageError("JSON numbers must be finite");
    NumberRepr n(std::int64_t{0});
    n.kind_ = Kind::Binary32;
    n.flt_ = v;
    return n;
}

std::int64_t NumberRepr::as_int() const {
    if (kind_ != Kind::ExactInt) throw AccessError("number is not an exact integer");
    return int_;
}

float NumberRepr::as_float() const {
    if (kind_ != Kind::Binary32) throw AccessError("number is not binary32");
    return flt_;
}

double NumberRepr::as_double() const noexcept {
    switch (kind_) {
        case Kind::ExactInt: return static_cast<double>(int_);
        case Kind::Binary64: return dbl_;
        case Kind::Binary32: return static_cast<double>(flt_);
    }
    return 0.0;
}

long double NumberRepr::as_long_double() const noexcept {
    switch (kind_) {
        case Kind::ExactInt: return static_cast<long double>(int_);
        case Kind::Binary64: return dbl_;
        case Kind::Binary32: return flt_;
    }
    return 0.0L;
}

bool operator==(const NumberRepr& a, const NumberRepr& b) noexcept {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case NumberRepr::Kind::ExactInt: return a.int_ == b.int_;
        case NumberRepr::Kind::Binary64: return a.dbl_ == b.dbl_;
        case NumberRepr::Kind::Binary32: return a.flt_ == b.flt_;
    }
    return false;
}

// ---------------------------------------------------------------- JsonObject

std::size_t JsonObject::size() const noexcept { return members_.size(); }
bool JsonObject::empty() const noexcept { return members_.empty(); }

bool JsonObject::contains(std::string_view name) const { return find(name) != nullptr; }

const JsonValue* JsonObject::find(std::string_view name) const {
    for (const auto& m : members_) {
        if (m.name == name) return &m.value;
    }
    return nullptr;
}

JsonValue* JsonObject::find(std::string_view name) {
    for (auto& m : members_) {
        if (m.name == name) return &m.value;
    }
    return nullptr;
}

void JsonObject::set(std::string name, JsonValue value) {
    if (auto* existing = find(name)) {
        *existing = std::move(value);
        return;
    }
    members_.push_back(JsonMember{std::move(name), std::move(value)});
}

void JsonObject::set_sorted(std::string name, JsonValue value) {
    auto it = std::lower_bound(members_.begin(), members_.end(), name,
                               [](const JsonMember& m, const std::string& n) { return m.name < n; });
    if (it != members_.end() && it->name == name) {
        it->value = std::move(value);
        return;
    }
    members_.insert(it, JsonMember{std::move(name), std::move(value)});
}

bool JsonObject::erase(std::string_view name) {
    auto it = std::find_if(members_.begin(), members_.end(),
                           [&](const JsonMember& m) { return m.name == name; });
    if (it == members_.end()) return false;
    members_.erase(it);
    return true;
}

std::vector<std::string> JsonObject::keys() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.name);
    return out;
}

bool operator==(const JsonObject& a, const JsonObject& b) { return a.members_ == b.members_; }

// ----------------------------------------------------------------- JsonArray

JsonArray::JsonArray(std::initializer_list<JsonValue> items) : items_(items) {}

const JsonValue& JsonArray::at(std::size_t i) const {
    if (i >= items_.size()) throw AccessError("array index " + std::to_string(i) + " out of range");
    return items_[i];
}

JsonValue& JsonArray::at(std::size_t i) {
    if (i >= items_.size()) throw AccessError("array index " + std::to_string(i) + " out of range");
    return items_[i];
}

void JsonArray::push_back(JsonValue v) { items_.push_back(std::move(v)); }

void JsonArray::erase(std::size_t i) {
    if (i >= items_.size()) throw AccessError("array index " + std::to_string(i) + " out of range");
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(i));
}

bool operator==(const JsonArray& a, const JsonArray& b) { return a.items_ == b.items_; }

// ----------------------------------------------------------------- JsonValue

JsonType JsonValue::type() const noexcept {
    switch (v_.index()) {
        case 0: return JsonType::Null;
        case 1: return JsonType::Boolean;
        case 2: return JsonType::Number;
        case 3: return JsonType::String;
        case 4: return JsonType::Array;
        default: return JsonType::Object;
    }
}

namespace {
[[noreturn]] void type_mismatch(JsonType want, JsonType got) {
    throw AccessError("expected " + std::string(to_string(want)) + ", found " +
                      std::string(to_string(got)));
}
}  // namespace

const JsonObject& JsonValue::as_object() const {
    if (auto* p = std::get_if<JsonObject>(&v_)) return *p;
    type_mismatch(JsonType::Object, type());
}
JsonObject& JsonValue::as_object() {
    if (auto* p = std::get_if<JsonObject>(&v_)) return *p;
    type_mismatch(JsonType::Object, type());
}
const JsonArray& JsonValue::as_array() const {
    if (auto* p = std::get_if<JsonArray>(&v_)) return *p;
    type_mismatch(JsonType::Array, type());
}
JsonArray& JsonValue::as_array() {
    if (auto* p = std::get_if<JsonArray>(&v_)) return *p;
    type_mismatch(JsonType::Array, type());
}
const std::string& JsonValue::as_string() const {
    if (auto* p = std::get_if<std::string>(&v_)) return *p;
    type_mismatch(JsonType::String, type());
}
const NumberRepr& JsonValue::as_number() const {
    if (auto* p = std::get_if<NumberRepr>(&v_)) return *p;
    type_mismatch(JsonType::Number, type());
}
bool JsonValue::as_bool() const {
    if (auto* p = std::get_if<bool>(&v_)) return *p;
    type_mismatch(JsonType::Boolean, type());
}

bool operator==(const JsonValue& a, const JsonValue& b) { return a.v_ == b.v_; }

std::string describe(const JsonValue& v) { return facade_serialize(v); }

}  // namespace divsub
