#include "divsub/wrappers.hpp"

#include <memory>
#include <string>

#include "divsub/errors.hpp"

namespace divsub {
namespace {

JsonObject& object_of(JsonValue& v) {
    if (!v.is_object()) throw AccessError("not an object: " + std::string(to_string(v.type())));
    return v.as_object();
}

const JsonObject& object_of(const JsonValue& v) {
    if (!v.is_object()) throw AccessError("not an object: " + std::string(to_string(v.type())));
    return v.as_object();
}

JsonArray& array_of(JsonValue& v) {
    if (!v.is_array()) throw AccessError("not an array: " + std::string(to_string(v.type())));
    return v.as_array();
}

const JsonArray& array_of(const JsonValue& v) {
    if (!v.is_array()) throw AccessError("not an array: " + std::string(to_string(v.type())));
    return v.as_array();
}

void check_index(const JsonArray& a, std::size_t i) {
    if (i >= a.size()) {
        throw AccessError("index " + std::to_string(i) + " out of range for size " + std::to_string(a.size()));
    }
}

class EngineWrapper final : public Wrapper {
public:
    explicit EngineWrapper(const Engine& engine) : engine_(engine) {}

    const std::string& id() const noexcept override { return engine_.id(); }
    const std::string& engine_id() const noexcept override { return engine_.id(); }

    JsonValue parse(std::string_view text) const override {
        EngineOutcome out = engine_.parse(text);
        if (!out.accepted()) {
            const auto& r = out.rejection();
            throw ParseError(r.message, r.position);
        }
        return out.value();
    }
    std::string serialize(const JsonValue& v) const override { return engine_.serialize(v); }
    JsonType type_of(const JsonValue& v) const override { return v.type(); }
    JsonValue deep_copy(const JsonValue& v) const override { return v; }

    JsonValue obj_get(const JsonValue& obj, std::string_view key) const override {
        const JsonValue* found = object_of(obj).find(key);
        if (found == nullptr) throw AccessError("no member named \"" + std::string(key) + "\"");
        return *found;
    }
    void obj_set(JsonValue& obj, std::string key, JsonValue value) const override {
        engine_.insert_member(object_of(obj), std::move(key), std::move(value));
    }
    bool obj_remove(JsonValue& obj, std::string_view key) const override { return object_of(obj).erase(key); }
    std::size_t obj_size(const JsonValue& obj) const override { return object_of(obj).size(); }
    std::vector<std::string> obj_keys(const JsonValue& obj) const override { return object_of(obj).keys(); }
    bool obj_has(const JsonValue& obj, std::string_view key) const override { return object_of(obj).contains(key); }

    JsonValue arr_get(const JsonValue& arr, std::size_t index) const override {
        const JsonArray& a = array_of(arr);
        check_index(a, index);
        return a.at(index);
    }
    void arr_append(JsonValue& arr, JsonValue value) const override { array_of(arr).push_back(std::move(value)); }
    void arr_set(JsonValue& arr, std::size_t index, JsonValue value) const override {
        JsonArray& a = array_of(arr);
        check_index(a, index);
        a.at(index) = std::move(value);
    }
    JsonValue arr_remove(JsonValue& arr, std::size_t index) const override {
        JsonArray& a = array_of(arr);
        check_index(a, index);
        JsonValue old = std::move(a.at(index));
        a.erase(index);
        return old;
    }
    std::size_t arr_size(const JsonValue& arr) const override { return array_of(arr).size(); }

private:
    const Engine& engine_;
};

class PlaceboWrapper final : public Wrapper {
public:
    const std::string& id() const noexcept override { return id_; }
    const std::string& engine_id() const noexcept override { return id_; }
    bool is_placebo() const noexcept override { return true; }

    JsonValue parse(std::string_view) const override { throw PlaceboError("parse"); }
    std::string serialize(const JsonValue&) const override { throw PlaceboError("serialize"); }
    JsonType type_of(const JsonValue&) const override { throw PlaceboError("type-of"); }
    JsonValue deep_copy(const JsonValue&) const override { throw PlaceboError("deep-copy"); }

    JsonValue obj_get(const JsonValue&, std::string_view) const override { throw PlaceboError("obj-get"); }
    void obj_set(JsonValue&, std::string, JsonValue) const override { throw PlaceboError("obj-set"); }
    bool obj_remove(JsonValue&, std::string_view) const override { throw PlaceboError("obj-remove"); }
    std::size_t obj_size(const JsonValue&) const override { throw PlaceboError("obj-size"); }
    std::vector<std::string> obj_keys(const JsonValue&) const override { throw PlaceboError("obj-keys"); }
    bool obj_has(const JsonValue&, std::string_view) const override { throw PlaceboError("obj-has"); }

    JsonValue arr_get(const JsonValue&, std::size_t) const override { throw PlaceboError("arr-get"); }
    void arr_append(JsonValue&, JsonValue) const override { throw PlaceboError("arr-append"); }
    void arr_set(JsonValue&, std::size_t, JsonValue) const override { throw PlaceboError("arr-set"); }
    JsonValue arr_remove(JsonValue&, std::size_t) const override { throw PlaceboError("arr-remove"); }
    std::size_t arr_size(const JsonValue&) const override { throw PlaceboError("arr-size"); }

private:
    std::string id_{kPlaceboId};
};

}  // namespace

WrapperHandle placebo_wrapper() {
    static const WrapperHandle instance = std::make_shared<PlaceboWrapper>();
    return instance;
}

WrapperHandle wrap(std::string_view engine_id) {
    if (engine_id == kPlaceboId) return placebo_wrapper();
    return std::make_shared<EngineWrapper>(Reservoir::bundled().engine(engine_id));
}

std::vector<WrapperHandle> all_engine_wrappers() {
    std::vector<WrapperHandle> out;
    for (const auto& id : Reservoir::bundled().ids()) out.push_back(wrap(id));
    return out;
}

std::string_view to_string(Coverage c) { return c == Coverage::Covered ? "COVERED" : "NOT_COVERED"; }

Coverage placebo_covered(const std::function<void(const Wrapper&)>& body) {
    try {
        body(*placebo_wrapper());
    } catch (const PlaceboError&) {
        return Coverage::Covered;
    } catch (const TestDefect&) {
        throw;
    } catch (const std::exception& e) {
        throw TestDefect(e.what());
    }
    return Coverage::NotCovered;
}

}  // namespace divsub
