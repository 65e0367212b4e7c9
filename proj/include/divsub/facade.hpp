#pragma once

// The facade: the abstract API every bridge calls and every wrapper
// implements. Three interfaces (factory, object, array) with 15 operations.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divsub/json_value.hpp"

namespace divsub {

enum class FacadeCapability {
    Parse,
    Serialize,
    ObjGet,
    ObjSet,
    ObjRemove,
    ObjSize,
    ObjKeys,
    ObjHas,
    ArrGet,
    ArrAppend,
    ArrSet,
    ArrRemove,
    ArrSize,
    TypeOf,
    DeepCopy,
};

inline constexpr std::array<FacadeCapability, 15> kAllCapabilities = {
    FacadeCapability::Parse,     FacadeCapability::Serialize, FacadeCapability::ObjGet,
    FacadeCapability::ObjSet,    FacadeCapability::ObjRemove, FacadeCapability::ObjSize,
    FacadeCapability::ObjKeys,   FacadeCapability::ObjHas,    FacadeCapability::ArrGet,
    FacadeCapability::ArrAppend, FacadeCapability::ArrSet,    FacadeCapability::ArrRemove,
    FacadeCapability::ArrSize,   FacadeCapability::TypeOf,    FacadeCapability::DeepCopy,
};

std::string_view to_string(FacadeCapability c);
std::optional<FacadeCapability> facade_capability_from_string(std::string_view name);

/// Factory side of the facade: creating values from text and back.
class JsonFactory {
public:
    virtual ~JsonFactory() = default;
    virtual JsonValue parse(std::string_view text) const = 0;
    virtual std::string serialize(const JsonValue& v) const = 0;
    virtual JsonType type_of(const JsonValue& v) const = 0;
    virtual JsonValue deep_copy(const JsonValue& v) const = 0;
};

class JsonObjectApi {
public:
    virtual ~JsonObjectApi() = default;
    /// Throws AccessError when the member is absent; a JSON null member yields Null.
    virtual JsonValue obj_get(const JsonValue& obj, std::string_view key) const = 0;
    virtual void obj_set(JsonValue& obj, std::string key, JsonValue value) const = 0;
    virtual bool obj_remove(JsonValue& obj, std::string_view key) const = 0;
    virtual std::size_t obj_size(const JsonValue& obj) const = 0;
    virtual std::vector<std::string> obj_keys(const JsonValue& obj) const = 0;
    virtual bool obj_has(const JsonValue& obj, std::string_view key) const = 0;
};

class JsonArrayApi {
public:
    virtual ~JsonArrayApi() = default;
    virtual JsonValue arr_get(const JsonValue& arr, std::size_t index) const = 0;
    virtual void arr_append(JsonValue& arr, JsonValue value) const = 0;
    virtual void arr_set(JsonValue& arr, std::size_t index, JsonValue value) const = 0;
    virtual JsonValue arr_remove(JsonValue& arr, std::size_t index) const = 0;
    virtual std::size_t arr_size(const JsonValue& arr) const = 0;
};

/// A concrete provider of the facade. Stateless after construction.
class Wrapper : public JsonFactory, public JsonObjectApi, public JsonArrayApi {
public:
    virtual const std::string& id() const noexcept = 0;
    /// Engine backing the wrapper, or "PLACEBO".
    virtual const std::string& engine_id() const noexcept = 0;
    virtual bool is_placebo() const noexcept { return false; }
    virtual std::vector<FacadeCapability> implemented_capabilities() const {
        return {kAllCapabilities.begin(), kAllCapabilities.end()};
    }
};

using WrapperHandle = std::shared_ptr<const Wrapper>;

inline constexpr std::string_view kPlaceboId = "PLACEBO";

/// Parses through the given wrapper. ParseError on rejection, PlaceboError
/// from the placebo.
JsonValue facade_parse(const Wrapper& factory, std::string_view text);

}  // namespace divsub
