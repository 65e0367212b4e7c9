// databind-style: a tree model read and written through a mapper object.
// Lookups of absent members yield Null nodes instead of throwing, and the
// as* conversions never fail.

#include <charconv>

#include "bridge_common.hpp"
#include "divsub/canonical.hpp"
#include "divsub/reservoir.hpp"

namespace divsub::bridges {
namespace {

using C = FacadeCapability;

std::string node_type_name(JsonType t) {
    switch (t) {
        case JsonType::Object: return "OBJECT";
        case JsonType::Array: return "ARRAY";
        case JsonType::String: return "STRING";
        case JsonType::Number: return "NUMBER";
        case JsonType::Boolean: return "BOOLEAN";
        case JsonType::Null: return "NULL";
    }
    return "MISSING";
}

std::string number_text(const NumberRepr& n) {
    switch (n.kind()) {
        case NumberRepr::Kind::ExactInt: return std::to_string(n.as_int());
        case NumberRepr::Kind::Binary32: return shortest_decimal(n.as_float());
        case NumberRepr::Kind::Binary64: break;
    }
    std::string s = shortest_decimal(n.as_double());
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::optional<double> leading_number(const std::string& s) {
    double d = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return d;
}

}  // namespace

BridgeSurface make_databind_style() {
    std::vector<BridgeOp> ops = {
        {"ObjectMapper.readTree", 1, OpCategory::Parse, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return w.parse(text_arg(a, 0)); }},
        {"ObjectMapper.writeValueAsString", 1, OpCategory::Serialize, {C::Serialize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return JsonText{w.serialize(value_arg(a, 0))}; }},
        {"ObjectMapper.createObjectNode", 0, OpCategory::Construct, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>&) -> Datum { return w.parse("{}"); }},
        {"ObjectMapper.createArrayNode", 0, OpCategory::Construct, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>&) -> Datum { return w.parse("[]"); }},
        {"JsonNode.get", 2, OpCategory::Access, {C::TypeOf, C::ObjHas, C::ObjGet, C::ArrSize, C::ArrGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& node = value_arg(a, 0);
             const JsonValue& sel = value_arg(a, 1);
             JsonType t = w.type_of(node);
             if (t == JsonType::Object && sel.is_string()) {
                 return w.obj_has(node, sel.as_string()) ? w.obj_get(node, sel.as_string()) : JsonValue::null();
             }
             if (t == JsonType::Array && sel.is_number()) {
                 std::size_t i = index_arg(a, 1);
                 return i < w.arr_size(node) ? w.arr_get(node, i) : JsonValue::null();
             }
             return JsonValue::null();
         }},
        {"JsonNode.has", 2, OpCategory::Access, {C::TypeOf, C::ObjHas},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& node = value_arg(a, 0);
             return JsonValue(w.type_of(node) == JsonType::Object && w.obj_has(node, key_arg(a, 1)));
         }},
        {"JsonNode.size", 1, OpCategory::Access, {C::TypeOf, C::ObjSize, C::ArrSize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& node = value_arg(a, 0);
             JsonType t = w.type_of(node);
             std::size_t n = t == JsonType::Object ? w.obj_size(node) : t == JsonType::Array ? w.arr_size(node) : 0;
             return JsonValue::integer(static_cast<std::int64_t>(n));
         }},
        {"JsonNode.fieldNames", 1, OpCategory::Access, {C::TypeOf, C::ObjKeys},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& node = value_arg(a, 0);
             if (w.type_of(node) != JsonType::Object) return JsonValue::array();
             return string_list(w.obj_keys(node));
         }},
        {"JsonNode.getNodeType", 1, OpCategory::Access, {C::TypeOf},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue(node_type_name(w.type_of(value_arg(a, 0))));
         }},
        {"JsonNode.asText", 1, OpCategory::Access, {C::TypeOf},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& node = value_arg(a, 0);
             switch (w.type_of(node)) {
                 case JsonType::String: return node;
                 case JsonType::Number: return JsonValue(number_text(node.as_number()));
                 case JsonType::Boolean: return JsonValue(node.as_bool() ? "true" : "false");
                 case JsonType::Null: return JsonValue("null");
                 default: return JsonValue("");
             }
         }},
        {"JsonNode.asLong", 1, OpCategory::Access, {C::TypeOf},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& node = value_arg(a, 0);
             switch (w.type_of(node)) {
                 case JsonType::Number: return JsonValue::integer(truncate_to_long(node.as_number()));
                 case JsonType::Boolean: return JsonValue::integer(node.as_bool() ? 1 : 0);
                 case JsonType::String:
                     if (auto d = leading_number(node.as_string())) {
                         return JsonValue::integer(truncate_to_long(NumberRepr::binary64(*d)));
                     }
                     return JsonValue::integer(0);
                 default: return JsonValue::integer(0);
             }
         }},
        {"JsonNode.asDouble", 1, OpCategory::Access, {C::TypeOf},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& node = value_arg(a, 0);
             switch (w.type_of(node)) {
                 case JsonType::Number: return JsonValue::real(node.as_number().as_double());
                 case JsonType::Boolean: return JsonValue::real(node.as_bool() ? 1.0 : 0.0);
                 case JsonType::String: return JsonValue::real(leading_number(node.as_string()).value_or(0.0));
                 default: return JsonValue::real(0.0);
             }
         }},
        {"JsonNode.deepCopy", 1, OpCategory::Access, {C::DeepCopy},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return w.deep_copy(value_arg(a, 0)); }},
        {"ObjectNode.put", 3, OpCategory::Mutate, {C::ObjSet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue v = value_arg(a, 2);
             w.obj_set(value_arg(a, 0), key_arg(a, 1), std::move(v));
             return value_arg(a, 0);
         }},
        {"ObjectNode.remove", 2, OpCategory::Mutate, {C::ObjHas, C::ObjGet, C::ObjRemove},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue& node = value_arg(a, 0);
             std::string key = key_arg(a, 1);
             if (!w.obj_has(node, key)) return JsonValue::null();
             JsonValue old = w.obj_get(node, key);
             w.obj_remove(node, key);
             return old;
         }},
        {"ArrayNode.add", 2, OpCategory::Mutate, {C::ArrAppend},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue v = value_arg(a, 1);
             w.arr_append(value_arg(a, 0), std::move(v));
             return value_arg(a, 0);
         }},
        {"ArrayNode.set", 3, OpCategory::Mutate, {C::ArrGet, C::ArrSet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue& node = value_arg(a, 0);
             std::size_t i = index_arg(a, 1);
             JsonValue old = w.arr_get(node, i);
             JsonValue v = value_arg(a, 2);
             w.arr_set(node, i, std::move(v));
             return old;
         }},
        {"ArrayNode.remove", 2, OpCategory::Mutate, {C::ArrRemove},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return w.arr_remove(value_arg(a, 0), index_arg(a, 1));
         }},
        // Binding to user-defined host types is out of the facade's reach.
        {"ObjectMapper.readValue", 2, OpCategory::Parse, {}, nullptr},
    };
    return BridgeSurface(std::string(bridge_ids::kDatabind), std::string(engine_ids::kStrictRfc), std::move(ops));
}

}  // namespace divsub::bridges
