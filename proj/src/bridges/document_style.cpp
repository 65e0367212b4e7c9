// document-style: a DOM surface with JSONObject/JSONArray classes whose typed
// getters throw on missing members and type mismatches.

#include <limits>

#include "bridge_common.hpp"
#include "divsub/reservoir.hpp"

namespace divsub::bridges {
namespace {

using C = FacadeCapability;

JsonValue member(const Wrapper& w, const std::vector<Datum>& args) {
    return w.obj_get(value_arg(args, 0), key_arg(args, 1));
}

JsonValue element(const Wrapper& w, const std::vector<Datum>& args) {
    return w.arr_get(value_arg(args, 0), index_arg(args, 1));
}

const NumberRepr& number_of(const JsonValue& v, std::string_view what) {
    if (!v.is_number()) throw AccessError(std::string(what) + " is not a number");
    return v.as_number();
}

JsonValue as_int(const JsonValue& v, std::string_view what) {
    std::int64_t n = truncate_to_long(number_of(v, what));
    if (n < std::numeric_limits<std::int32_t>::min() || n > std::numeric_limits<std::int32_t>::max()) {
        throw AccessError(std::string(what) + " is not an int");
    }
    return JsonValue::integer(n);
}

JsonValue as_string(const JsonValue& v, std::string_view what) {
    if (!v.is_string()) throw AccessError(std::string(what) + " is not a string");
    return v;
}

JsonValue typed(const JsonValue& v, JsonType t, std::string_view what) {
    if (v.type() != t) throw AccessError(std::string(what) + " is not a " + std::string(to_string(t)));
    return v;
}

JsonValue parse_as(const Wrapper& w, const std::vector<Datum>& args, JsonType t) {
    JsonValue v = w.parse(text_arg(args, 0));
    if (v.type() != t) {
        throw ParseError(t == JsonType::Object ? "A JSONObject text must begin with '{'"
                                               : "A JSONArray text must start with '['",
                         std::size_t{0});
    }
    return v;
}

}  // namespace

BridgeSurface make_document_style() {
    std::vector<BridgeOp> ops = {
        {"JSONObject.new", 0, OpCategory::Construct, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>&) -> Datum { return w.parse("{}"); }},
        {"JSONObject.parse", 1, OpCategory::Parse, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return parse_as(w, a, JsonType::Object); }},
        {"JSONObject.get", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return member(w, a); }},
        {"JSONObject.opt", 2, OpCategory::Access, {C::ObjHas, C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& obj = value_arg(a, 0);
             std::string key = key_arg(a, 1);
             return w.obj_has(obj, key) ? w.obj_get(obj, key) : JsonValue::null();
         }},
        {"JSONObject.getInt", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return as_int(member(w, a), "member"); }},
        {"JSONObject.getLong", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue::integer(truncate_to_long(number_of(member(w, a), "member")));
         }},
        {"JSONObject.getDouble", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue::real(number_of(member(w, a), "member").as_double());
         }},
        {"JSONObject.getString", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return as_string(member(w, a), "member"); }},
        {"JSONObject.getBoolean", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return typed(member(w, a), JsonType::Boolean, "member");
         }},
        {"JSONObject.getJSONObject", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return typed(member(w, a), JsonType::Object, "member");
         }},
        {"JSONObject.getJSONArray", 2, OpCategory::Access, {C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return typed(member(w, a), JsonType::Array, "member");
         }},
        {"JSONObject.has", 2, OpCategory::Access, {C::ObjHas},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue(w.obj_has(value_arg(a, 0), key_arg(a, 1)));
         }},
        {"JSONObject.put", 3, OpCategory::Mutate, {C::ObjSet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue v = value_arg(a, 2);
             w.obj_set(value_arg(a, 0), key_arg(a, 1), std::move(v));
             return value_arg(a, 0);
         }},
        {"JSONObject.remove", 2, OpCategory::Mutate, {C::ObjHas, C::ObjGet, C::ObjRemove},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue& obj = value_arg(a, 0);
             std::string key = key_arg(a, 1);
             if (!w.obj_has(obj, key)) return JsonValue::null();
             JsonValue old = w.obj_get(obj, key);
             w.obj_remove(obj, key);
             return old;
         }},
        {"JSONObject.length", 1, OpCategory::Access, {C::ObjSize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue::integer(static_cast<std::int64_t>(w.obj_size(value_arg(a, 0))));
         }},
        {"JSONObject.keySet", 1, OpCategory::Access, {C::ObjKeys},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return string_list(w.obj_keys(value_arg(a, 0))); }},
        {"JSONObject.isNull", 2, OpCategory::Access, {C::ObjHas, C::ObjGet, C::TypeOf},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             const JsonValue& obj = value_arg(a, 0);
             std::string key = key_arg(a, 1);
             return JsonValue(!w.obj_has(obj, key) || w.type_of(w.obj_get(obj, key)) == JsonType::Null);
         }},
        {"JSONObject.toString", 1, OpCategory::Serialize, {C::Serialize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonText{w.serialize(typed(value_arg(a, 0), JsonType::Object, "receiver"))};
         }},
        {"JSONArray.new", 0, OpCategory::Construct, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>&) -> Datum { return w.parse("[]"); }},
        {"JSONArray.parse", 1, OpCategory::Parse, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return parse_as(w, a, JsonType::Array); }},
        {"JSONArray.get", 2, OpCategory::Access, {C::ArrGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return element(w, a); }},
        {"JSONArray.getInt", 2, OpCategory::Access, {C::ArrGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return as_int(element(w, a), "element"); }},
        {"JSONArray.getString", 2, OpCategory::Access, {C::ArrGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return as_string(element(w, a), "element"); }},
        {"JSONArray.put", 2, OpCategory::Mutate, {C::ArrAppend},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue v = value_arg(a, 1);
             w.arr_append(value_arg(a, 0), std::move(v));
             return value_arg(a, 0);
         }},
        {"JSONArray.length", 1, OpCategory::Access, {C::ArrSize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue::integer(static_cast<std::int64_t>(w.arr_size(value_arg(a, 0))));
         }},
        {"JSONArray.remove", 2, OpCategory::Mutate, {C::ArrRemove},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return w.arr_remove(value_arg(a, 0), index_arg(a, 1));
         }},
        {"JSONArray.toString", 1, OpCategory::Serialize, {C::Serialize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonText{w.serialize(typed(value_arg(a, 0), JsonType::Array, "receiver"))};
         }},
        // Tokenizer-level access is not part of the adapted surface.
        {"JSONTokener.nextValue", 1, OpCategory::Parse, {}, nullptr},
    };
    return BridgeSurface(std::string(bridge_ids::kDocument), std::string(engine_ids::kLenient), std::move(ops));
}

}  // namespace divsub::bridges
