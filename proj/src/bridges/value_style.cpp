// value-style: parse to generic maps and lists. JSONValue.parse swallows
// syntax errors and returns null; JSONParser.parse reports them.

#include "bridge_common.hpp"
#include "divsub/reservoir.hpp"

namespace divsub::bridges {
namespace {

using C = FacadeCapability;

JsonValue get_or_null(const Wrapper& w, const JsonValue& obj, const std::string& key) {
    return w.obj_has(obj, key) ? w.obj_get(obj, key) : JsonValue::null();
}

}  // namespace

BridgeSurface make_value_style() {
    std::vector<BridgeOp> ops = {
        {"JSONValue.parse", 1, OpCategory::Parse, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             try {
                 return w.parse(text_arg(a, 0));
             } catch (const ParseError&) {
                 return JsonValue::null();
             }
         }},
        {"JSONParser.parse", 1, OpCategory::Parse, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return w.parse(text_arg(a, 0)); }},
        {"JSONValue.toJSONString", 1, OpCategory::Serialize, {C::Serialize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return JsonText{w.serialize(value_arg(a, 0))}; }},
        {"JSONObject.new", 0, OpCategory::Construct, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>&) -> Datum { return w.parse("{}"); }},
        {"JSONObject.get", 2, OpCategory::Access, {C::ObjHas, C::ObjGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return get_or_null(w, value_arg(a, 0), key_arg(a, 1)); }},
        {"JSONObject.put", 3, OpCategory::Mutate, {C::ObjHas, C::ObjGet, C::ObjSet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue& obj = value_arg(a, 0);
             std::string key = key_arg(a, 1);
             JsonValue old = get_or_null(w, obj, key);
             JsonValue v = value_arg(a, 2);
             w.obj_set(obj, key, std::move(v));
             return old;
         }},
        {"JSONObject.remove", 2, OpCategory::Mutate, {C::ObjHas, C::ObjGet, C::ObjRemove},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue& obj = value_arg(a, 0);
             std::string key = key_arg(a, 1);
             JsonValue old = get_or_null(w, obj, key);
             w.obj_remove(obj, key);
             return old;
         }},
        {"JSONObject.size", 1, OpCategory::Access, {C::ObjSize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue::integer(static_cast<std::int64_t>(w.obj_size(value_arg(a, 0))));
         }},
        {"JSONObject.containsKey", 2, OpCategory::Access, {C::ObjHas},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue(w.obj_has(value_arg(a, 0), key_arg(a, 1)));
         }},
        {"JSONObject.keySet", 1, OpCategory::Access, {C::ObjKeys},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return string_list(w.obj_keys(value_arg(a, 0))); }},
        {"JSONObject.toJSONString", 1, OpCategory::Serialize, {C::Serialize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return JsonText{w.serialize(value_arg(a, 0))}; }},
        {"JSONArray.new", 0, OpCategory::Construct, {C::Parse},
         [](const Wrapper& w, std::vector<Datum>&) -> Datum { return w.parse("[]"); }},
        {"JSONArray.get", 2, OpCategory::Access, {C::ArrGet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return w.arr_get(value_arg(a, 0), index_arg(a, 1)); }},
        {"JSONArray.add", 2, OpCategory::Mutate, {C::ArrAppend},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue v = value_arg(a, 1);
             w.arr_append(value_arg(a, 0), std::move(v));
             return JsonValue(true);
         }},
        {"JSONArray.set", 3, OpCategory::Mutate, {C::ArrGet, C::ArrSet},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             JsonValue& arr = value_arg(a, 0);
             std::size_t i = index_arg(a, 1);
             JsonValue old = w.arr_get(arr, i);
             JsonValue v = value_arg(a, 2);
             w.arr_set(arr, i, std::move(v));
             return old;
         }},
        {"JSONArray.size", 1, OpCategory::Access, {C::ArrSize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum {
             return JsonValue::integer(static_cast<std::int64_t>(w.arr_size(value_arg(a, 0))));
         }},
        {"JSONArray.remove", 2, OpCategory::Mutate, {C::ArrRemove},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return w.arr_remove(value_arg(a, 0), index_arg(a, 1)); }},
        {"JSONArray.toJSONString", 1, OpCategory::Serialize, {C::Serialize},
         [](const Wrapper& w, std::vector<Datum>& a) -> Datum { return JsonText{w.serialize(value_arg(a, 0))}; }},
        // SAX-style callbacks have no facade counterpart.
        {"JSONParser.parseWithHandler", 2, OpCategory::Parse, {}, nullptr},
    };
    return BridgeSurface(std::string(bridge_ids::kValue), std::string(engine_ids::kReference), std::move(ops));
}

}  // namespace divsub::bridges
