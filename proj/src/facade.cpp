#include "divsub/facade.hpp"

namespace divsub {

std::string_view to_string(FacadeCapability c) {
    switch (c) {
        case FacadeCapability::Parse: return "parse";
        case FacadeCapability::Serialize: return "serialize";
        case FacadeCapability::ObjGet: return "obj-get";
        case FacadeCapability::ObjSet: return "obj-set";
        case FacadeCapability::ObjRemove: return "obj-remove";
        case FacadeCapability::ObjSize: return "obj-size";
        case FacadeCapability::ObjKeys: return "obj-keys";
        case FacadeCapability::ObjHas: return "obj-has";
        case FacadeCapability::ArrGet: return "arr-get";
        case FacadeCapability::ArrAppend: return "arr-append";
        case FacadeCapability::ArrSet: return "arr-set";
        case FacadeCapability::ArrRemove: return "arr-remove";
        case FacadeCapability::ArrSize: return "arr-size";
        case FacadeCapability::TypeOf: return "type-of";
        case FacadeCapability::DeepCopy: return "deep-copy";
    }
    return "?";
}

std::optional<FacadeCapability> facade_capability_from_string(std::string_view name) {
    for (auto c : kAllCapabilities) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

JsonValue facade_parse(const Wrapper& factory, std::string_view text) { return factory.parse(text); }

}  // namespace divsub
