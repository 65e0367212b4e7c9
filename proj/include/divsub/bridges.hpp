#pragma once

// Bridges: legacy-style API surfaces re-expressed as facade calls. Each bridge
// adapts part of its surface; calling the rest raises UnsupportedOp.

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "divsub/facade.hpp"
#include "divsub/script.hpp"

namespace divsub {

enum class OpCategory { Construct, Access, Mutate, Serialize, Parse };

std::string_view to_string(OpCategory c);

/// Implementation of one adapted op. Mutate ops change args[0] in place.
using BridgeFn = std::function<Datum(const Wrapper&, std::vector<Datum>& args)>;

struct BridgeOp {
    std::string name;
    std::size_t arity = 0;
    OpCategory category = OpCategory::Access;
    /// Facade capabilities the op may invoke. Empty for unadapted ops.
    std::vector<FacadeCapability> mapping;
    /// Null for unadapted ops.
    BridgeFn fn;

    bool adapted() const noexcept { return static_cast<bool>(fn); }
};

class BridgeSurface {
public:
    BridgeSurface(std::string id, std::string native_engine, std::vector<BridgeOp> ops);

    const std::string& id() const noexcept { return id_; }
    /// Engine the bridge's legacy library behaves like; its reference wrapper.
    const std::string& native_engine() const noexcept { return native_; }
    /// The whole mimicked legacy surface, adapted or not.
    const std::vector<BridgeOp>& surface() const noexcept { return ops_; }
    std::vector<const BridgeOp*> adapted_ops() const;
    std::size_t adapted_count() const;

    /// Null when the name is not part of the surface.
    const BridgeOp* find(std::string_view name) const;
    bool is_adapted(std::string_view name) const;

private:
    std::string id_;
    std::string native_;
    std::vector<BridgeOp> ops_;
};

namespace bridge_ids {
inline constexpr std::string_view kDocument = "document-style";
inline constexpr std::string_view kDatabind = "databind-style";
inline constexpr std::string_view kValue = "value-style";
}  // namespace bridge_ids

/// The three bundled bridges in a fixed order.
const std::vector<BridgeSurface>& all_bridges();
std::vector<std::string> bridge_id_list();
/// Throws UsageError for an unknown bridge id.
const BridgeSurface& bridge(std::string_view id);

/// Runs an op. UnsupportedOp when it is not adapted (or unknown), UsageError
/// on arity mismatch; ParseError, AccessError and PlaceboError propagate.
Datum bridge_invoke(std::string_view bridge_id, const Wrapper& wrapper, std::string_view op,
                    std::vector<Datum>& args);

struct CapabilityResult {
    std::set<std::string> missing;
    bool ok() const noexcept { return missing.empty(); }
};

/// Ops used by the script that the bridge does not adapt.
CapabilityResult capability_check(std::string_view bridge_id, const TestScript& script);
CapabilityResult capability_check(std::string_view bridge_id, const std::vector<TestScript>& scripts);

namespace bridges {
BridgeSurface make_document_style();
BridgeSurface make_databind_style();
BridgeSurface make_value_style();
}  // namespace bridges

}  // namespace divsub
