#include "divsub/bridges.hpp"

#include <algorithm>

#include "divsub/errors.hpp"

namespace divsub {

std::string_view to_string(OpCategory c) {
    switch (c) {
        case OpCategory::Construct: return "construct";
        case OpCategory::Access: return "access";
        case OpCategory::Mutate: return "mutate";
        case OpCategory::Serialize: return "serialize";
        case OpCategory::Parse: return "parse";
    }
    return "?";
}

BridgeSurface::BridgeSurface(std::string id, std::string native_engine, std::vector<BridgeOp> ops)
    : id_(std::move(id)), native_(std::move(native_engine)), ops_(std::move(ops)) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (ops_[i].name == ops_[j].name) throw UsageError(id_ + ": duplicate op " + ops_[i].name);
        }
        if (ops_[i].adapted() == ops_[i].mapping.empty()) {
            throw UsageError(id_ + ": op " + ops_[i].name + " has an inconsistent facade mapping");
        }
    }
    if (adapted_count() == ops_.size()) throw UsageError(id_ + ": adapted ops must be a strict subset");
}

std::vector<const BridgeOp*> BridgeSurface::adapted_ops() const {
    std::vector<const BridgeOp*> out;
    for (const auto& op : ops_) {
        if (op.adapted()) out.push_back(&op);
    }
    return out;
}

std::size_t BridgeSurface::adapted_count() const {
    return static_cast<std::size_t>(std::count_if(ops_.begin(), ops_.end(), [](const BridgeOp& o) { return o.adapted(); }));
}

const BridgeOp* BridgeSurface::find(std::string_view name) const {
    for (const auto& op : ops_) {
        if (op.name == name) return &op;
    }
    return nullptr;
}

bool BridgeSurface::is_adapted(std::string_view name) const {
    const BridgeOp* op = find(name);
    return op != nullptr && op->adapted();
}

const std::vector<BridgeSurface>& all_bridges() {
    static const std::vector<BridgeSurface> instance = [] {
        std::vector<BridgeSurface> v;
        v.push_back(bridges::make_document_style());
        v.push_back(bridges::make_databind_style());
        v.push_back(bridges::make_value_style());
        return v;
    }();
    return instance;
}

std::vector<std::string> bridge_id_list() {
    std::vector<std::string> out;
    for (const auto& b : all_bridges()) out.push_back(b.id());
    return out;
}

const BridgeSurface& bridge(std::string_view id) {
    for (const auto& b : all_bridges()) {
        if (b.id() == id) return b;
    }
    throw UsageError("unknown bridge: " + std::string(id));
}

Datum bridge_invoke(std::string_view bridge_id, const Wrapper& wrapper, std::string_view op_name,
                    std::vector<Datum>& args) {
    const BridgeSurface& b = bridge(bridge_id);
    const BridgeOp* op = b.find(op_name);
    if (op == nullptr || !op->adapted()) throw UnsupportedOp(b.id(), std::string(op_name));
    if (args.size() != op->arity) {
        throw UsageError(op->name + " takes " + std::to_string(op->arity) + " arguments, got " +
                         std::to_string(args.size()));
    }
    return op->fn(wrapper, args);
}

CapabilityResult capability_check(std::string_view bridge_id, const TestScript& script) {
    validate_script(script);
    const BridgeSurface& b = bridge(bridge_id);
    CapabilityResult r;
    for (const auto& name : ops_used(script)) {
        if (!b.is_adapted(name)) r.missing.insert(name);
    }
    return r;
}

CapabilityResult capability_check(std::string_view bridge_id, const std::vector<TestScript>& scripts) {
    CapabilityResult r;
    for (const auto& s : scripts) r.missing.merge(capability_check(bridge_id, s).missing);
    return r;
}

}  // namespace divsub
