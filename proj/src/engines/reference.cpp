// reference: the engine-independent reader and canonical writer exposed as a
// reservoir member, so that curation can run suites against it.

#include "divsub/canonical.hpp"
#include "engines/engines.hpp"

namespace divsub::engines {
namespace {

class ReferenceEngine final : public Engine {
public:
    ReferenceEngine() : Engine(EngineProfile{std::string(engine_ids::kReference)}) {}

protected:
    JsonValue do_parse(std::string_view text) const override { return parse_reference(text); }
    std::string do_serialize(const JsonValue& v) const override { return facade_serialize(v); }
};

}  // namespace

std::unique_ptr<Engine> make_reference() { return std::make_unique<ReferenceEngine>(); }

}  // namespace divsub::engines
