#pragma once

// Declarative test scripts: the unit of curation, cross-testing and client
// variants. A script is a list of steps over named slots.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "divsub/equivalence.hpp"
#include "divsub/errors.hpp"
#include "divsub/json_value.hpp"

namespace divsub {

/// A recoverable error captured into a slot for a later assert_error step.
struct CapturedError {
    ErrorKind kind = ErrorKind::Parse;
    std::string message;
    std::optional<std::size_t> position;
    friend bool operator==(const CapturedError&, const CapturedError&) = default;
};

/// What a slot can hold: a JSON value, serialized text, or a captured error.
using Datum = std::variant<JsonValue, JsonText, CapturedError>;

std::string describe(const Datum& d);

struct SlotRef {
    std::string name;
    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

/// Step argument: a slot reference, a JSON text, or a literal value.
using Arg = std::variant<SlotRef, JsonText, JsonValue>;

struct LetStep {
    std::string into;
    Arg value;
};

struct CallStep {
    std::string fn;
    std::vector<Arg> args;
    std::optional<std::string> into;
};

struct AssertEqualsStep {
    std::string actual;
    Arg expected;
    EquivalenceMode mode = EquivalenceMode::strict();
};

/// Expects the slot to hold a captured error. `kind`, `position` and
/// `message` are optional payload checks.
struct AssertErrorStep {
    std::string slot;
    std::optional<ErrorKind> kind;
    std::optional<std::size_t> position;
    std::optional<std::string> message;

    bool has_payload() const noexcept { return position.has_value() || message.has_value(); }
};

struct AssertTypeStep {
    std::string slot;
    JsonType type = JsonType::Null;
};

/// Passes iff calling `fn` on `text` raises ParseError.
struct ExpectRejectStep {
    std::string fn;
    std::string text;
};

using Step = std::variant<LetStep, CallStep, AssertEqualsStep, AssertErrorStep, AssertTypeStep, ExpectRejectStep>;

std::string_view step_name(const Step& s);

struct TestScript {
    std::string id;
    std::vector<Step> steps;
};

struct Suite {
    std::string id;
    std::string bridge_id;
    std::vector<TestScript> tests;
};

/// Bridge ops named by call and expect_reject steps.
std::set<std::string> ops_used(const TestScript& script);
std::set<std::string> ops_used(const std::vector<TestScript>& scripts);

/// Throws MalformedScript when a step reads a slot no earlier step wrote,
/// when a name is empty, or when test ids repeat within the suite.
void validate_script(const TestScript& script);
void validate_suite(const Suite& suite);

}  // namespace divsub
