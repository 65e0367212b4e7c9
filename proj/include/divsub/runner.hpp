#pragma once

// Executes test scripts through a bridge against one wrapper.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "divsub/facade.hpp"
#include "divsub/script.hpp"

namespace divsub {

enum class FailureReason {
    Assertion,      ///< an assert_* or expect_reject step did not hold
    UncaughtError,  ///< a call raised a parse/access error nobody asserted
    Unsupported,    ///< the op is not adapted, or a usage error occurred
    Placebo,        ///< the placebo wrapper was reached
};

std::string_view to_string(FailureReason r);

struct TestOutcome {
    bool passed = true;
    std::optional<std::size_t> failed_step;
    FailureReason reason = FailureReason::Assertion;
    std::string detail;
    /// For failed assert_equals / assert_error steps: the slot contents and
    /// the resolved expectation.
    std::optional<Datum> actual;
    std::optional<Datum> expected;
};

/// Raised by execute_script on the first failing step. Not a divsub::Error.
class ScriptFailure : public std::runtime_error {
public:
    explicit ScriptFailure(TestOutcome outcome)
        : std::runtime_error(outcome.detail), outcome_(std::move(outcome)) {}
    const TestOutcome& outcome() const noexcept { return outcome_; }

private:
    TestOutcome outcome_;
};

/// Runs every step; throws ScriptFailure on failure. PlaceboError propagates
/// unchanged so that coverage checks can observe it.
void execute_script(const TestScript& script, std::string_view bridge_id, const Wrapper& wrapper);

/// Runs the script and reports the outcome as data; never throws for test
/// failures, placebo errors included.
TestOutcome run_script(const TestScript& script, std::string_view bridge_id, const Wrapper& wrapper);

/// Equivalence between a slot value and an expectation, across Datum kinds.
/// Captured errors are never equivalent to anything.
bool datum_equivalent(const Datum& actual, const Datum& expected, const EquivalenceMode& mode);

}  // namespace divsub
