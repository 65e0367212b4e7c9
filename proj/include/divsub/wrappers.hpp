#pragma once

// Facade implementations: one wrapper per reservoir engine plus the placebo.

#include <functional>
#include <string_view>
#include <vector>

#include "divsub/facade.hpp"
#include "divsub/reservoir.hpp"

namespace divsub {

/// Routes every facade operation to one engine. Wrapper id = engine id.
/// Throws UnknownEngine; wrap("PLACEBO") returns the placebo.
WrapperHandle wrap(std::string_view engine_id);

/// Wrappers for every engine of the bundled reservoir, in reservoir order.
std::vector<WrapperHandle> all_engine_wrappers();

/// The placebo handle (shared instance).
WrapperHandle placebo_wrapper();

enum class Coverage { Covered, NotCovered };

std::string_view to_string(Coverage c);

/// Runs `body` against the placebo. COVERED iff a PlaceboError escaped;
/// NOT_COVERED iff the body returned normally. Any other exception is
/// rethrown as TestDefect.
Coverage placebo_covered(const std::function<void(const Wrapper&)>& body);

}  // namespace divsub
