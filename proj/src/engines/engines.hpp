#pragma once

// Factories for the bundled engines. Each engine lives in its own translation
// unit and owns its tokenizer; only number typing (detect_number) and UTF-8
// encoding are shared.

#include <memory>

#include "divsub/reservoir.hpp"

namespace divsub::engines {

std::unique_ptr<Engine> make_strict_rfc();
std::unique_ptr<Engine> make_lenient();
std::unique_ptr<Engine> make_ecma5ish();
std::unique_ptr<Engine> make_no_unicode();
std::unique_ptr<Engine> make_float_first();
std::unique_ptr<Engine> make_reference();

}  // namespace divsub::engines
