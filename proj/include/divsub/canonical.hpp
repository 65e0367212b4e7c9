#pragma once

// Engine-independent text forms of the facade: the minimal serializer and the
// RFC 8259 reference reader used by equivalence checks and fixture loading.

#include <string>
#include <string_view>

#include "divsub/json_value.hpp"

namespace divsub {

/// Minimal RFC 8259 text: no insignificant whitespace, members in stored
/// order, non-ASCII emitted as raw UTF-8, numbers in shortest round-trip form.
/// Binary kinds always carry a fraction or exponent ("2.0", not "2").
std::string facade_serialize(const JsonValue& v);

/// Strict RFC 8259 reader. Integers that fit in 64 bits become ExactInt,
/// everything else Binary64. Lone surrogate escapes decode to U+FFFD.
/// Throws ParseError with the byte offset of the offending input.
JsonValue parse_reference(std::string_view text, std::size_t max_depth = 512);

/// True when the text conforms to the RFC 8259 grammar (via parse_reference).
bool is_reference_wellformed(std::string_view text);

/// Shortest decimal that reads back to the same binary value.
std::string shortest_decimal(double v);
std::string shortest_decimal(float v);

/// Appends the UTF-8 encoding of a Unicode scalar value.
void append_utf8(std::string& out, char32_t cp);

/// Appends `s` as a quoted JSON string using the minimal escape set.
void append_quoted(std::string& out, std::string_view s);

}  // namespace divsub
