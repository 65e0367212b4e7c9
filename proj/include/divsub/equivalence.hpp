#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "divsub/json_value.hpp"

namespace divsub {

inline constexpr double kDefaultEpsilon = 1e-9;

/// How strictly two JSON texts or values are compared.
class EquivalenceMode {
public:
    enum class Kind { Strict, WhitespaceTolerant, KeyOrderTolerant, NumericTolerant, FullRelaxed };

    static EquivalenceMode strict() { return EquivalenceMode(Kind::Strict, kDefaultEpsilon); }
    static EquivalenceMode whitespace_tolerant() { return EquivalenceMode(Kind::WhitespaceTolerant, kDefaultEpsilon); }
    static EquivalenceMode key_order_tolerant() { return EquivalenceMode(Kind::KeyOrderTolerant, kDefaultEpsilon); }
    /// Throws UsageError unless epsilon > 0.
    static EquivalenceMode numeric_tolerant(double epsilon = kDefaultEpsilon);
    static EquivalenceMode full_relaxed(double epsilon = kDefaultEpsilon);

    Kind kind() const noexcept { return kind_; }
    double epsilon() const noexcept { return epsilon_; }

    bool ignores_whitespace() const noexcept { return kind_ != Kind::Strict; }
    bool ignores_key_order() const noexcept {
        return kind_ == Kind::KeyOrderTolerant || kind_ == Kind::FullRelaxed;
    }
    bool tolerates_numbers() const noexcept {
        return kind_ == Kind::NumericTolerant || kind_ == Kind::FullRelaxed;
    }

    /// True when every pair equivalent under *this is equivalent under `other`.
    bool implies(const EquivalenceMode& other) const noexcept;

    /// Position on the relaxation ladder: STRICT=0 ... FULL_RELAXED=4.
    int rank() const noexcept { return static_cast<int>(kind_); }

    friend bool operator==(const EquivalenceMode&, const EquivalenceMode&) = default;

private:
    EquivalenceMode(Kind k, double eps) : kind_(k), epsilon_(eps) {}
    Kind kind_;
    double epsilon_;
};

std::string to_string(const EquivalenceMode& m);
/// Accepts STRICT, WHITESPACE_TOLERANT, KEY_ORDER_TOLERANT, NUMERIC_TOLERANT, FULL_RELAXED.
std::optional<EquivalenceMode> equivalence_mode_from_string(std::string_view name,
                                                            double epsilon = kDefaultEpsilon);

/// Number comparison used by the tolerant modes, across kinds:
/// |a-b| <= epsilon * max(|a|,|b|), evaluated in long double.
bool numbers_close(const NumberRepr& a, const NumberRepr& b, double epsilon);

bool json_equivalent(const JsonValue& a, const JsonValue& b, const EquivalenceMode& mode);

/// Texts are checked against the reference grammar first (ParseError when
/// ill-formed). STRICT compares bytes, WHITESPACE_TOLERANT compares the token
/// streams, the remaining modes compare the parsed values.
bool json_equivalent(std::string_view a, std::string_view b, const EquivalenceMode& mode);
bool json_equivalent(const JsonText& a, const JsonText& b, const EquivalenceMode& mode);

/// Mixed operands: the text is parsed with the reference reader.
bool json_equivalent(const JsonText& a, const JsonValue& b, const EquivalenceMode& mode);
bool json_equivalent(const JsonValue& a, const JsonText& b, const EquivalenceMode& mode);

/// Removes whitespace outside string literals. Input must already be well-formed.
std::string strip_insignificant_whitespace(std::string_view text);

}  // namespace divsub
