#pragma once

// The reservoir: self-contained JSON engines with deliberately different
// behavior on ill-formed and edge-case input.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "divsub/json_value.hpp"

namespace divsub {

/// Candidate representations tried, in order, when an engine types a number
/// literal. Int32Range is an ExactInt restricted to [-2^31, 2^31-1].
enum class NumberKind { Int32Range, Int64, Float32, Float64 };

std::string_view to_string(NumberKind k);

struct EngineProfile {
    std::string engine_id;
    bool accepts_trailing_commas = false;
    bool accepts_single_quotes = false;
    bool accepts_unquoted_keys = false;
    bool rejects_digit_leading_keys = false;
    bool supports_unicode_escapes = true;
    std::vector<NumberKind> number_detection_order{NumberKind::Int64, NumberKind::Float64};
    bool reports_error_position = true;

    /// Throws UsageError when the detection order is empty or repeats a kind.
    void validate() const;

    /// A float kind narrower than binary64 is tried before binary64, so
    /// well-formed numbers may lose precision.
    bool precision_limited() const;
};

struct Accepted {
    JsonValue value;
};

struct Rejected {
    std::optional<std::size_t> position;
    std::string message;
};

class EngineOutcome {
public:
    EngineOutcome(Accepted a) : v_(std::move(a)) {}
    EngineOutcome(Rejected r) : v_(std::move(r)) {}

    bool accepted() const noexcept { return std::holds_alternative<Accepted>(v_); }
    const JsonValue& value() const { return std::get<Accepted>(v_).value; }
    const Rejected& rejection() const { return std::get<Rejected>(v_); }

private:
    std::variant<Accepted, Rejected> v_;
};

/// Base class of every reservoir engine. Implementations are stateless.
class Engine {
public:
    explicit Engine(EngineProfile profile);
    virtual ~Engine() = default;
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const EngineProfile& profile() const noexcept { return profile_; }
    const std::string& id() const noexcept { return profile_.engine_id; }

    /// Never throws for bad input: rejection is reported as data.
    EngineOutcome parse(std::string_view text) const;
    std::string serialize(const JsonValue& v) const;

    /// How the engine's object container stores a new or replaced member.
    virtual void insert_member(JsonObject& obj, std::string key, JsonValue value) const;

protected:
    /// Throws ParseError on rejection.
    virtual JsonValue do_parse(std::string_view text) const = 0;
    virtual std::string do_serialize(const JsonValue& v) const = 0;

private:
    EngineProfile profile_;
};

class Reservoir {
public:
    /// The six bundled engines, in a fixed order.
    static const Reservoir& bundled();

    explicit Reservoir(std::vector<std::unique_ptr<Engine>> engines);

    /// Throws UnknownEngine.
    const Engine& engine(std::string_view id) const;
    bool contains(std::string_view id) const;
    std::vector<std::string> ids() const;
    std::size_t size() const noexcept { return engines_.size(); }

private:
    std::vector<std::unique_ptr<Engine>> engines_;
};

namespace engine_ids {
inline constexpr std::string_view kStrictRfc = "strict-rfc";
inline constexpr std::string_view kLenient = "lenient";
inline constexpr std::string_view kEcma5ish = "ecma5ish";
inline constexpr std::string_view kNoUnicode = "no-unicode";
inline constexpr std::string_view kFloatFirst = "float-first";
inline constexpr std::string_view kReference = "reference";
}  // namespace engine_ids

EngineOutcome engine_parse(std::string_view engine_id, std::string_view text);
std::string engine_serialize(std::string_view engine_id, const JsonValue& v);

/// Types a JSON number literal following the profile's detection order.
/// Throws OutOfRange when no kind accepts the literal and UsageError when the
/// literal is not a JSON number.
NumberRepr detect_number(const EngineProfile& profile, std::string_view literal);

/// True when the well-formed text lies inside the engine's documented
/// restrictions: no \u escapes for engines without escape support, no
/// digit-leading member names for engines that reject them, and, for
/// precision-limited engines, every number literal survives detection within
/// the default tolerance.
bool admits(const EngineProfile& profile, std::string_view text);

/// Number literals of a well-formed text, in document order.
std::vector<std::string> number_literals(std::string_view text);

/// True when a string literal of the text contains a \u escape.
bool contains_unicode_escape(std::string_view text);

}  // namespace divsub
