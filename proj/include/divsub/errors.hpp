#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace divsub {

/// Coarse classification of recoverable errors, used by script assertions.
enum class ErrorKind {
    Parse,    ///< input text rejected by an engine
    Access,   ///< wrong JSON type, missing member, index out of range
    Usage,    ///< programming/configuration error in the framework itself
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    explicit ParseError(std::string message, std::optional<std::size_t> position = std::nullopt)
        : Error(ErrorKind::Parse, message), message_(std::move(message)), position_(position) {}

    const std::string& message() const noexcept { return message_; }
    std::optional<std::size_t> position() const noexcept { return position_; }

private:
    std::string message_;
    std::optional<std::size_t> position_;
};

/// Type mismatch, missing member or bad index on a facade/bridge operation.
class AccessError : public Error {
public:
    explicit AccessError(const std::string& what) : Error(ErrorKind::Access, what) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class UnknownEngine : public UsageError {
public:
    explicit UnknownEngine(const std::string& id) : UsageError("unknown engine: " + id) {}
};

class UnsupportedOp : public UsageError {
public:
    UnsupportedOp(const std::string& bridge, const std::string& op)
        : UsageError("bridge " + bridge + " does not adapt " + op), op_(op) {}
    const std::string& op() const noexcept { return op_; }

private:
    std::string op_;
};

class UnsupportedValue : public UsageError {
public:
    explicit UnsupportedValue(const std::string& what) : UsageError(what) {}
};

class OutOfRange : public UsageError {
public:
    explicit OutOfRange(const std::string& literal)
        : UsageError("no number kind can represent " + literal) {}
};

class MalformedScript : public UsageError {
public:
    explicit MalformedScript(const std::string& what) : UsageError("malformed script: " + what) {}
};

class MissingBridgeData : public UsageError {
public:
    explicit MissingBridgeData(const std::string& what) : UsageError(what) {}
};

class SanityViolation : public UsageError {
public:
    explicit SanityViolation(const std::string& what) : UsageError("curation sanity re-run: " + what) {}
};

/// A test body failed for a reason unrelated to library substitution.
class TestDefect : public UsageError {
public:
    explicit TestDefect(const std::string& what) : UsageError("test defect: " + what) {}
};

/// Raised by every operation of the placebo wrapper.
///
/// Deliberately outside the divsub::Error hierarchy: code that catches
/// recoverable errors (assertion helpers, AssertError steps) must never
/// swallow it.
class PlaceboError : public std::exception {
public:
    explicit PlaceboError(std::string operation)
        : what_("placebo wrapper invoked: " + operation), operation_(std::move(operation)) {}
    const char* what() const noexcept override { return what_.c_str(); }
    const std::string& operation() const noexcept { return operation_; }

private:
    std::string what_;
    std::string operation_;
};

}  // namespace divsub
