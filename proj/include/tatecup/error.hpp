#pragma once

#include <stdexcept>
#include <string>

namespace tatecup {

// Malformed input: dimension mismatches, dangling names, syntax errors.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A mathematical invariant failed at construction or verification time.
// `witness` names the first offending datum in a stable textual form.
class CheckFailure : public std::runtime_error {
public:
    CheckFailure(const std::string& what, std::string witness)
        : std::runtime_error(what + (witness.empty() ? "" : " [" + witness + "]")),
          message_(what),
          witness_(std::move(witness)) {}
    const std::string& message() const noexcept { return message_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string message_;
    std::string witness_;
};

// A computation would exceed the configured matrix-column cap.
class ResourceCapError : public std::runtime_error {
public:
    ResourceCapError(const std::string& what, std::size_t estimate)
        : std::runtime_error(what + " (estimated columns: " + std::to_string(estimate) + ")"),
          estimate_(estimate) {}
    std::size_t estimate() const noexcept { return estimate_; }

private:
    std::size_t estimate_;
};

// Something the mathematics guarantees did not happen; indicates a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace tatecup
