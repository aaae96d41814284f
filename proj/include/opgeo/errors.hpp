#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace opgeo {

// Invalid user input or violated operation precondition. CLI maps this to
// exit code 2 with a machine-readable error code.
class InvalidInput : public std::runtime_error {
public:
    InvalidInput(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Internal numerical failure: a computation could not reach its contract
// (e.g. an optimizer exhausting its budget without improving past zero).
// CLI maps this to exit code 1.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace opgeo
