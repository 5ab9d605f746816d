#pragma once

#include <stdexcept>
#include <string>

namespace hysir {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidThresholds : Error { using Error::Error; };
struct IncompatibleInitialState : Error { using Error::Error; };
struct ContractViolation : Error { using Error::Error; };
struct DirectionMismatch : Error { using Error::Error; };
struct InvalidHypotheses : Error { using Error::Error; };
struct NoCertifiedInterval : Error { using Error::Error; };
struct RootBracketFailure : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };

/// Configuration/validation failure with a field-level message.
struct ConfigError : Error {
    ConfigError(const std::string& field, const std::string& message)
        : Error(field + ": " + message), field(field) {}
    std::string field;
};

}  // namespace hysir
