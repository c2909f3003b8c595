#pragma once

#include <stdexcept>
#include <string>

namespace ringdm {

/// Invalid configuration file, flag, or parameter set. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Physical parameter outside its admissible range (e.g. eccentricity >= 1).
struct ParameterError : ConfigError {
    explicit ParameterError(const std::string& msg) : ConfigError(msg) {}
};

/// Two objects that must live on the same grid do not.
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

/// Field with zero norm where a normalizable one is required.
struct DegenerateFieldError : std::runtime_error {
    explicit DegenerateFieldError(const std::string& msg) : std::runtime_error(msg) {}
};

/// NaN/Inf or norm blow-up during propagation. CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Imaginary-time iteration did not converge within the step budget.
struct ConvergenceError : NumericalError {
    explicit ConvergenceError(const std::string& msg) : NumericalError(msg) {}
};

/// Feature detection (revival peak, spectral fringe) found nothing. CLI exit code 4.
struct DetectionError : std::runtime_error {
    explicit DetectionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Coordinate or time outside the covered range.
struct RangeError : std::out_of_range {
    explicit RangeError(const std::string& msg) : std::out_of_range(msg) {}
};

}  // namespace ringdm
