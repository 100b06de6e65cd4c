#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace piezoharvest {

/// Argument outside the mathematical domain of an operation (non-positive
/// frequency, negative magnitude, unreachable target voltage, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid configuration of an otherwise valid call (integration step too
/// coarse, unknown sweep parameter, malformed scenario file).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One or more invariants of a parameter set are violated. Every violation is
/// kept so callers can report them all at once.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Calibration did not converge; carries the best residual reached.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Two curves cannot be compared (empty, or no overlapping time span).
class ComparisonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace piezoharvest
