#pragma once

#include <stdexcept>
#include <string>

namespace vortexlab {

/// Invalid configuration or violated precondition (exit code 2 at the CLI).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for all runtime numerical aborts (exit code 3 at the CLI).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CflError : public NumericalError {
public:
    CflError(const std::string& what, double admissible_dt)
        : NumericalError(what), admissible_dt_(admissible_dt) {}
    double admissible_dt() const noexcept { return admissible_dt_; }

private:
    double admissible_dt_;
};

class SignViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CollisionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonFiniteError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateComponent : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace vortexlab
