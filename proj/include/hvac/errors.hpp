#ifndef HVAC_ERRORS_HPP
#define HVAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hvac {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Inconsistent model data (dimension mismatch, bad constants).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Invalid argument to an operation.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Simulation state became non-finite. Carries the offending step index.
class SimulationDivergedError : public Error {
public:
    SimulationDivergedError(int step, const std::string& what)
        : Error(what), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

/// Monte Carlo sampling failed (too many diverged samples, empty cloud).
class SamplingError : public Error {
public:
    using Error::Error;
};

/// A static model violates one of its structural requirements.
/// The message names the violated clause.
class ModelShapeError : public Error {
public:
    using Error::Error;
};

/// Incentive calibration cannot proceed (bad signs, zero denominators).
class CalibrationError : public Error {
public:
    using Error::Error;
};

/// Query outside the domain of a function (e.g. work off the feasible region).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or version-mismatched input document.
class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace hvac

#endif
