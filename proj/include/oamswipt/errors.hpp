#pragma once

#include <stdexcept>
#include <string>

namespace oamswipt {

// Base class for model-level failures. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

// Two transceiver points coincide, so a path length is zero.
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

// A matrix does not have the structure an operation requires (e.g. circulant).
class StructureViolation : public Error {
public:
    using Error::Error;
};

class IllConditionedChannel : public Error {
public:
    IllConditionedChannel(const std::string& what, double condition)
        : Error(what + " (condition number " + std::to_string(condition) + ")"), condition_(condition) {}

    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// The requested algorithm does not apply to the given stream model.
class UnsupportedModel : public Error {
public:
    using Error::Error;
};

} // namespace oamswipt
