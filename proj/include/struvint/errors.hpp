#pragma once

#include <stdexcept>
#include <string>

namespace struvint {

// Base of every error the library raises. Numerical failures never surface
// as NaN or infinity; they are reported through one of these.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: violated precondition, malformed parameter block, theorem
// condition not met.
class DomainError : public Error {
public:
    using Error::Error;
};

// Gamma evaluated at (or numerically indistinguishable from) a pole.
class PoleError : public DomainError {
public:
    PoleError(long location, const std::string& context = {})
        : DomainError(message(location, context)), location_(location) {}

    long location() const noexcept { return location_; }

private:
    static std::string message(long location, const std::string& context) {
        std::string msg = "gamma pole at " + std::to_string(location);
        if (!context.empty()) msg += " (" + context + ")";
        return msg;
    }

    long location_;
};

// Result not representable in double precision.
class RangeError : public Error {
public:
    using Error::Error;
};

// Parameters put the series outside its convergence region.
class DivergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

// Truncation budget exhausted before the stopping rule fired.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Quadrature detected an endpoint singularity that does not integrate.
class NonIntegrableError : public Error {
public:
    using Error::Error;
};

}  // namespace struvint
