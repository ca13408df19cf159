#pragma once

#include <stdexcept>
#include <string>

namespace fbp {

// Base of every error the library throws. The CLI maps each subclass onto
// an exit code (see exit_code()).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: out-of-range parameter, inadmissible hypergeometric triple,
// infeasible (n, m, M) triple.
class ParameterError : public Error {
public:
    using Error::Error;
};

// A point or zero that must lie in the open disk (or on the circle) does not.
class DomainError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class DegreeMismatch : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class PreconditionError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// An iteration failed to converge. Carries the best residual reached.
class NumericFailure : public Error {
public:
    NumericFailure(const std::string& what, double best_residual = -1.0)
        : Error(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

// A mathematical identity or root-location claim did not check out.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

// An inequality that holds for every input was violated: a bug, not bad input.
class InvariantFailure : public VerificationFailure {
public:
    using VerificationFailure::VerificationFailure;
};

// 0 ok, 1 bad/infeasible input, 2 numeric failure, 3 verification failure.
inline int exit_code(const Error& e) noexcept {
    if (dynamic_cast<const ParameterError*>(&e)) return 1;
    if (dynamic_cast<const NumericFailure*>(&e)) return 2;
    if (dynamic_cast<const VerificationFailure*>(&e)) return 3;
    return 2;
}

}  // namespace fbp
