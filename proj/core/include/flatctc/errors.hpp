#pragma once

#include <stdexcept>
#include <string>

namespace flatctc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear part is not in O(2,1), or not in the identity component when
/// that is required.
class NotLorentzError : public Error {
public:
    NotLorentzError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class NotHyperbolicError : public Error {
public:
    NotHyperbolicError() : Error("isometry is not hyperbolic") {}
};

class NotParabolicError : public Error {
public:
    NotParabolicError() : Error("isometry is not parabolic") {}
};

class NotEllipticError : public Error {
public:
    NotEllipticError() : Error("isometry is not elliptic") {}
};

class IdentityInputError : public Error {
public:
    IdentityInputError() : Error("linear part is the identity") {}
};

class HasFixedPointError : public Error {
public:
    HasFixedPointError() : Error("isometry has a fixed point; no CTC witness exists") {}
};

class SingularMapError : public Error {
public:
    SingularMapError() : Error("conjugating map is singular") {}
};

class NotTimelikeDisplacementError : public Error {
public:
    NotTimelikeDisplacementError(const std::string& klass)
        : Error("displacement vector is not timelike (" + klass + ")"), klass_(klass) {}
    const std::string& causal_class() const noexcept { return klass_; }

private:
    std::string klass_;
};

class TangentNotTimelikeError : public Error {
public:
    explicit TangentNotTimelikeError(double t)
        : Error("blended tangent is not timelike at t=" + std::to_string(t) +
                "; try a smaller epsilon"),
          t_(t) {}
    double t() const noexcept { return t_; }

private:
    double t_;
};

class NotClosedError : public Error {
public:
    explicit NotClosedError(double residual)
        : Error("curve does not close in the quotient, residual " + std::to_string(residual)),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class WitnessBoundExceededError : public Error {
public:
    explicit WitnessBoundExceededError(long bound)
        : Error("no timelike power found below the search limit; analytic bound is " +
                std::to_string(bound)),
          bound_(bound) {}
    long bound() const noexcept { return bound_; }

private:
    long bound_;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace flatctc
