#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace qfb {

// Shortest round-trip text for a double, used in diagnostics.
inline std::string format_value(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

enum class ErrorKind {
    validation,  // malformed or out-of-contract input
    degenerate,  // the form is deterministic (a = b = 0)
    domain,      // evaluation outside the MGF domain
    numerical,   // iteration or quadrature did not converge
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class DegenerateFormError : public Error {
public:
    explicit DegenerateFormError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

/// Raised when an MGF-type expression is evaluated at or past its pole.
/// `where()` carries the offending evaluation point.
class DomainError : public Error {
public:
    DomainError(const std::string& what, double where)
        : Error(ErrorKind::domain, what), where_(where) {}
    double where() const noexcept { return where_; }

private:
    double where_;
};

/// Carries the residual (Jacobi off-diagonal mass) or the achieved accuracy
/// estimate (quadrature) at the point the iteration gave up.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual)
        : Error(ErrorKind::numerical, what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace qfb
