#pragma once

#include <stdexcept>
#include <string>

namespace parafloat {

/// Input outside the geometric domain (waterline off the basis circle, negative axis, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Relative density outside the open interval (0, 1).
class InvalidDensity : public DomainError {
public:
    explicit InvalidDensity(const std::string& what) : DomainError(what) {}
};

/// A quantity is requested where its defining ratio degenerates (zero submerged volume, ...).
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

/// The normalized equilibrium function is evaluated at a zero of its denominator.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solve failed to meet its residual target.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// The degenerate-direction probe could not produce a trustworthy cubic coefficient.
class ProbeError : public std::runtime_error {
public:
    explicit ProbeError(const std::string& what) : std::runtime_error(what) {}
};

/// A finite-difference stencil point fell outside the evaluable domain.
class StencilError : public std::runtime_error {
public:
    explicit StencilError(const std::string& what) : std::runtime_error(what) {}
};

/// The adaptive integrator exhausted its evaluation budget before reaching tolerance.
class ToleranceError : public std::runtime_error {
public:
    explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

/// Output file could not be opened or written.
class IOError : public std::runtime_error {
public:
    explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace parafloat
