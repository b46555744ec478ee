#pragma once

#include <array>
#include <functional>

#include "parafloat/errors.hpp"

// Independent ground truth for the closed forms: adaptive quadrature over the
// sector cross-sections and finite-difference derivative estimates. Nothing
// here reuses the closed-form volume or moment expressions, so agreement is
// evidence rather than tautology.

namespace parafloat {

struct QuadratureResult {
    double value;
    double error_estimate;
    long evaluations;
};

using Integrand = std::function<double(double)>;
using Surface = std::function<double(double, double)>;

/// Adaptive Gauss-Kronrod 7-15 integration by panel bisection; the requested
/// absolute tolerance is apportioned to panels proportionally to their width.
/// Throws ToleranceError when max_evals is exhausted before convergence.
QuadratureResult integrate_adaptive(const Integrand& fn, double lo, double hi,
                                    double tol = 1e-12, long max_evals = 1000000);

/// Same contract on an independent rule (adaptive Simpson with Richardson
/// error control); used to cross-check the Gauss-Kronrod path.
QuadratureResult integrate_adaptive_simpson(const Integrand& fn, double lo, double hi,
                                            double tol = 1e-12, long max_evals = 4000000);

/// Volume of { x^2+y^2 <= z <= a, x >= X } as the integral of the
/// cross-section area (4/3)(a - x^2)^{3/2} over [X, sqrt(a)].
QuadratureResult quad_sector_volume(double a, double X, double tol = 1e-12);

/// x- and z-moments of the same sector by quadrature of x and of the
/// cross-section z-centroid times area.
struct QuadratureMoments {
    QuadratureResult volume;
    QuadratureResult moment_x;
    QuadratureResult moment_z;
};
QuadratureMoments quad_sector_moments(double a, double X, double tol = 1e-12);

/// Volume and moments of the oblique sector { x^2+y^2 <= z <= b x + c, x >= X }
/// with c = a - b X, integrating cross-sections of the tilted cap directly
/// (no shear map involved).
QuadratureResult quad_oblique_volume(double a, double X, double b, double tol = 1e-12);
QuadratureMoments quad_oblique_moments(double a, double X, double b, double tol = 1e-12);

/// Central-difference gradient of a two-variable function.
/// Throws StencilError if the function throws at a stencil point.
std::array<double, 2> fd_gradient(const Surface& fn, double x, double y, double h = 1e-6);

/// Central-difference Hessian (xx, xy, yy).
std::array<double, 3> fd_hessian(const Surface& fn, double x, double y, double h = 1e-4);

/// Third derivative of t -> fn(x + t dx, y + t dy) at t = 0 via the 5-point
/// antisymmetric stencil, re-estimated at h/2 for a consistency bound.
struct ThirdDerivative {
    double value;        ///< Richardson extrapolation of the h and h/2 estimates
    double coarse;       ///< estimate at step h
    double fine;         ///< estimate at step h/2
    double consistency;  ///< |fine - coarse|
};
ThirdDerivative fd_directional_third(const Surface& fn, double x, double y,
                                     double dx, double dy, double h = 1e-3);

} // namespace parafloat
