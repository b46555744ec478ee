#pragma once

#include <utility>
#include <vector>

#include "parafloat/geometry.hpp"

// The two scalar conditions a floating position must satisfy, as functions of
// the waterline abscissa X and the plane slope b:
//   E(X, b) = f V2 + (2b/9) A^{5/2}   vanishes when the buoyancy torque does,
//   F(X, b) = V1 - V2 - sigma V       vanishes when the displaced volume is right.
// E/(f a'^2) is monotone between the zeros of f, and its b-derivative has the
// sign of a cubic "bracket polynomial" P whose negative roots isolate every
// zero of E. Callers pass the side-effective density to F; the mirror symmetry
// lives in the solver.

namespace parafloat {

/// Both conditions at one configuration, plus derived readings.
struct ConditionEval {
    double E;              ///< equilibrium function
    double F;              ///< floating function at the given density
    double E_tilde;        ///< E / (f a'^2); NaN within the pole guard of f
    double sigma_implied;  ///< (V1 - V2) / V, the density this position floats at
};

/// Zeros of the prefactor f(b) = 5b^2/12 - 2bX/3 + 1/2 on b < 0.
/// They exist exactly when X <= -sqrt(15/8).
struct FPoles {
    bool exists;
    double b1;  ///< smaller zero, 4X/5 - sqrt(16X^2-30)/5
    double b2;  ///< larger zero, 4X/5 + sqrt(16X^2-30)/5
};

/// Cubic whose negative roots bracket the zeros of E for fixed X:
/// P(b) = 6X b^3 + (21 - 10a) b^2 - 36X b + (12a + 18).
struct BracketPolynomial {
    double c3, c2, c1, c0;
    /// Ascending negative roots; 0, 1 or 2 entries. A double root is listed
    /// once with double_root set (roots closer than 1e-9 are merged).
    std::vector<double> negative_roots;
    bool double_root = false;

    double eval(double b) const { return ((c3 * b + c2) * b + c1) * b + c0; }
    double eval_derivative(double b) const { return (3.0 * c3 * b + 2.0 * c2) * b + c1; }
};

/// E at the given plane. Continuous down to b = 0 (value V1/2 there).
double equilibrium_E(const SegmentShape& shape, const WaterPlane& plane);

/// F = V1 - V2 - sigma_eff V. The caller passes the side-effective density
/// (1 - sigma for a right-hand position). Throws InvalidDensity outside (0,1).
double floating_F(const SegmentShape& shape, const WaterPlane& plane, double sigma_eff);

/// E, F, E-tilde and the implied density in one pass.
ConditionEval evaluate_conditions(const SegmentShape& shape, const WaterPlane& plane,
                                  double sigma_eff);

/// E-tilde = E/(f a'^2) and its b-derivative P A^{5/2} / (108 a'^3 f^2).
/// Throws PoleError when |f| < 1e-12.
std::pair<double, double> e_tilde_and_derivative(const SegmentShape& shape,
                                                 double X, double b);

FPoles f_poles(double X);

BracketPolynomial bracket_polynomial(const SegmentShape& shape, double X);

/// X threshold below which f has negative zeros.
inline double pole_threshold() { return -std::sqrt(15.0 / 8.0); }

namespace detail {

/// Fast paths used by the solver's inner loops; A is derived from (a, X).
double equilibrium_E(double a, double X, double b);
double floating_F(double a, double X, double b, double sigma_eff);
double sigma_implied(double a, double X, double b);

/// Analytic partial derivatives of E and F (at fixed density) in (X, b).
/// d(sigma_implied)/dX = dF_dX / V and likewise for b.
struct ConditionPartials {
    double dE_dX, dE_db;
    double dF_dX, dF_db;
};
ConditionPartials condition_partials(double a, double X, double b);

} // namespace detail

} // namespace parafloat
