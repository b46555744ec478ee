#pragma once

#include <optional>

#include "parafloat/geometry.hpp"
#include "parafloat/oracle.hpp"

// Potential energy of the floating segment, analytic gradient and Hessian,
// and the eigenvalue classification of critical points. Coordinates are
// (X, b) for water planes crossing the rim and (c, b) for planes strictly
// inside it; sigma is always the side-effective relative density, i.e. the
// caller has already applied the left/right density swap.

namespace parafloat {

enum class StabilityKind { Stable, Saddle, Degenerate };

/// Outcome of the cubic probe along the Hessian null direction.
enum class DegenerateResolution { Unstable, Inconclusive };

struct DegenerateDetail {
    double null_dX;            ///< unit null direction of the Hessian
    double null_db;
    double cubic_coefficient;  ///< third derivative of U per unit change of b along it
    DegenerateResolution resolved;
};

struct StabilityVerdict {
    StabilityKind kind;
    double lambda_min;
    double lambda_max;
    std::optional<DegenerateDetail> degenerate_detail;
};

struct Hessian2 {
    double h11, h12, h22;
};

struct PotentialEval {
    double U;
    double dU_dX;  ///< w.r.t. X (rim-crossing) or c (inside-rim)
    double dU_db;
    Hessian2 hessian;
    double aux_F;  ///< F-proportional part of h22; vanishes at equilibria
    double aux_E;  ///< E-proportional part of h22; vanishes at equilibria
};

/// Potential of a rim-crossing position. The h22 entry carries 1/b factors,
/// so b < 0 strictly; b = 0 belongs to potential_archimedean.
PotentialEval potential_nonarchimedean(const SegmentShape& shape, double X, double b,
                                       double sigma_eff);

/// Potential of a position whose water plane stays inside the rim, in
/// coordinates (c, b). Requires b^2/4 + c > 0 and c - b sqrt(a) <= a; here
/// aux_F = V' - sigma_eff V and aux_E = f V' (zero exactly at equilibria).
PotentialEval potential_archimedean(const SegmentShape& shape, double c, double b,
                                    double sigma_eff);

/// Where to probe when the Hessian is degenerate.
struct ProbeContext {
    SegmentShape shape;
    double X0;
    double b0;
    double sigma_eff;
};

/// Eigenvalues of the symmetric 2x2 in closed form, then the verdict:
/// Stable when lambda_min > tol, Degenerate when |lambda_min| <= tol,
/// Saddle otherwise, with tol = 1e-9 max(1, lambda_max).
StabilityVerdict classify(const Hessian2& hessian);

/// Same, but a Degenerate verdict triggers the cubic probe at the context
/// point and the detail is attached. ProbeError propagates.
StabilityVerdict classify(const Hessian2& hessian, const ProbeContext& context);

/// Third derivative of the potential along the Hessian null direction
/// (lambda, 1)/s, lambda = -h12/h11, reported per unit change of b (the
/// unit-direction stencil value times s^3). |coefficient| > 1e-6 resolves
/// Unstable, otherwise Inconclusive. Throws ProbeError when |h11| is too
/// small to define the direction or the stencil leaves the domain.
DegenerateDetail degenerate_probe(const SegmentShape& shape, double X0, double b0,
                                  double sigma_eff);

/// Low-level probe on an arbitrary surface with the null direction taken
/// from the supplied Hessian row.
DegenerateDetail degenerate_probe(const Surface& potential, double x0, double y0,
                                  double h11, double h12);

/// Verdict for the vertical-plane position, decided by the axis length alone:
/// stable above 35/12, saddle below, degenerate (resolved Unstable) at 35/12.
/// No finite Hessian exists here, so both eigenvalues are NaN.
StabilityVerdict horizontal_verdict(double a);

} // namespace parafloat
