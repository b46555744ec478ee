#include "parafloat/stability.hpp"

#include <cmath>
#include <limits>

#include "parafloat/conditions.hpp"

namespace parafloat {

namespace {

constexpr double kEigRelTol = 1e-9;
constexpr double kCubicResolve = 1e-6;
constexpr double kProbeStep = 1e-3;
constexpr double kHorizontalAxis = 35.0 / 12.0;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

} // namespace

PotentialEval potential_nonarchimedean(const SegmentShape& shape, double X, double b,
                                       double sigma_eff) {
    if (!(sigma_eff > 0.0 && sigma_eff < 1.0))
        throw InvalidDensity("relative density must lie in (0, 1)");
    if (!(b < 0.0))
        throw DomainError("rim-crossing potential requires b < 0");
    const DerivedGeometry g = derived_geometry(shape, WaterPlane(b, X));
    const double a = g.a, A = g.A, ap = g.a_prime, Xp = g.X_prime, beta = g.beta;
    const double beta3 = beta * beta * beta;
    const double beta5 = beta3 * beta * beta;
    const double sA = std::sqrt(A);
    const double A32 = A * sA;
    const double A52 = A * A32;
    const double V = shape.volume();
    const double v1 = right_sector_volume(a, X);
    const double v2 = oblique_sector_volume(g);
    const double E = g.f * v2 + (2.0 * b / 9.0) * A52;
    const double F = v1 - v2 - sigma_eff * V;

    PotentialEval ev;
    ev.U = ((a / 3.0 - b * X) * (sigma_eff * V - v1) + (ap / 3.0) * v2
            - (2.0 * b / 9.0) * A52) / beta;
    ev.dU_dX = b * F / beta;
    ev.dU_db = (b * E + (X + b * a / 3.0) * F) / beta3;
    ev.hessian.h11 = (2.0 * b * b / (3.0 * ap * beta)) * (3.0 * v2 + Xp * A32);
    ev.hessian.h12 = ((b * b + 6.0) / (4.0 * ap * beta)) * v2 + F / beta3
                   - 3.0 * E / (ap * beta);
    const double q2 = (((-2.0 * X * b + (4.0 * a - 7.0)) * b + 14.0 * X) * b - 6.0) * b
                    + 12.0 * X;
    ev.aux_F = (((-2.0 * a * b - 9.0 * X) * b + a) / (3.0 * beta5)) * F;
    const double q3 = ((((4.0 * b - 4.0 * X) * b + (13.0 - 8.0 * a)) * b - 28.0 * X) * b
                       + (4.0 * a + 6.0)) * b - 12.0 * X;
    ev.aux_E = (q3 / (4.0 * ap * b * beta5)) * E;
    ev.hessian.h22 = (q2 / (8.0 * ap * b * beta3)) * v2 + ev.aux_F + ev.aux_E;
    return ev;
}

PotentialEval potential_archimedean(const SegmentShape& shape, double c, double b,
                                    double sigma_eff) {
    if (!(sigma_eff > 0.0 && sigma_eff < 1.0))
        throw InvalidDensity("relative density must lie in (0, 1)");
    if (!(b <= 0.0) || !std::isfinite(b) || !std::isfinite(c))
        throw DomainError("inside-rim potential requires finite c and b <= 0");
    const double a = shape.a;
    const double ap = b * b / 4.0 + c;
    if (!(ap > 0.0))
        throw DomainError("water plane misses the body: b^2/4 + c <= 0");
    if (c - b * std::sqrt(a) > a * (1.0 + 1e-14))
        throw DomainError("water plane cuts the rim; use the rim-crossing potential");
    const double beta = std::sqrt(b * b + 1.0);
    const double beta3 = beta * beta * beta;
    const double beta5 = beta3 * beta * beta;
    const double V = shape.volume();
    const double Vp = ap * ap * M_PI / 2.0;
    const double f = 5.0 * b * b / 12.0 + 2.0 * (c - a) / 3.0 + 0.5;
    const double F0 = Vp - sigma_eff * V;
    const double E0 = f * Vp;

    PotentialEval ev;
    ev.U = ((2.0 * a / 3.0 - c) * sigma_eff * V + ap * Vp / 3.0) / beta;
    ev.dU_dX = F0 / beta;
    ev.dU_db = (b / beta3) * ((2.0 * a / 3.0 - c) * F0 + E0);
    ev.hessian.h11 = 2.0 * Vp / (ap * beta);
    ev.hessian.h12 = (b / beta) * (Vp / ap - F0 / (beta * beta));
    ev.hessian.h22 = (b * b * Vp / (ap * beta3)) * (5.0 * b * b / 8.0 + (c + 1.0) / 2.0)
                   + ((1.0 - 2.0 * b * b) / beta5) * ((2.0 * a / 3.0 - c) * F0 + E0);
    ev.aux_F = F0;
    ev.aux_E = E0;
    return ev;
}

StabilityVerdict classify(const Hessian2& h) {
    StabilityVerdict v;
    const double mean = 0.5 * (h.h11 + h.h22);
    const double half = 0.5 * (h.h11 - h.h22);
    const double r = std::hypot(half, h.h12);
    v.lambda_min = mean - r;
    v.lambda_max = mean + r;
    const double tol = kEigRelTol * std::max(1.0, v.lambda_max);
    if (std::abs(v.lambda_min) <= tol)
        v.kind = StabilityKind::Degenerate;
    else if (v.lambda_min > tol)
        v.kind = StabilityKind::Stable;
    else
        v.kind = StabilityKind::Saddle;
    return v;
}

StabilityVerdict classify(const Hessian2& h, const ProbeContext& context) {
    StabilityVerdict v = classify(h);
    if (v.kind == StabilityKind::Degenerate)
        v.degenerate_detail = degenerate_probe(context.shape, context.X0, context.b0,
                                               context.sigma_eff);
    return v;
}

DegenerateDetail degenerate_probe(const Surface& potential, double x0, double y0,
                                  double h11, double h12) {
    const double scale = std::max(std::abs(h11), std::abs(h12));
    if (!(std::abs(h11) > 1e-12 * std::max(1.0, scale)))
        throw ProbeError("null direction undefined: vanishing leading Hessian entry");
    const double lambda = -h12 / h11;
    const double s = std::hypot(lambda, 1.0);
    DegenerateDetail d;
    d.null_dX = lambda / s;
    d.null_db = 1.0 / s;
    ThirdDerivative third;
    try {
        third = fd_directional_third(potential, x0, y0, d.null_dX, d.null_db, kProbeStep);
    } catch (const StencilError& e) {
        throw ProbeError(e.what());
    }
    if (!std::isfinite(third.value))
        throw ProbeError("third-derivative stencil produced a non-finite value");
    d.cubic_coefficient = third.value * s * s * s;
    d.resolved = std::abs(d.cubic_coefficient) > kCubicResolve
                     ? DegenerateResolution::Unstable
                     : DegenerateResolution::Inconclusive;
    return d;
}

DegenerateDetail degenerate_probe(const SegmentShape& shape, double X0, double b0,
                                  double sigma_eff) {
    const PotentialEval at = potential_nonarchimedean(shape, X0, b0, sigma_eff);
    const Surface U = [&shape, sigma_eff](double X, double b) {
        return potential_nonarchimedean(shape, X, b, sigma_eff).U;
    };
    return degenerate_probe(U, X0, b0, at.hessian.h11, at.hessian.h12);
}

StabilityVerdict horizontal_verdict(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("axis length must be positive and finite");
    StabilityVerdict v;
    v.lambda_min = nan_value();
    v.lambda_max = nan_value();
    if (std::abs(a - kHorizontalAxis) <= 1e-12 * kHorizontalAxis) {
        v.kind = StabilityKind::Degenerate;
        DegenerateDetail d;
        d.null_dX = nan_value();
        d.null_db = nan_value();
        d.cubic_coefficient = nan_value();
        d.resolved = DegenerateResolution::Unstable;
        v.degenerate_detail = d;
    } else {
        v.kind = a > kHorizontalAxis ? StabilityKind::Stable : StabilityKind::Saddle;
    }
    return v;
}

} // namespace parafloat
