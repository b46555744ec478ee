#include "parafloat/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parafloat {

namespace {

constexpr double kPoleGuard = 1e-12;

struct Shared {
    double A, ap, Xp, f, sA;
};

Shared shared(double a, double X, double b) {
    Shared s;
    s.A = a - X * X;
    s.ap = b * b / 4.0 - b * X + a;
    s.Xp = X - b / 2.0;
    s.f = 5.0 * b * b / 12.0 - 2.0 * b * X / 3.0 + 0.5;
    s.sA = std::sqrt(std::max(s.A, 0.0));
    return s;
}

double oblique_volume(const Shared& s) {
    return detail::sector_volume_from_angle(s.ap, std::atan2(s.sA, s.Xp));
}

} // namespace

namespace detail {

double equilibrium_E(double a, double X, double b) {
    const Shared s = shared(a, X, b);
    const double A52 = s.A * s.A * s.sA;
    return s.f * oblique_volume(s) + (2.0 * b / 9.0) * A52;
}

double floating_F(double a, double X, double b, double sigma_eff) {
    const Shared s = shared(a, X, b);
    const double v1 = right_sector_volume(a, X);
    return v1 - oblique_volume(s) - sigma_eff * (a * a * M_PI / 2.0);
}

double sigma_implied(double a, double X, double b) {
    const Shared s = shared(a, X, b);
    const double v1 = right_sector_volume(a, X);
    return (v1 - oblique_volume(s)) / (a * a * M_PI / 2.0);
}

ConditionPartials condition_partials(double a, double X, double b) {
    const Shared s = shared(a, X, b);
    const double A32 = s.A * s.sA;
    const double A52 = s.A * A32;
    const double v2 = oblique_volume(s);
    // dV/da of the sheared sector at (a', X'), then chain rules:
    // a' depends on X with slope -b and on b with slope b/2 - X;
    // X' depends on X with slope 1 and on b with slope -1/2;
    // dV/dX at fixed axis is -(4/3) A^{3/2}.
    const double v_daxis = sector_volume_daxis(s.ap, s.Xp, s.A);
    const double dV2_dX = -b * v_daxis - (4.0 / 3.0) * A32;
    const double dV2_db = v_daxis * (b / 2.0 - X) + (2.0 / 3.0) * A32;
    ConditionPartials p;
    p.dF_dX = b * v_daxis;  // dV1/dX and the A-part of dV2/dX cancel exactly
    p.dF_db = -dV2_db;
    p.dE_dX = (-2.0 * b / 3.0) * v2 + s.f * dV2_dX - (10.0 * b * X / 9.0) * A32;
    p.dE_db = (5.0 * b / 6.0 - 2.0 * X / 3.0) * v2 + s.f * dV2_db + (2.0 / 9.0) * A52;
    return p;
}

} // namespace detail

double equilibrium_E(const SegmentShape& shape, const WaterPlane& plane) {
    const DerivedGeometry g = derived_geometry(shape, plane);
    return detail::equilibrium_E(g.a, g.X, g.b);
}

double floating_F(const SegmentShape& shape, const WaterPlane& plane, double sigma_eff) {
    if (!(sigma_eff > 0.0 && sigma_eff < 1.0))
        throw InvalidDensity("relative density must lie in (0, 1)");
    const DerivedGeometry g = derived_geometry(shape, plane);
    return detail::floating_F(g.a, g.X, g.b, sigma_eff);
}

ConditionEval evaluate_conditions(const SegmentShape& shape, const WaterPlane& plane,
                                  double sigma_eff) {
    if (!(sigma_eff > 0.0 && sigma_eff < 1.0))
        throw InvalidDensity("relative density must lie in (0, 1)");
    const DerivedGeometry g = derived_geometry(shape, plane);
    ConditionEval ev;
    ev.E = detail::equilibrium_E(g.a, g.X, g.b);
    ev.sigma_implied = detail::sigma_implied(g.a, g.X, g.b);
    ev.F = (ev.sigma_implied - sigma_eff) * shape.volume();
    ev.E_tilde = std::abs(g.f) < kPoleGuard
                     ? std::numeric_limits<double>::quiet_NaN()
                     : ev.E / (g.f * g.a_prime * g.a_prime);
    return ev;
}

std::pair<double, double> e_tilde_and_derivative(const SegmentShape& shape,
                                                 double X, double b) {
    const DerivedGeometry g = derived_geometry(shape, WaterPlane(b, X));
    if (std::abs(g.f) < kPoleGuard)
        throw PoleError("normalized equilibrium function evaluated at a zero of f");
    const double E = detail::equilibrium_E(g.a, g.X, g.b);
    const double et = E / (g.f * g.a_prime * g.a_prime);
    const double P = ((6.0 * X * b + (21.0 - 10.0 * g.a)) * b - 36.0 * X) * b
                   + 12.0 * g.a + 18.0;
    const double A52 = g.A * g.A * std::sqrt(g.A);
    const double det = P * A52
                     / (108.0 * g.a_prime * g.a_prime * g.a_prime * g.f * g.f);
    return {et, det};
}

FPoles f_poles(double X) {
    FPoles p;
    p.exists = X <= pole_threshold();
    if (!p.exists) {
        p.b1 = p.b2 = std::numeric_limits<double>::quiet_NaN();
        return p;
    }
    const double d = std::sqrt(std::max(16.0 * X * X - 30.0, 0.0));
    p.b1 = (4.0 * X - d) / 5.0;
    p.b2 = (4.0 * X + d) / 5.0;
    return p;
}

namespace {

// One bisection step pair per iteration; the bracket must straddle a sign change.
double bisect_polynomial(const BracketPolynomial& p, double lo, double hi) {
    double flo = p.eval(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p.eval(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    // Newton polish inside the final bracket
    double r = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double d = p.eval_derivative(r);
        if (d == 0.0) break;
        const double rn = r - p.eval(r) / d;
        if (rn < lo || rn > hi) break;
        if (rn == r) break;
        r = rn;
    }
    return r;
}

} // namespace

BracketPolynomial bracket_polynomial(const SegmentShape& shape, double X) {
    const double a = shape.a;
    BracketPolynomial p;
    p.c3 = 6.0 * X;
    p.c2 = 21.0 - 10.0 * a;
    p.c1 = -36.0 * X;
    p.c0 = 12.0 * a + 18.0;

    if (X == 0.0) {
        // quadratic: negative root exists only when the b^2 coefficient is negative
        if (a > 2.1)
            p.negative_roots.push_back(-std::sqrt((12.0 * a + 18.0) / (10.0 * a - 21.0)));
        return p;
    }

    // stationary points of P; the root product is -2, so exactly one is negative
    const double qa = 3.0 * p.c3, qb = 2.0 * p.c2, qc = p.c1;
    const double disc = qb * qb - 4.0 * qa * qc;
    const double sd = std::sqrt(std::max(disc, 0.0));
    const double q = -0.5 * (qb + std::copysign(sd, qb));
    const double r1 = q / qa;
    const double r2 = (q != 0.0) ? qc / q : 0.0;
    const double b_stat = std::min(r1, r2) < 0.0 ? std::min(r1, r2) : std::max(r1, r2);

    const double scale = std::max(std::max(std::abs(p.c3), std::abs(p.c2)),
                                  std::max(std::abs(p.c1), std::abs(p.c0)))
                       * std::pow(std::max(1.0, std::abs(b_stat)), 3);

    if (X < 0.0) {
        // local minimum on b < 0; P(0) > 0 and P(-inf) = +inf
        const double pb = p.eval(b_stat);
        if (pb > 1e-13 * scale) return p;
        if (std::abs(pb) <= 1e-13 * scale) {
            p.negative_roots.push_back(b_stat);
            p.double_root = true;
            return p;
        }
        double lo = b_stat, width = std::max(1.0, std::abs(b_stat));
        for (int i = 0; i < 60; ++i) {
            lo = b_stat - width;
            if (p.eval(lo) > 0.0) break;
            width *= 2.0;
        }
        const double ra = bisect_polynomial(p, lo, b_stat);
        const double rb = bisect_polynomial(p, b_stat, 0.0);
        if (rb - ra < 1e-9) {
            p.negative_roots.push_back(0.5 * (ra + rb));
            p.double_root = true;
        } else {
            p.negative_roots.push_back(ra);
            p.negative_roots.push_back(rb);
        }
        return p;
    }

    // X > 0: local maximum on b < 0 with P(0) > 0, so exactly one root to its left
    double lo = b_stat, width = std::max(1.0, std::abs(b_stat));
    for (int i = 0; i < 60; ++i) {
        lo = b_stat - width;
        if (p.eval(lo) < 0.0) break;
        width *= 2.0;
    }
    p.negative_roots.push_back(bisect_polynomial(p, lo, b_stat));
    return p;
}

} // namespace parafloat
