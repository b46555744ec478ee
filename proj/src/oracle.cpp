#include "parafloat/oracle.hpp"

#include <cmath>
#include <utility>

namespace parafloat {

namespace {

// Kronrod 15-point nodes on [-1, 1] and weights, with the embedded Gauss-7
// weights on the odd-indexed nodes. Standard tabulated values.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double kronrod;
    double error;
};

PanelEstimate gauss_kronrod_panel(const Integrand& fn, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = fn(center - half * kXgk[i]);
        fv[14 - i] = fn(center + half * kXgk[i]);
    }
    fv[7] = fn(center);
    double gauss = 0.0, kronrod = 0.0;
    for (int i = 0; i < 7; ++i) {
        kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    kronrod += kWgk[7] * fv[7];
    gauss += kWg[3] * fv[7];
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

void gk_recurse(const Integrand& fn, double lo, double hi, double tol,
                const PanelEstimate& est, long max_evals,
                double& total, double& err_total, long& evals) {
    if (est.error <= tol || hi - lo < 1e-15 * (std::abs(lo) + std::abs(hi) + 1.0)) {
        total += est.kronrod;
        err_total += est.error;
        return;
    }
    if (evals + 30 > max_evals)
        throw ToleranceError("quadrature evaluation budget exhausted");
    const double mid = 0.5 * (lo + hi);
    const PanelEstimate left = gauss_kronrod_panel(fn, lo, mid);
    const PanelEstimate right = gauss_kronrod_panel(fn, mid, hi);
    evals += 30;
    gk_recurse(fn, lo, mid, tol / 2.0, left, max_evals, total, err_total, evals);
    gk_recurse(fn, mid, hi, tol / 2.0, right, max_evals, total, err_total, evals);
}

void simpson_recurse(const Integrand& fn, double lo, double hi,
                     double flo, double fmid, double fhi, double whole,
                     double tol, long max_evals, int depth,
                     double& total, double& err_total, long& evals) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), mh = 0.5 * (mid + hi);
    const double flm = fn(lm), fmh = fn(mh);
    evals += 2;
    if (evals > max_evals)
        throw ToleranceError("quadrature evaluation budget exhausted");
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fmh + fhi);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth > 52) {
        total += left + right + delta / 15.0;
        err_total += std::abs(delta) / 15.0;
        return;
    }
    simpson_recurse(fn, lo, mid, flo, flm, fmid, left, tol / 2.0, max_evals,
                    depth + 1, total, err_total, evals);
    simpson_recurse(fn, mid, hi, fmid, fmh, fhi, right, tol / 2.0, max_evals,
                    depth + 1, total, err_total, evals);
}

} // namespace

QuadratureResult integrate_adaptive(const Integrand& fn, double lo, double hi,
                                    double tol, long max_evals) {
    if (hi <= lo) return {0.0, 0.0, 0};
    double total = 0.0, err_total = 0.0;
    long evals = 15;
    const PanelEstimate est = gauss_kronrod_panel(fn, lo, hi);
    gk_recurse(fn, lo, hi, tol, est, max_evals, total, err_total, evals);
    return {total, err_total, evals};
}

QuadratureResult integrate_adaptive_simpson(const Integrand& fn, double lo, double hi,
                                            double tol, long max_evals) {
    if (hi <= lo) return {0.0, 0.0, 0};
    const double mid = 0.5 * (lo + hi);
    const double flo = fn(lo), fmid = fn(mid), fhi = fn(hi);
    long evals = 3;
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    double total = 0.0, err_total = 0.0;
    simpson_recurse(fn, lo, hi, flo, fmid, fhi, whole, tol, max_evals, 0,
                    total, err_total, evals);
    return {total, err_total, evals};
}

QuadratureResult quad_sector_volume(double a, double X, double tol) {
    if (!(a > 0.0)) throw DomainError("segment axis must be positive");
    const double r = std::sqrt(a);
    if (X >= r) return {0.0, 0.0, 0};
    const double lo = std::max(X, -r);
    const Integrand area = [a](double x) {
        const double A = std::max(a - x * x, 0.0);
        return (4.0 / 3.0) * A * std::sqrt(A);
    };
    return integrate_adaptive(area, lo, r, tol);
}

QuadratureMoments quad_sector_moments(double a, double X, double tol) {
    if (!(a > 0.0)) throw DomainError("segment axis must be positive");
    const double r = std::sqrt(a);
    const double lo = std::max(X, -r);
    const auto cap = [a](double x) { return std::max(a - x * x, 0.0); };
    QuadratureMoments m;
    m.volume = quad_sector_volume(a, X, tol);
    m.moment_x = integrate_adaptive(
        [&](double x) { const double A = cap(x); return (4.0 / 3.0) * x * A * std::sqrt(A); },
        lo, r, tol);
    // cross-section z-centroid times area: (4/3)((3a + 2x^2)/5) (a - x^2)^{3/2}
    m.moment_z = integrate_adaptive(
        [&](double x) {
            const double A = cap(x);
            return (4.0 / 3.0) * ((3.0 * a + 2.0 * x * x) / 5.0) * A * std::sqrt(A);
        },
        lo, r, tol);
    return m;
}

QuadratureResult quad_oblique_volume(double a, double X, double b, double tol) {
    if (!(a > 0.0)) throw DomainError("segment axis must be positive");
    const double c = a - b * X;
    const double ap = b * b / 4.0 - b * X + a;
    if (!(ap > 0.0)) return {0.0, 0.0, 0};
    const double hi = b / 2.0 + std::sqrt(ap);  // upper intersection of plane and paraboloid
    if (hi <= X) return {0.0, 0.0, 0};
    const Integrand area = [b, c](double x) {
        const double h = std::max(b * x + c - x * x, 0.0);
        return (4.0 / 3.0) * h * std::sqrt(h);
    };
    return integrate_adaptive(area, X, hi, tol);
}

QuadratureMoments quad_oblique_moments(double a, double X, double b, double tol) {
    const double c = a - b * X;
    const double ap = b * b / 4.0 - b * X + a;
    const double hi = b / 2.0 + std::sqrt(ap);
    const auto depth = [b, c](double x) { return std::max(b * x + c - x * x, 0.0); };
    QuadratureMoments m;
    m.volume = quad_oblique_volume(a, X, b, tol);
    m.moment_x = integrate_adaptive(
        [&](double x) { const double h = depth(x); return (4.0 / 3.0) * x * h * std::sqrt(h); },
        X, hi, tol);
    m.moment_z = integrate_adaptive(
        [&](double x) {
            const double h = depth(x);
            return (4.0 / 3.0) * ((3.0 * (b * x + c) + 2.0 * x * x) / 5.0) * h * std::sqrt(h);
        },
        X, hi, tol);
    return m;
}

namespace {

double eval_or_stencil_error(const Surface& fn, double x, double y) {
    try {
        return fn(x, y);
    } catch (const std::exception& e) {
        throw StencilError(std::string("stencil point not evaluable: ") + e.what());
    }
}

} // namespace

std::array<double, 2> fd_gradient(const Surface& fn, double x, double y, double h) {
    const double fx1 = eval_or_stencil_error(fn, x + h, y);
    const double fx0 = eval_or_stencil_error(fn, x - h, y);
    const double fy1 = eval_or_stencil_error(fn, x, y + h);
    const double fy0 = eval_or_stencil_error(fn, x, y - h);
    return {(fx1 - fx0) / (2.0 * h), (fy1 - fy0) / (2.0 * h)};
}

std::array<double, 3> fd_hessian(const Surface& fn, double x, double y, double h) {
    const double f0 = eval_or_stencil_error(fn, x, y);
    const double fpx = eval_or_stencil_error(fn, x + h, y);
    const double fmx = eval_or_stencil_error(fn, x - h, y);
    const double fpy = eval_or_stencil_error(fn, x, y + h);
    const double fmy = eval_or_stencil_error(fn, x, y - h);
    const double fpp = eval_or_stencil_error(fn, x + h, y + h);
    const double fpm = eval_or_stencil_error(fn, x + h, y - h);
    const double fmp = eval_or_stencil_error(fn, x - h, y + h);
    const double fmm = eval_or_stencil_error(fn, x - h, y - h);
    const double h2 = h * h;
    return {(fpx - 2.0 * f0 + fmx) / h2,
            (fpp - fpm - fmp + fmm) / (4.0 * h2),
            (fpy - 2.0 * f0 + fmy) / h2};
}

namespace {

double third_at_step(const Surface& fn, double x, double y,
                     double dx, double dy, double h) {
    const double f2p = eval_or_stencil_error(fn, x + 2.0 * h * dx, y + 2.0 * h * dy);
    const double f1p = eval_or_stencil_error(fn, x + h * dx, y + h * dy);
    const double f1m = eval_or_stencil_error(fn, x - h * dx, y - h * dy);
    const double f2m = eval_or_stencil_error(fn, x - 2.0 * h * dx, y - 2.0 * h * dy);
    return (f2p - 2.0 * f1p + 2.0 * f1m - f2m) / (2.0 * h * h * h);
}

} // namespace

ThirdDerivative fd_directional_third(const Surface& fn, double x, double y,
                                     double dx, double dy, double h) {
    ThirdDerivative d;
    d.coarse = third_at_step(fn, x, y, dx, dy, h);
    d.fine = third_at_step(fn, x, y, dx, dy, h / 2.0);
    d.consistency = std::abs(d.fine - d.coarse);
    // both estimates have O(h^2) truncation error, so the standard weights apply
    d.value = d.fine + (d.fine - d.coarse) / 3.0;
    return d;
}

} // namespace parafloat
