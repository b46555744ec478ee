#include "parafloat/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace parafloat {

namespace {

constexpr double kRootCertify = 1e-10;
constexpr double kDoubleRootWindow = 1e-12;
constexpr double kTangencyTol = 1e-8;
constexpr double kDedupTol = 1e-6;
constexpr double kExtremumWindow = 1e-4;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

double oblique_volume_fast(double a, double X, double b) {
    const double A = std::max(a - X * X, 0.0);
    const double ap = b * b / 4.0 - b * X + a;
    const double Xp = X - b / 2.0;
    return detail::sector_volume_from_angle(ap, std::atan2(std::sqrt(A), Xp));
}

/// |E| tolerance reference: max(1, V2, A^{5/2}).
double e_scale(double a, double X, double b) {
    const double A = std::max(a - X * X, 0.0);
    const double A52 = A * A * std::sqrt(A);
    return std::max({1.0, oblique_volume_fast(a, X, b), A52});
}

/// Hybrid Newton-bisection for E(b) = 0 inside a sign-change bracket.
double solve_E_root(double a, double X, double lo, double hi) {
    double flo = detail::equilibrium_E(a, X, lo);
    const double fhi = detail::equilibrium_E(a, X, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw ConvergenceError("bracket endpoints do not straddle a sign change of E");
    double r = 0.5 * (lo + hi);
    for (int i = 0; i < 140; ++i) {
        const double e = detail::equilibrium_E(a, X, r);
        if (e == 0.0) return r;
        if ((e < 0.0) == (flo < 0.0)) {
            lo = r;
            flo = e;
        } else {
            hi = r;
        }
        double next = 0.5 * (lo + hi);
        const double d = detail::condition_partials(a, X, r).dE_db;
        if (d != 0.0) {
            const double n = r - e / d;
            if (n > lo && n < hi) next = n;
        }
        if (next == r || hi - lo <= 4e-16 * std::max(1.0, std::abs(lo)))
            return next;
        r = next;
    }
    return r;
}

void certify_root(double a, double X, double b) {
    if (!(std::abs(detail::equilibrium_E(a, X, b)) <= kRootCertify * e_scale(a, X, b)))
        throw ConvergenceError("root polish left |E| above the certification bound");
}

} // namespace

RootCase root_case(double X) {
    if (X <= pole_threshold()) return RootCase::PoleSplit;
    if (X < 0.0) return RootCase::FoldPair;
    if (X == 0.0) return RootCase::AxisSingle;
    return RootCase::PositiveSingle;
}

char root_case_letter(RootCase c) {
    switch (c) {
    case RootCase::PoleSplit: return 'a';
    case RootCase::FoldPair: return 'b';
    case RootCase::AxisSingle: return 'c';
    case RootCase::PositiveSingle: return 'd';
    }
    return '?';
}

std::vector<double> roots_E_for_X(const SegmentShape& shape, double X) {
    const double a = shape.a;
    const double r = std::sqrt(a);
    if (!std::isfinite(X) || !(X > -r && X < r))
        throw DomainError("waterline abscissa must satisfy -sqrt(a) < X < sqrt(a)");
    const RootCase kind = root_case(X);
    const BracketPolynomial P = bracket_polynomial(shape, X);
    std::vector<double> roots;
    switch (kind) {
    case RootCase::PoleSplit: {
        // two roots: one left of the f-pole pair, one right of it
        if (P.negative_roots.empty())
            throw ConvergenceError("bracketing polynomial lost its negative roots");
        const FPoles poles = f_poles(X);
        roots.push_back(solve_E_root(a, X, P.negative_roots.front(), poles.b1));
        roots.push_back(solve_E_root(a, X, poles.b2, 0.0));
        break;
    }
    case RootCase::FoldPair: {
        // roots exist only when P dips negative and E at the inner dip is < 0
        if (P.negative_roots.size() < 2 || P.double_root) break;
        const double bt1 = P.negative_roots[0];
        const double bt2 = P.negative_roots[1];
        const double e2 = detail::equilibrium_E(a, X, bt2);
        const double window = kDoubleRootWindow * e_scale(a, X, bt2);
        if (e2 > window) break;
        if (std::abs(e2) <= window) {
            roots.push_back(bt2);
            break;
        }
        roots.push_back(solve_E_root(a, X, bt1, bt2));
        roots.push_back(solve_E_root(a, X, bt2, 0.0));
        break;
    }
    case RootCase::AxisSingle:
    case RootCase::PositiveSingle: {
        if (P.negative_roots.empty()) break;
        roots.push_back(solve_E_root(a, X, P.negative_roots.front(), 0.0));
        break;
    }
    }
    for (double b : roots) certify_root(a, X, b);
    std::sort(roots.begin(), roots.end());
    return roots;
}

NoSolutionRegion no_solution_region(const SegmentShape& shape) {
    const double a = shape.a;
    NoSolutionRegion reg;
    reg.a = a;
    reg.a1 = (-213.0 + 198.0 * std::sqrt(11.0)) / 250.0;
    reg.gamma = -11.0 * a * a / 54.0 + 5.0 * a / 9.0 + 13.0 / 24.0;
    const double s = a + 6.0;
    reg.delta = (3.0 - a) * s * s * s;
    const double spread = reg.delta >= 0.0 ? std::sqrt(reg.delta) / 27.0 : nan_value();
    const double rad1 = reg.gamma + spread;
    const double rad2 = reg.gamma - spread;
    reg.X1 = (reg.delta >= 0.0 && rad1 >= 0.0) ? -std::sqrt(rad1) : nan_value();
    reg.X2 = (reg.delta >= 0.0 && rad2 >= 0.0) ? -std::sqrt(rad2) : nan_value();
    if (a <= reg.a1)
        reg.applicable_case = NoSolutionRegion::Case::AllNegativeX;
    else if (a <= 2.1)
        reg.applicable_case = NoSolutionRegion::Case::X1ToAxis;
    else if (a <= 3.0)
        reg.applicable_case = NoSolutionRegion::Case::X1ToX2;
    else
        reg.applicable_case = NoSolutionRegion::Case::Empty;
    return reg;
}

bool NoSolutionRegion::contains(double X) const {
    switch (applicable_case) {
    case Case::AllNegativeX: return X > -std::sqrt(a) && X < 0.0;
    case Case::X1ToAxis: return X >= X1 && X < 0.0;
    case Case::X1ToX2: return X >= X1 && X <= X2;
    case Case::Empty: return false;
    }
    return false;
}

double tilt_angle_deg(EquilibriumSide side, double b) {
    if (side == EquilibriumSide::Horizontal) return 90.0;
    const double beta = std::sqrt(b * b + 1.0);
    const double base = std::acos(1.0 / beta) * 180.0 / M_PI;
    return side == EquilibriumSide::RightHand ? base : 180.0 - base;
}

std::vector<Equilibrium> archimedean_equilibria(const SegmentShape& shape, double sigma,
                                                Side side) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw InvalidDensity("relative density must lie in (0, 1)");
    const double a = shape.a;
    const double sigma_eff = side == Side::LeftHand ? 1.0 - sigma : sigma;
    const EquilibriumSide eside = side == Side::LeftHand ? EquilibriumSide::LeftHand
                                                         : EquilibriumSide::RightHand;
    const double rs = std::sqrt(sigma_eff);
    std::vector<Equilibrium> out;

    {
        const double c = a * rs;
        const PotentialEval pot = potential_archimedean(shape, c, 0.0, sigma_eff);
        StabilityVerdict verdict = classify(pot.hessian);
        if (verdict.kind == StabilityKind::Degenerate) {
            // the upright solution at the flip boundary is still a minimum
            verdict.kind = StabilityKind::Stable;
            verdict.degenerate_detail.reset();
        }
        Equilibrium eq;
        eq.side = eside;
        eq.case_kind = CaseKind::Archimedean;
        eq.X = nan_value();
        eq.b = 0.0;
        eq.c = c;
        eq.sigma = sigma;
        eq.tilt_deg = tilt_angle_deg(eside, 0.0);
        eq.stability = verdict;
        eq.residual_E = 0.0;
        eq.residual_F = std::abs(pot.aux_F);
        eq.newton_iterations = 0;
        out.push_back(eq);
    }

    const double rad = (8.0 * a / 3.0) * (1.0 - rs) - 2.0;
    if (rad > 0.0) {
        const double b = -std::sqrt(rad);
        const double c = a * rs - rad / 4.0;
        // tilted plane must stay inside the rim: -b sqrt(a) <= 5 b^2/8 + 3/4
        if (-b * std::sqrt(a) <= 5.0 * rad / 8.0 + 0.75) {
            const PotentialEval pot = potential_archimedean(shape, c, b, sigma_eff);
            Equilibrium eq;
            eq.side = eside;
            eq.case_kind = CaseKind::Archimedean;
            eq.X = (a - c) / b;
            eq.b = b;
            eq.c = c;
            eq.sigma = sigma;
            eq.tilt_deg = tilt_angle_deg(eside, b);
            eq.stability = classify(pot.hessian);
            eq.residual_E = std::abs(pot.aux_E);
            eq.residual_F = std::abs(pot.aux_F);
            eq.newton_iterations = 0;
            out.push_back(eq);
        }
    }
    return out;
}

std::optional<Equilibrium> horizontal_equilibrium(const SegmentShape& shape, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw InvalidDensity("relative density must lie in (0, 1)");
    if (std::abs(sigma - 0.5) > 1e-12) return std::nullopt;
    Equilibrium eq;
    eq.side = EquilibriumSide::Horizontal;
    eq.case_kind = CaseKind::Horizontal;
    eq.X = 0.0;
    eq.b = -std::numeric_limits<double>::infinity();
    eq.c = nan_value();
    eq.sigma = sigma;
    eq.tilt_deg = 90.0;
    eq.stability = horizontal_verdict(shape.a);
    eq.residual_E = 0.0;
    eq.residual_F = std::abs(sigma - 0.5) * shape.volume();
    eq.newton_iterations = 0;
    return eq;
}

namespace detail {

BranchSample sample_branches(const SegmentShape& shape, double X) {
    BranchSample s;
    s.X = X;
    s.kind = root_case(X);
    s.roots = roots_E_for_X(shape, X);
    if (s.kind == RootCase::PoleSplit || s.kind == RootCase::FoldPair) {
        if (s.roots.size() == 1 && s.kind == RootCase::FoldPair) {
            // double root: both branches meet here
            s.roots.push_back(s.roots.front());
            s.branch_ids = {0, 1};
        } else if (s.roots.size() == 2) {
            s.branch_ids = {0, 1};
        }
    } else if (s.roots.size() == 1) {
        s.branch_ids = {1};
    }
    return s;
}

} // namespace detail

namespace {

struct RunPoint {
    double X;
    double b;
    double sig;  ///< sigma_implied at (X, b)
};

/// Branch root and implied density at one X, if the branch carries a root.
std::optional<RunPoint> branch_point(const SegmentShape& shape, double X, int branch) {
    detail::BranchSample s;
    try {
        s = detail::sample_branches(shape, X);
    } catch (const ConvergenceError&) {
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < s.branch_ids.size(); ++i)
        if (s.branch_ids[i] == branch)
            return RunPoint{X, s.roots[i], detail::sigma_implied(shape.a, X, s.roots[i])};
    return std::nullopt;
}

struct PolishResult {
    double X = 0.0, b = 0.0;
    double E = 0.0, F = 0.0;
    int iters = 0;
    bool ok = false;
};

/// Damped Newton on (F, E) with a centered finite-difference Jacobian.
PolishResult polish_newton(const SegmentShape& shape, double sigma_eff, double X0,
                           double b0, double tol_E, double tol_F) {
    const double a = shape.a;
    const double r = std::sqrt(a);
    double X = X0, b = b0;
    auto E_at = [&](double x, double bb) { return detail::equilibrium_E(a, x, bb); };
    auto F_at = [&](double x, double bb) {
        return detail::floating_F(a, x, bb, sigma_eff);
    };
    double E = E_at(X, b), F = F_at(X, b);
    double res = std::abs(E) + std::abs(F);
    PolishResult out;
    int stale = 0;
    int it = 0;
    for (; it < 60 && stale < 3; ++it) {
        double hx = 1e-7 * std::max(1.0, std::abs(X));
        hx = std::min(hx, 0.49 * (r - std::abs(X)));
        double hb = 1e-7 * std::max(1.0, std::abs(b));
        hb = std::min(hb, -0.49 * b);
        if (!(hx > 0.0) || !(hb > 0.0)) break;
        const double Fx = (F_at(X + hx, b) - F_at(X - hx, b)) / (2.0 * hx);
        const double Fb = (F_at(X, b + hb) - F_at(X, b - hb)) / (2.0 * hb);
        const double Ex = (E_at(X + hx, b) - E_at(X - hx, b)) / (2.0 * hx);
        const double Eb = (E_at(X, b + hb) - E_at(X, b - hb)) / (2.0 * hb);
        const double det = Fx * Eb - Fb * Ex;
        if (!(std::abs(det) > 1e-300)) break;
        const double dX = (F * Eb - E * Fb) / det;
        const double db = (E * Fx - F * Ex) / det;
        bool moved = false;
        double t = 1.0;
        for (int k = 0; k < 20; ++k, t *= 0.5) {
            const double Xn = X - t * dX;
            const double bn = b - t * db;
            if (!(std::abs(Xn) < r) || !(bn < 0.0)) continue;
            const double En = E_at(Xn, bn);
            const double Fn = F_at(Xn, bn);
            const double rn = std::abs(En) + std::abs(Fn);
            if (rn < res) {
                X = Xn;
                b = bn;
                E = En;
                F = Fn;
                const double gain = rn / res;
                res = rn;
                stale = gain > 0.5 ? stale + 1 : 0;
                moved = true;
                break;
            }
        }
        if (!moved) break;
        if (res <= 1e-13 * std::max(1.0, shape.volume())) break;
    }
    out.X = X;
    out.b = b;
    out.E = E;
    out.F = F;
    out.iters = it;
    out.ok = std::abs(E) <= tol_E && std::abs(F) <= tol_F;
    return out;
}

/// Newton for a branch-density tangency: E = 0 together with the Jacobian
/// determinant of (F, E), making the density line touch the branch.
PolishResult polish_fold(const SegmentShape& shape, double X0, double b0) {
    const double a = shape.a;
    const double r = std::sqrt(a);
    auto G2 = [&](double x, double bb) {
        const auto p = detail::condition_partials(a, x, bb);
        return p.dF_dX * p.dE_db - p.dF_db * p.dE_dX;
    };
    double X = X0, b = b0;
    double g1 = detail::equilibrium_E(a, X, b), g2 = G2(X, b);
    auto norm = [](double u, double v) { return std::abs(u) + std::abs(v); };
    double res = norm(g1, g2);
    PolishResult out;
    int it = 0;
    for (; it < 40; ++it) {
        double hx = 1e-7 * std::max(1.0, std::abs(X));
        hx = std::min(hx, 0.49 * (r - std::abs(X)));
        double hb = 1e-7 * std::max(1.0, std::abs(b));
        hb = std::min(hb, -0.49 * b);
        if (!(hx > 0.0) || !(hb > 0.0)) break;
        const double a11 = (detail::equilibrium_E(a, X + hx, b)
                            - detail::equilibrium_E(a, X - hx, b)) / (2.0 * hx);
        const double a12 = (detail::equilibrium_E(a, X, b + hb)
                            - detail::equilibrium_E(a, X, b - hb)) / (2.0 * hb);
        const double a21 = (G2(X + hx, b) - G2(X - hx, b)) / (2.0 * hx);
        const double a22 = (G2(X, b + hb) - G2(X, b - hb)) / (2.0 * hb);
        const double det = a11 * a22 - a12 * a21;
        if (!(std::abs(det) > 1e-300)) break;
        const double dX = (g1 * a22 - g2 * a12) / det;
        const double db = (g2 * a11 - g1 * a21) / det;
        bool moved = false;
        for (double t = 1.0; t > 1e-6; t *= 0.5) {
            const double Xn = X - t * dX;
            const double bn = b - t * db;
            if (!(std::abs(Xn) < r) || !(bn < 0.0)) continue;
            const double g1n = detail::equilibrium_E(a, Xn, bn);
            const double g2n = G2(Xn, bn);
            if (norm(g1n, g2n) < res) {
                X = Xn;
                b = bn;
                g1 = g1n;
                g2 = g2n;
                res = norm(g1, g2);
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    out.X = X;
    out.b = b;
    out.E = g1;
    out.F = 0.0;
    out.iters = it;
    out.ok = std::abs(g1) <= kRootCertify * e_scale(a, X, b)
          && std::abs(g2) <= 1e-7 * std::max(1.0, std::abs(G2(X, b * (1.0 - 1e-3))));
    return out;
}

/// X where a branch appears or disappears, bisected on root existence;
/// returns the deepest sampled point on the existing side whose root is
/// still moderate (branches diverging to the vertical-plane limit are cut).
std::optional<RunPoint> existence_boundary(const SegmentShape& shape, double X_has,
                                           double X_none, int branch) {
    std::optional<RunPoint> best = branch_point(shape, X_has, branch);
    if (best && std::abs(best->b) > 1e8) return std::nullopt;
    for (int i = 0; i < 50; ++i) {
        const double mid = 0.5 * (X_has + X_none);
        if (mid == X_has || mid == X_none) break;
        const auto p = branch_point(shape, mid, branch);
        if (p) {
            X_has = mid;
            if (std::abs(p->b) <= 1e8) best = p;
        } else {
            X_none = mid;
        }
    }
    return best;
}

struct Candidate {
    enum class Type { Bracket, Fold } type;
    RunPoint p0, p1;  ///< bracket endpoints (Fold: p0 is the seed)
    int branch;
};

/// Golden-section extremum of sigma_implied along one branch.
std::optional<RunPoint> refine_extremum(const SegmentShape& shape, double lo, double hi,
                                        int branch, bool maximize) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    auto value = [&](double x) -> std::optional<double> {
        const auto p = branch_point(shape, x, branch);
        if (!p) return std::nullopt;
        return maximize ? p->sig : -p->sig;
    };
    auto f1 = value(x1), f2 = value(x2);
    if (!f1 || !f2) return std::nullopt;
    for (int i = 0; i < 80 && hi - lo > 1e-11; ++i) {
        if (*f1 < *f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = value(x2);
            if (!f2) return std::nullopt;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = value(x1);
            if (!f1) return std::nullopt;
        }
    }
    return branch_point(shape, 0.5 * (lo + hi), branch);
}

int side_rank(EquilibriumSide s) {
    switch (s) {
    case EquilibriumSide::LeftHand: return 0;
    case EquilibriumSide::RightHand: return 1;
    case EquilibriumSide::Horizontal: return 2;
    }
    return 3;
}

int kind_rank(CaseKind k) {
    switch (k) {
    case CaseKind::NonArchimedean: return 0;
    case CaseKind::Archimedean: return 1;
    case CaseKind::Horizontal: return 2;
    }
    return 3;
}

bool equilibrium_order(const Equilibrium& l, const Equilibrium& r) {
    if (side_rank(l.side) != side_rank(r.side)) return side_rank(l.side) < side_rank(r.side);
    if (kind_rank(l.case_kind) != kind_rank(r.case_kind))
        return kind_rank(l.case_kind) < kind_rank(r.case_kind);
    const double lx = std::isnan(l.X) ? std::numeric_limits<double>::infinity() : l.X;
    const double rx = std::isnan(r.X) ? std::numeric_limits<double>::infinity() : r.X;
    if (lx != rx) return lx < rx;
    return l.b < r.b;
}

} // namespace

std::vector<Equilibrium> find_all_equilibria(const SegmentShape& shape, double sigma,
                                             const SearchOptions& options,
                                             SearchDiagnostics* diagnostics) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw InvalidDensity("relative density must lie in (0, 1)");
    SearchDiagnostics local;
    SearchDiagnostics& diag = diagnostics ? *diagnostics : local;
    const double a = shape.a;
    const double r = std::sqrt(a);
    const double step = options.sweep_step;
    if (!(step > 0.0 && step < r))
        throw DomainError("sweep step must lie in (0, sqrt(a))");

    std::vector<Equilibrium> out;
    for (Side side : {Side::LeftHand, Side::RightHand}) {
        auto arch = archimedean_equilibria(shape, sigma, side);
        out.insert(out.end(), arch.begin(), arch.end());
    }
    if (auto horiz = horizontal_equilibrium(shape, sigma)) out.push_back(*horiz);

    // shared rim-crossing sweep; the effective density only enters afterwards
    const long kmin = static_cast<long>(std::floor(-r / step)) + 1;
    const long kmax = static_cast<long>(std::ceil(r / step)) - 1;
    std::vector<std::optional<detail::BranchSample>> samples;
    samples.reserve(static_cast<std::size_t>(kmax - kmin + 1));
    for (long k = kmin; k <= kmax; ++k) {
        const double X = static_cast<double>(k) * step;
        try {
            samples.push_back(detail::sample_branches(shape, X));
        } catch (const std::exception& e) {
            samples.push_back(std::nullopt);
            diag.notes.push_back(std::string("sweep sample skipped at X=")
                                 + std::to_string(X) + ": " + e.what());
        }
    }

    std::array<std::vector<std::vector<RunPoint>>, 2> runs;
    for (int branch = 0; branch < 2; ++branch) {
        std::vector<RunPoint> run;
        for (std::size_t i = 0; i <= samples.size(); ++i) {
            const RunPoint* pt = nullptr;
            RunPoint hold;
            if (i < samples.size() && samples[i]) {
                const auto& s = *samples[i];
                for (std::size_t j = 0; j < s.branch_ids.size(); ++j) {
                    if (s.branch_ids[j] == branch) {
                        hold = RunPoint{s.X, s.roots[j],
                                        detail::sigma_implied(a, s.X, s.roots[j])};
                        pt = &hold;
                        break;
                    }
                }
            }
            if (pt) {
                run.push_back(*pt);
            } else if (!run.empty()) {
                runs[branch].push_back(std::move(run));
                run.clear();
            }
        }
    }

    // extend run ends to the exact root-appearance boundary, so crossings in
    // the sliver between the grid and a branch fold are still bracketed
    for (int branch = 0; branch < 2; ++branch) {
        for (auto& run : runs[branch]) {
            const double x_first = run.front().X;
            const double x_last = run.back().X;
            if (x_first - step > -r && !branch_point(shape, x_first - step, branch)) {
                if (auto p = existence_boundary(shape, x_first, x_first - step, branch))
                    if (p->X < x_first) run.insert(run.begin(), *p);
            }
            if (x_last + step < r && !branch_point(shape, x_last + step, branch)) {
                if (auto p = existence_boundary(shape, x_last, x_last + step, branch))
                    if (p->X > x_last) run.push_back(*p);
            }
        }
    }

    if (options.refine_steep) {
        for (int branch = 0; branch < 2; ++branch) {
            for (auto& run : runs[branch]) {
                if (run.size() < 5) continue;
                std::vector<double> jumps;
                jumps.reserve(run.size() - 1);
                for (std::size_t i = 0; i + 1 < run.size(); ++i)
                    jumps.push_back(std::abs(run[i + 1].sig - run[i].sig));
                std::vector<double> sorted = jumps;
                std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                                 sorted.end());
                const double median = sorted[sorted.size() / 2];
                if (!(median > 0.0)) continue;
                std::vector<RunPoint> dense;
                dense.reserve(run.size());
                for (std::size_t i = 0; i + 1 < run.size(); ++i) {
                    dense.push_back(run[i]);
                    if (jumps[i] > 10.0 * median) {
                        const double fine = step / 100.0;
                        for (double x = run[i].X + fine; x < run[i + 1].X - fine / 2.0;
                             x += fine) {
                            if (auto p = branch_point(shape, x, branch))
                                dense.push_back(*p);
                        }
                    }
                }
                dense.push_back(run.back());
                run = std::move(dense);
            }
        }
    }

    const double tol_E = options.residual_tol;
    const double tol_F = options.residual_tol * std::max(1.0, shape.volume());

    for (Side side : {Side::LeftHand, Side::RightHand}) {
        const double sigma_eff = side == Side::LeftHand ? sigma : 1.0 - sigma;
        const EquilibriumSide eside = side == Side::LeftHand
                                          ? EquilibriumSide::LeftHand
                                          : EquilibriumSide::RightHand;
        std::vector<Candidate> cands;
        for (int branch = 0; branch < 2; ++branch) {
            for (const auto& run : runs[branch]) {
                for (std::size_t i = 0; i + 1 < run.size(); ++i) {
                    const double g0 = run[i].sig - sigma_eff;
                    const double g1 = run[i + 1].sig - sigma_eff;
                    if ((g0 < 0.0) != (g1 < 0.0) || g0 == 0.0 || g1 == 0.0)
                        cands.push_back({Candidate::Type::Bracket, run[i], run[i + 1],
                                         branch});
                }
                for (std::size_t i = 1; i + 1 < run.size(); ++i) {
                    const double gm = run[i - 1].sig - sigma_eff;
                    const double g0 = run[i].sig - sigma_eff;
                    const double gp = run[i + 1].sig - sigma_eff;
                    if ((g0 < 0.0) != (gm < 0.0) || (g0 < 0.0) != (gp < 0.0)) continue;
                    if (std::abs(g0) > kExtremumWindow) continue;
                    const bool peak = g0 < 0.0 && g0 >= gm && g0 >= gp;
                    const bool dip = g0 > 0.0 && g0 <= gm && g0 <= gp;
                    if (!peak && !dip) continue;
                    const auto ext = refine_extremum(shape, run[i - 1].X, run[i + 1].X,
                                                     branch, peak);
                    if (!ext) continue;
                    const double ge = ext->sig - sigma_eff;
                    if (std::abs(ge) <= kTangencyTol) {
                        cands.push_back({Candidate::Type::Fold, *ext, *ext, branch});
                    } else if ((peak && ge > 0.0) || (dip && ge < 0.0)) {
                        cands.push_back({Candidate::Type::Bracket, run[i - 1], *ext,
                                         branch});
                        cands.push_back({Candidate::Type::Bracket, *ext, run[i + 1],
                                         branch});
                    }
                }
            }
        }

        std::vector<Equilibrium> found;
        for (const auto& cand : cands) {
            ++diag.candidates;
            try {
                PolishResult pr;
                if (cand.type == Candidate::Type::Fold) {
                    pr = polish_fold(shape, cand.p0.X, cand.p0.b);
                    if (pr.ok) {
                        const double si = detail::sigma_implied(a, pr.X, pr.b);
                        pr.F = (si - sigma_eff) * shape.volume();
                        pr.ok = std::abs(si - sigma_eff) <= kTangencyTol;
                    }
                } else {
                    const double g0 = cand.p0.sig - sigma_eff;
                    const double g1 = cand.p1.sig - sigma_eff;
                    double t = (g0 == g1) ? 0.5 : g0 / (g0 - g1);
                    t = std::min(std::max(t, 0.0), 1.0);
                    const double X0 = cand.p0.X + t * (cand.p1.X - cand.p0.X);
                    const double b0 = cand.p0.b + t * (cand.p1.b - cand.p0.b);
                    pr = polish_newton(shape, sigma_eff, X0, b0, tol_E, tol_F);
                    if (!pr.ok) {
                        // fall back to bisection on the branch parameter
                        double lo = cand.p0.X, hi = cand.p1.X;
                        double glo = g0;
                        RunPoint seed = cand.p0;
                        for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
                            const auto mid = branch_point(shape, 0.5 * (lo + hi),
                                                          cand.branch);
                            if (!mid) break;
                            seed = *mid;
                            const double gm = mid->sig - sigma_eff;
                            if ((gm < 0.0) == (glo < 0.0)) {
                                lo = mid->X;
                                glo = gm;
                            } else {
                                hi = mid->X;
                            }
                        }
                        pr = polish_newton(shape, sigma_eff, seed.X, seed.b, tol_E, tol_F);
                    }
                }
                if (!pr.ok) {
                    ++diag.skipped;
                    char note[160];
                    std::snprintf(note, sizeof note,
                                  "candidate near X=%.6f (branch %d) failed to converge",
                                  cand.p0.X, cand.branch);
                    diag.notes.push_back(note);
                    continue;
                }

                Equilibrium eq;
                eq.side = eside;
                eq.case_kind = CaseKind::NonArchimedean;
                eq.X = pr.X;
                eq.b = pr.b;
                eq.c = a - pr.b * pr.X;
                eq.sigma = sigma;
                eq.tilt_deg = tilt_angle_deg(eside, pr.b);
                eq.residual_E = std::abs(pr.E);
                eq.residual_F = std::abs(pr.F);
                eq.newton_iterations = pr.iters;
                const double sigma_cls = detail::sigma_implied(a, pr.X, pr.b);
                const PotentialEval pot =
                    potential_nonarchimedean(shape, pr.X, pr.b, sigma_cls);
                try {
                    eq.stability = classify(pot.hessian,
                                            ProbeContext{shape, pr.X, pr.b, sigma_cls});
                } catch (const ProbeError& e) {
                    eq.stability = classify(pot.hessian);
                    diag.notes.push_back(std::string("degenerate probe failed: ")
                                         + e.what());
                }
                ++diag.converged;
                found.push_back(eq);
            } catch (const std::exception& e) {
                ++diag.skipped;
                diag.notes.push_back(std::string("candidate failed: ") + e.what());
            }
        }

        std::sort(found.begin(), found.end(),
                  [](const Equilibrium& l, const Equilibrium& r) { return l.X < r.X; });
        std::vector<Equilibrium> unique;
        for (const auto& eq : found) {
            bool dup = false;
            for (auto& kept : unique) {
                if (std::abs(kept.X - eq.X) < kDedupTol
                    && std::abs(kept.b - eq.b) < kDedupTol) {
                    dup = true;
                    if (std::max(eq.residual_E, eq.residual_F)
                        < std::max(kept.residual_E, kept.residual_F))
                        kept = eq;
                    break;
                }
            }
            if (!dup) unique.push_back(eq);
        }
        out.insert(out.end(), unique.begin(), unique.end());
    }

    std::sort(out.begin(), out.end(), equilibrium_order);
    return out;
}

} // namespace parafloat
