#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parafloat/conditions.hpp"
#include "parafloat/geometry.hpp"
#include "parafloat/stability.hpp"

// Equilibrium finding: interval-certified root isolation of E = 0 in b for a
// fixed waterline abscissa, the closed-form inside-rim and vertical-plane
// solutions, the closed-form no-solution region in X, and the global search
// that sweeps X, tracks branches, and polishes candidates by damped Newton
// on (F, E).

namespace parafloat {

enum class EquilibriumSide { LeftHand, RightHand, Horizontal };

enum class CaseKind { Archimedean, NonArchimedean, Horizontal };

/// Root-isolation regime for E(b) = 0 at fixed X, keyed on X alone.
enum class RootCase {
    PoleSplit,       ///< X <= -sqrt(15/8): two roots, brackets split by the f poles
    FoldPair,        ///< -sqrt(15/8) < X < 0: zero, one double, or two roots
    AxisSingle,      ///< X = 0: one root iff a > 21/10
    PositiveSingle,  ///< X > 0: exactly one root
};

RootCase root_case(double X);

/// Single-letter tag for reports: a, b, c, d in the order above.
char root_case_letter(RootCase c);

struct Equilibrium {
    EquilibriumSide side;
    CaseKind case_kind;
    double X;     ///< rim abscissa; for Archimedean the extended-plane abscissa at z = a (NaN when b = 0); 0 for Horizontal
    double b;     ///< plane slope; -inf flags the vertical plane of the Horizontal case
    double c;     ///< plane height over the axis; NaN for Horizontal
    double sigma; ///< the body's relative density as given
    double tilt_deg;
    StabilityVerdict stability;
    double residual_E;
    double residual_F;
    int newton_iterations;  ///< 0 for closed-form solutions
};

struct NoSolutionRegion {
    enum class Case { AllNegativeX, X1ToAxis, X1ToX2, Empty };
    double a;
    double a1;      ///< boundary (-213 + 198 sqrt(11))/250 between the first two cases
    Case applicable_case;
    double gamma;
    double delta;
    double X1;      ///< -sqrt(gamma + sqrt(delta)/27), NaN if undefined
    double X2;      ///< -sqrt(gamma - sqrt(delta)/27), NaN if undefined
    bool contains(double X) const;
};

struct SearchOptions {
    double sweep_step = 0.01;
    bool refine_steep = true;
    double residual_tol = 1e-8;
};

struct SearchDiagnostics {
    int candidates = 0;
    int converged = 0;
    int skipped = 0;
    std::vector<std::string> notes;
};

/// All b < 0 with E(a, X, b) = 0, isolated per the root-case brackets and
/// polished to |E| <= 1e-10 max(1, V2, A^{5/2}). A double root appears once.
/// Throws DomainError unless -sqrt(a) < X < sqrt(a), ConvergenceError if a
/// certified bracket fails to straddle a sign change.
std::vector<double> roots_E_for_X(const SegmentShape& shape, double X);

/// Closed-form region of X < 0 where E = 0 has no root for this axis length.
NoSolutionRegion no_solution_region(const SegmentShape& shape);

/// Inside-rim equilibria for one side: the upright plane (always), plus the
/// tilted plane when its slope is real and the plane stays inside the rim.
/// The side's effective density is 1 - sigma for LeftHand, sigma for
/// RightHand. The upright solution at the stability flip boundary
/// a = 3/(4(1 - sqrt(sigma_eff))) is reported Stable.
std::vector<Equilibrium> archimedean_equilibria(const SegmentShape& shape, double sigma,
                                                Side side);

/// The vertical-plane equilibrium {x = 0}, present only when
/// |sigma - 1/2| <= 1e-12; verdict from horizontal_verdict.
std::optional<Equilibrium> horizontal_equilibrium(const SegmentShape& shape, double sigma);

/// Union of both sides' rim-crossing equilibria (swept, bracketed, and
/// Newton-polished), both sides' inside-rim solutions, and the vertical-plane
/// case. Results are deduplicated at 1e-6 in (X, b) per side and sorted by
/// (side, case kind, X, b). Failed candidates are skipped and counted in
/// diagnostics; the search itself never throws ConvergenceError.
std::vector<Equilibrium> find_all_equilibria(const SegmentShape& shape, double sigma,
                                             const SearchOptions& options = {},
                                             SearchDiagnostics* diagnostics = nullptr);

/// Orientation angle of the body axis against the upward vertical:
/// arccos(1/beta) for RightHand, its supplement for LeftHand, 90 degrees
/// for Horizontal.
double tilt_angle_deg(EquilibriumSide side, double b);

namespace detail {

/// sigma_implied values and branch roots at one swept X; branch index 0 is
/// the deeper-b bracket, 1 the bracket ending at b = 0.
struct BranchSample {
    double X;
    RootCase kind;
    std::vector<double> roots;     // ascending b
    std::vector<int> branch_ids;   // parallel to roots
};

BranchSample sample_branches(const SegmentShape& shape, double X);

} // namespace detail

} // namespace parafloat
