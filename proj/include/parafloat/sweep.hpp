#pragma once

#include <string>
#include <vector>

#include "parafloat/solver.hpp"

// Branch diagrams: sample the rim-crossing equilibrium branches over an X
// grid, record (X, b, sigma, stability) per branch, and export the curves as
// CSV or JSON tables.

namespace parafloat {

/// One sampled branch point; sigma is the implied density at (X, b).
struct SweepPoint {
    double X;
    double b;
    double sigma;
    int branch_id;
    RootCase kind;
    StabilityVerdict stability;
};

/// Open X-interval carrying no rim-crossing solution.
struct SweepGap {
    double lo;
    double hi;
};

struct SweepCurve {
    double a = 0.0;
    double step = 0.0;
    std::vector<SweepPoint> points;  ///< sorted by (branch_id, X); each a certified E root
    std::vector<SweepGap> gaps;
};

/// Samples both branches on the grid of step multiples inside (-sqrt(a), sqrt(a)).
///
/// Branch 0 is the deeper-slope interval root, branch 1 the root of the
/// interval abutting b = 0, which continues across X = 0. When refine_steep
/// is set, segments whose |dsigma| exceeds 10x the branch median are
/// re-sampled at step/100. Gap endpoints are sharpened by bisection on root
/// existence. Stability is classified at each point's own implied density.
SweepCurve sweep_branches(const SegmentShape& shape, double step, bool refine_steep);

enum class ExportFormat { Csv, Json };

/// Serializes a curve; CSV fixed to 12 significant digits, JSON full doubles.
std::string export_curve(const SweepCurve& curve, ExportFormat format);

/// Human-readable stability tag: stable, saddle, degenerate-unstable, degenerate-inconclusive.
std::string stability_label(const StabilityVerdict& verdict);

} // namespace parafloat
