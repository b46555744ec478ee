#include "parafloat/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>

#include <json.hpp>

namespace parafloat {

namespace {

struct BarePoint {
    double X;
    double b;
    double sigma;
};

std::optional<BarePoint> branch_at(const SegmentShape& shape, double X, int branch) {
    detail::BranchSample s;
    try {
        s = detail::sample_branches(shape, X);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < s.branch_ids.size(); ++i)
        if (s.branch_ids[i] == branch)
            return BarePoint{X, s.roots[i], detail::sigma_implied(shape.a, X, s.roots[i])};
    return std::nullopt;
}

bool any_root(const SegmentShape& shape, double X) {
    try {
        return !roots_E_for_X(shape, X).empty();
    } catch (const std::exception&) {
        return false;
    }
}

/// Bisects the root-existence boundary between X_has and X_none.
double existence_edge(const SegmentShape& shape, double X_has, double X_none) {
    for (int i = 0; i < 50; ++i) {
        const double mid = 0.5 * (X_has + X_none);
        if (mid == X_has || mid == X_none) break;
        if (any_root(shape, mid))
            X_has = mid;
        else
            X_none = mid;
    }
    return 0.5 * (X_has + X_none);
}

StabilityVerdict classify_on_curve(const SegmentShape& shape, double X, double b) {
    const double sigma = detail::sigma_implied(shape.a, X, b);
    const PotentialEval pot = potential_nonarchimedean(shape, X, b, sigma);
    try {
        return classify(pot.hessian, ProbeContext{shape, X, b, sigma});
    } catch (const ProbeError&) {
        return classify(pot.hessian);
    }
}

} // namespace

std::string stability_label(const StabilityVerdict& verdict) {
    switch (verdict.kind) {
    case StabilityKind::Stable: return "stable";
    case StabilityKind::Saddle: return "saddle";
    case StabilityKind::Degenerate:
        if (verdict.degenerate_detail
            && verdict.degenerate_detail->resolved == DegenerateResolution::Unstable)
            return "degenerate-unstable";
        return "degenerate-inconclusive";
    }
    return "?";
}

SweepCurve sweep_branches(const SegmentShape& shape, double step, bool refine_steep) {
    const double a = shape.a;
    const double r = std::sqrt(a);
    if (!(step > 0.0 && step < r))
        throw DomainError("sweep step must lie in (0, sqrt(a))");

    SweepCurve curve;
    curve.a = a;
    curve.step = step;

    const long kmin = static_cast<long>(std::floor(-r / step)) + 1;
    const long kmax = static_cast<long>(std::ceil(r / step)) - 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(kmax - kmin + 1));
    for (long k = kmin; k <= kmax; ++k) grid.push_back(static_cast<double>(k) * step);

    std::array<std::vector<BarePoint>, 2> branches;
    std::vector<bool> occupied(grid.size(), false);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int branch = 0; branch < 2; ++branch) {
            if (auto p = branch_at(shape, grid[i], branch)) {
                branches[branch].push_back(*p);
                occupied[i] = true;
            }
        }
    }

    if (refine_steep) {
        for (auto& pts : branches) {
            if (pts.size() < 5) continue;
            std::vector<double> jumps;
            jumps.reserve(pts.size() - 1);
            for (std::size_t i = 0; i + 1 < pts.size(); ++i)
                jumps.push_back(std::abs(pts[i + 1].sigma - pts[i].sigma));
            std::vector<double> sorted = jumps;
            std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                             sorted.end());
            const double median = sorted[sorted.size() / 2];
            if (!(median > 0.0)) continue;
            const int branch = static_cast<int>(&pts - &branches[0]);
            std::vector<BarePoint> dense;
            dense.reserve(pts.size());
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                dense.push_back(pts[i]);
                const bool adjacent = pts[i + 1].X - pts[i].X < 1.5 * step;
                if (adjacent && jumps[i] > 10.0 * median) {
                    const double fine = step / 100.0;
                    for (double x = pts[i].X + fine; x < pts[i + 1].X - fine / 2.0;
                         x += fine) {
                        if (auto p = branch_at(shape, x, branch)) dense.push_back(*p);
                    }
                }
            }
            dense.push_back(pts.back());
            pts = std::move(dense);
        }
    }

    for (int branch = 0; branch < 2; ++branch) {
        for (const auto& p : branches[branch]) {
            SweepPoint sp;
            sp.X = p.X;
            sp.b = p.b;
            sp.sigma = p.sigma;
            sp.branch_id = branch;
            sp.kind = root_case(p.X);
            sp.stability = classify_on_curve(shape, p.X, p.b);
            curve.points.push_back(sp);
        }
    }
    std::sort(curve.points.begin(), curve.points.end(),
              [](const SweepPoint& l, const SweepPoint& r) {
                  if (l.branch_id != r.branch_id) return l.branch_id < r.branch_id;
                  return l.X < r.X;
              });

    // maximal rootless grid runs, sharpened to the true existence boundaries
    std::size_t i = 0;
    while (i < grid.size()) {
        if (occupied[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < grid.size() && !occupied[j + 1]) ++j;
        SweepGap gap;
        gap.lo = i == 0 ? -r : existence_edge(shape, grid[i - 1], grid[i]);
        gap.hi = j + 1 == grid.size() ? r : existence_edge(shape, grid[j + 1], grid[j]);
        curve.gaps.push_back(gap);
        i = j + 1;
    }
    return curve;
}

std::string export_curve(const SweepCurve& curve, ExportFormat format) {
    if (format == ExportFormat::Csv) {
        std::string out = "X,b,sigma,branch,stability,case\n";
        char row[256];
        for (const auto& p : curve.points) {
            std::snprintf(row, sizeof row, "%.12g,%.12g,%.12g,%d,%s,%c\n", p.X, p.b,
                          p.sigma, p.branch_id, stability_label(p.stability).c_str(),
                          root_case_letter(p.kind));
            out += row;
        }
        return out;
    }
    nlohmann::json j;
    j["a"] = curve.a;
    j["step"] = curve.step;
    j["points"] = nlohmann::json::array();
    for (const auto& p : curve.points) {
        j["points"].push_back({{"X", p.X},
                               {"b", p.b},
                               {"sigma", p.sigma},
                               {"branch", p.branch_id},
                               {"stability", stability_label(p.stability)},
                               {"case", std::string(1, root_case_letter(p.kind))}});
    }
    j["gaps"] = nlohmann::json::array();
    for (const auto& g : curve.gaps) j["gaps"].push_back({{"lo", g.lo}, {"hi", g.hi}});
    return j.dump(2) + "\n";
}

} // namespace parafloat
