#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "parafloat/solver.hpp"
#include "parafloat/sweep.hpp"

// Command-line front door: solve (all equilibria for a density), sweep
// (branch diagram tables), region (closed-form no-solution interval), and
// classify (stability of a user-supplied configuration).
//
// Exit codes: 0 success (zero equilibria included), 2 invalid arguments,
// 3 when every search candidate failed to converge.

namespace {

using namespace parafloat;

/// Eight-decimal rendering; non-finite values print as "-".
std::string fmt8(double v) {
    if (std::isnan(v)) return "-";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8f", v);
    return buf;
}

const char* side_name(EquilibriumSide s) {
    switch (s) {
    case EquilibriumSide::LeftHand: return "left";
    case EquilibriumSide::RightHand: return "right";
    case EquilibriumSide::Horizontal: return "horizontal";
    }
    return "?";
}

const char* kind_name(CaseKind k) {
    switch (k) {
    case CaseKind::NonArchimedean: return "non-archimedean";
    case CaseKind::Archimedean: return "archimedean";
    case CaseKind::Horizontal: return "horizontal";
    }
    return "?";
}

struct ShapeArgs {
    double axis = 0.0;
    double base_angle = 0.0;
    bool has_axis = false;
    bool has_angle = false;

    void attach(CLI::App* cmd) {
        auto* ax = cmd->add_option("--axis", axis, "axis length a of the segment");
        auto* an = cmd->add_option("--base-angle", base_angle,
                                   "base angle in degrees; a = tan(angle)^2 / 4");
        ax->excludes(an);
        an->excludes(ax);
    }

    SegmentShape resolve(const CLI::App* cmd) {
        has_axis = cmd->count("--axis") > 0;
        has_angle = cmd->count("--base-angle") > 0;
        if (has_axis == has_angle)
            throw CLI::ValidationError("exactly one of --axis or --base-angle is required");
        double a = axis;
        if (has_angle) {
            const double t = std::tan(base_angle * M_PI / 180.0);
            a = t * t / 4.0;
        }
        return SegmentShape{a};
    }
};

void write_output(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("cannot open output file: " + path);
    out << data;
    if (!out) throw IOError("write failed: " + path);
}

nlohmann::json equilibrium_json(const Equilibrium& eq) {
    nlohmann::json j{{"side", side_name(eq.side)},
                     {"case", kind_name(eq.case_kind)},
                     {"X", eq.X},
                     {"b", eq.b},
                     {"c", eq.c},
                     {"sigma", eq.sigma},
                     {"tilt_deg", eq.tilt_deg},
                     {"stability", stability_label(eq.stability)},
                     {"lambda_min", eq.stability.lambda_min},
                     {"lambda_max", eq.stability.lambda_max},
                     {"residual_E", eq.residual_E},
                     {"residual_F", eq.residual_F},
                     {"newton_iterations", eq.newton_iterations}};
    if (eq.stability.degenerate_detail) {
        const auto& d = *eq.stability.degenerate_detail;
        j["degenerate"] = {{"null_dX", d.null_dX},
                           {"null_db", d.null_db},
                           {"cubic_coefficient", d.cubic_coefficient},
                           {"resolved", d.resolved == DegenerateResolution::Unstable
                                            ? "unstable"
                                            : "inconclusive"}};
    }
    return j;
}

int cmd_solve(const SegmentShape& shape, double sigma, const SearchOptions& opts,
              const std::string& format, const std::string& output) {
    SearchDiagnostics diag;
    const auto eqs = find_all_equilibria(shape, sigma, opts, &diag);

    std::string data;
    if (format == "json") {
        nlohmann::json j;
        j["input"] = {{"a", shape.a},
                      {"density", sigma},
                      {"step", opts.sweep_step},
                      {"refine", opts.refine_steep},
                      {"tolerance", opts.residual_tol}};
        j["equilibria"] = nlohmann::json::array();
        for (const auto& eq : eqs) j["equilibria"].push_back(equilibrium_json(eq));
        j["diagnostics"] = {{"candidates", diag.candidates},
                            {"converged", diag.converged},
                            {"skipped", diag.skipped},
                            {"notes", diag.notes}};
        data = j.dump(2) + "\n";
    } else if (format == "csv") {
        data = "side,case,X,b,c,sigma,tilt_deg,stability,lambda_min,lambda_max,"
               "residual_E,residual_F\n";
        char row[512];
        for (const auto& eq : eqs) {
            std::snprintf(row, sizeof row, "%s,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%s,%.12g,%.12g,%.12g,%.12g\n",
                          side_name(eq.side), kind_name(eq.case_kind), eq.X, eq.b, eq.c,
                          eq.sigma, eq.tilt_deg, stability_label(eq.stability).c_str(),
                          eq.stability.lambda_min, eq.stability.lambda_max,
                          eq.residual_E, eq.residual_F);
            data += row;
        }
    } else {
        char row[512];
        std::snprintf(row, sizeof row, "%-11s %-16s %-13s %-13s %-13s %-11s %-11s %s\n",
                      "side", "case", "X", "b", "c", "sigma", "tilt_deg", "stability");
        data += row;
        for (const auto& eq : eqs) {
            std::snprintf(row, sizeof row, "%-11s %-16s %-13s %-13s %-13s %-11s %-11s %s\n",
                          side_name(eq.side), kind_name(eq.case_kind),
                          fmt8(eq.X).c_str(), fmt8(eq.b).c_str(), fmt8(eq.c).c_str(),
                          fmt8(eq.sigma).c_str(), fmt8(eq.tilt_deg).c_str(),
                          stability_label(eq.stability).c_str());
            data += row;
        }
        if (eqs.empty()) data += "no equilibria found\n";
    }
    write_output(output, data);

    std::cerr << "search: " << diag.candidates << " candidates, " << diag.converged
              << " converged, " << diag.skipped << " skipped\n";
    for (const auto& note : diag.notes) std::cerr << "note: " << note << "\n";
    if (diag.candidates > 0 && diag.converged == 0) {
        std::cerr << "error: no search candidate converged\n";
        return 3;
    }
    return 0;
}

int cmd_sweep(const SegmentShape& shape, double step, bool refine,
              const std::string& format, const std::string& output) {
    const SweepCurve curve = sweep_branches(shape, step, refine);
    std::string data;
    if (format == "json") {
        data = export_curve(curve, ExportFormat::Json);
    } else if (format == "table") {
        char row[256];
        std::snprintf(row, sizeof row, "%-13s %-15s %-13s %-7s %-25s %s\n", "X", "b",
                      "sigma", "branch", "stability", "case");
        data += row;
        for (const auto& p : curve.points) {
            std::snprintf(row, sizeof row, "%-13s %-15s %-13s %-7d %-25s %c\n",
                          fmt8(p.X).c_str(), fmt8(p.b).c_str(), fmt8(p.sigma).c_str(),
                          p.branch_id, stability_label(p.stability).c_str(),
                          root_case_letter(p.kind));
            data += row;
        }
        for (const auto& g : curve.gaps)
            data += "gap: (" + fmt8(g.lo) + ", " + fmt8(g.hi) + ")\n";
    } else {
        data = export_curve(curve, ExportFormat::Csv);
    }
    write_output(output, data);
    std::cerr << "sweep: " << curve.points.size() << " points, " << curve.gaps.size()
              << " gaps\n";
    return 0;
}

int cmd_region(const SegmentShape& shape, const std::string& format,
               const std::string& output) {
    const NoSolutionRegion reg = no_solution_region(shape);
    const char* case_name = "";
    switch (reg.applicable_case) {
    case NoSolutionRegion::Case::AllNegativeX: case_name = "all-negative-X"; break;
    case NoSolutionRegion::Case::X1ToAxis: case_name = "X1-to-axis"; break;
    case NoSolutionRegion::Case::X1ToX2: case_name = "X1-to-X2"; break;
    case NoSolutionRegion::Case::Empty: case_name = "empty"; break;
    }
    std::string data;
    if (format == "json") {
        nlohmann::json j{{"a", reg.a},     {"a1", reg.a1}, {"gamma", reg.gamma},
                         {"delta", reg.delta}, {"X1", reg.X1}, {"X2", reg.X2},
                         {"case", case_name}};
        data = j.dump(2) + "\n";
    } else {
        data += "a     = " + fmt8(reg.a) + "\n";
        data += "a1    = " + fmt8(reg.a1) + "\n";
        data += "gamma = " + fmt8(reg.gamma) + "\n";
        data += "delta = " + fmt8(reg.delta) + "\n";
        data += "X1    = " + fmt8(reg.X1) + "\n";
        data += "X2    = " + fmt8(reg.X2) + "\n";
        data += std::string("case  = ") + case_name + "\n";
    }
    write_output(output, data);
    return 0;
}

int cmd_classify(const SegmentShape& shape, double X, double b, double sigma,
                 const std::string& format, const std::string& output) {
    const ConditionEval cond = evaluate_conditions(shape, WaterPlane(b, X), sigma);
    const PotentialEval pot = potential_nonarchimedean(shape, X, b, sigma);
    StabilityVerdict verdict;
    try {
        verdict = classify(pot.hessian, ProbeContext{shape, X, b, sigma});
    } catch (const ProbeError&) {
        verdict = classify(pot.hessian);
    }
    std::string data;
    if (format == "json") {
        nlohmann::json j{{"a", shape.a},
                         {"X", X},
                         {"b", b},
                         {"density", sigma},
                         {"E", cond.E},
                         {"F", cond.F},
                         {"gradient", {pot.dU_dX, pot.dU_db}},
                         {"hessian",
                          {{"h11", pot.hessian.h11},
                           {"h12", pot.hessian.h12},
                           {"h22", pot.hessian.h22}}},
                         {"lambda_min", verdict.lambda_min},
                         {"lambda_max", verdict.lambda_max},
                         {"stability", stability_label(verdict)}};
        if (verdict.degenerate_detail) {
            const auto& d = *verdict.degenerate_detail;
            j["degenerate"] = {{"cubic_coefficient", d.cubic_coefficient},
                               {"resolved",
                                d.resolved == DegenerateResolution::Unstable
                                    ? "unstable"
                                    : "inconclusive"}};
        }
        data = j.dump(2) + "\n";
    } else {
        data += "E           = " + fmt8(cond.E) + "\n";
        data += "F           = " + fmt8(cond.F) + "\n";
        data += "dU/dX       = " + fmt8(pot.dU_dX) + "\n";
        data += "dU/db       = " + fmt8(pot.dU_db) + "\n";
        data += "hessian     = [" + fmt8(pot.hessian.h11) + ", " + fmt8(pot.hessian.h12)
                + "; " + fmt8(pot.hessian.h12) + ", " + fmt8(pot.hessian.h22) + "]\n";
        data += "eigenvalues = (" + fmt8(verdict.lambda_min) + ", "
                + fmt8(verdict.lambda_max) + ")\n";
        data += "verdict     = " + stability_label(verdict) + "\n";
        if (verdict.degenerate_detail) {
            const auto& d = *verdict.degenerate_detail;
            data += "cubic       = " + fmt8(d.cubic_coefficient) + "\n";
        }
    }
    write_output(output, data);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"floating equilibria of a paraboloid segment"};
    app.require_subcommand(1);

    std::string format = "table";
    std::string output;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--output", output, "write data to a file instead of stdout");

    auto* solve = app.add_subcommand("solve", "find all floating equilibria");
    solve->fallthrough();
    ShapeArgs solve_shape;
    solve_shape.attach(solve);
    double density = 0.0;
    solve->add_option("--density", density, "relative density in (0,1)")->required();
    SearchOptions opts;
    solve->add_option("--step", opts.sweep_step, "sweep grid step");
    solve->add_flag("--refine,!--no-refine", opts.refine_steep,
                    "re-sample steep branch segments");
    solve->add_option("--tolerance", opts.residual_tol, "residual acceptance tolerance");

    auto* sweep = app.add_subcommand("sweep", "tabulate the equilibrium branches");
    sweep->fallthrough();
    ShapeArgs sweep_shape;
    sweep_shape.attach(sweep);
    double sweep_step = 0.01;
    bool sweep_refine = true;
    sweep->add_option("--step", sweep_step, "grid step in X");
    sweep->add_flag("--refine,!--no-refine", sweep_refine,
                    "re-sample steep branch segments");

    auto* region = app.add_subcommand("region", "closed-form no-solution interval");
    region->fallthrough();
    ShapeArgs region_shape;
    region_shape.attach(region);

    auto* classify_cmd = app.add_subcommand("classify", "stability at a given (X, b)");
    classify_cmd->fallthrough();
    ShapeArgs classify_shape;
    classify_shape.attach(classify_cmd);
    double cls_X = 0.0, cls_b = 0.0, cls_density = 0.0;
    classify_cmd->add_option("--X", cls_X, "waterline abscissa")->required();
    classify_cmd->add_option("--b", cls_b, "waterplane slope (b < 0)")->required();
    classify_cmd->add_option("--density", cls_density, "effective relative density")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(solve))
            return cmd_solve(solve_shape.resolve(solve), density, opts, format, output);
        if (app.got_subcommand(sweep))
            return cmd_sweep(sweep_shape.resolve(sweep), sweep_step, sweep_refine,
                             format, output);
        if (app.got_subcommand(region))
            return cmd_region(region_shape.resolve(region), format, output);
        if (app.got_subcommand(classify_cmd))
            return cmd_classify(classify_shape.resolve(classify_cmd), cls_X, cls_b,
                                cls_density, format, output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidDensity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IOError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
