#include "iflab/paramscan.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace iflab {

Axis parse_axis(const Cplifs& tmpl, const std::string& id) {
    static const std::regex bp(R"(b(\d+)\.(\d+))");
    static const std::regex tau(R"(tau(\d+))");
    std::smatch m;
    Axis a;
    a.id = id;
    if (std::regex_match(id, m, bp)) {
        a.kind = Axis::Kind::Breakpoint;
        a.map = std::stoi(m[1]) - 1;
        a.index = std::stoi(m[2]) - 1;
        if (a.map < 0 || a.map >= static_cast<int>(tmpl.size()) || a.index < 0 ||
            a.index >= static_cast<int>(tmpl[static_cast<std::size_t>(a.map)].breakpoints().size()))
            throw Error(ErrorKind::BadAxis, "no breakpoint " + id + " in this template");
        return a;
    }
    if (std::regex_match(id, m, tau)) {
        a.kind = Axis::Kind::Tau;
        a.map = std::stoi(m[1]) - 1;
        if (a.map < 0 || a.map >= static_cast<int>(tmpl.size()))
            throw Error(ErrorKind::BadAxis, "no map for axis " + id);
        return a;
    }
    throw Error(ErrorKind::BadAxis, "axis id '" + id + "' is neither b<k>.<q> nor tau<k>");
}

Cplifs with_parameter(const Cplifs& tmpl, const Axis& axis, double value) {
    std::vector<PiecewiseLinearMap> maps = tmpl.maps();
    const auto& f = maps[static_cast<std::size_t>(axis.map)];
    std::vector<double> b = f.breakpoints();
    double tau = f.tau();
    if (axis.kind == Axis::Kind::Breakpoint)
        b[static_cast<std::size_t>(axis.index)] = value;
    else
        tau = value;
    maps[static_cast<std::size_t>(axis.map)] = PiecewiseLinearMap(std::move(b), f.slopes(), tau);
    return Cplifs(std::move(maps));
}

double parameter_value(const Cplifs& tmpl, const Axis& axis) {
    const auto& f = tmpl[static_cast<std::size_t>(axis.map)];
    return axis.kind == Axis::Kind::Breakpoint ? f.breakpoints()[static_cast<std::size_t>(axis.index)] : f.tau();
}

double gamma_bound(const Cplifs& sys) { return sys.rho_max() / (1.0 - sys.rho_max()); }

const char* to_string(CellFlag f) {
    switch (f) {
        case CellFlag::Regular: return "regular";
        case CellFlag::Irregular: return "irregular";
        case CellFlag::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

double axis_lipschitz(const Cplifs& tmpl, const Axis& a) {
    const double k = 1.0 / (1.0 - tmpl.rho_max());
    if (a.kind == Axis::Kind::Tau) return k;
    const auto& s = tmpl[static_cast<std::size_t>(a.map)].slopes();
    const auto q = static_cast<std::size_t>(a.index);
    return std::abs(s[q] - s[q + 1]) * k + 1.0;
}

ScanCell scan_cell(const Cplifs& tmpl, const Axis& a1, const Axis& a2, double x, double y, double tol,
                   const ScanOptions& opts) {
    ScanCell cell;
    cell.x = x;
    cell.y = y;
    cell.tolerance = tol;
    try {
        const Cplifs sys = with_parameter(with_parameter(tmpl, a1, x), a2, y);
        if (!check_small(sys).small) {
            cell.note = "not small";
            return cell;
        }
        const Interval I = invariant_interval(sys);
        for (std::size_t k = 0; k < sys.size(); ++k) {
            const auto& b = sys[k].breakpoints();
            for (std::size_t q = 0; q < b.size(); ++q) {
                const Membership mem = point_in_attractor(sys, I, b[q], opts.probe_depth, tol, opts.cell_budget);
                if (mem.in) {
                    cell.flag = CellFlag::Irregular;
                    cell.breakpoint = BreakpointId{static_cast<int>(k), static_cast<int>(q), b[q]};
                    cell.witness = mem.witness;
                    return cell;
                }
            }
        }
        cell.flag = CellFlag::Regular;
    } catch (const Error& e) {
        cell.flag = CellFlag::Undetermined;
        cell.note = e.what();
    }
    return cell;
}

}  // namespace

ScanResult scan_regularity(const Cplifs& tmpl, const ScanOptions& opts) {
    if (opts.grid < 8) throw Error(ErrorKind::Validation, "grid size must be at least 8");
    if (!(opts.lo < opts.hi)) throw Error(ErrorKind::Validation, "scan range must satisfy U < V");
    ScanResult res;
    res.axis1 = parse_axis(tmpl, opts.axis1);
    res.axis2 = parse_axis(tmpl, opts.axis2);
    if (res.axis1.id == res.axis2.id) throw Error(ErrorKind::BadAxis, "the two axes must differ");
    res.lo = opts.lo;
    res.hi = opts.hi;
    res.grid = opts.grid;
    res.seed = opts.seed;
    res.h = (opts.hi - opts.lo) / opts.grid;

    const double tol = 0.5 * res.h * (axis_lipschitz(tmpl, res.axis1) + axis_lipschitz(tmpl, res.axis2));
    res.cells.reserve(static_cast<std::size_t>(opts.grid) * static_cast<std::size_t>(opts.grid));
    for (int i = 0; i < opts.grid; ++i)
        for (int j = 0; j < opts.grid; ++j) {
            const double x = opts.lo + (i + 0.5) * res.h;
            const double y = opts.lo + (j + 0.5) * res.h;
            res.cells.push_back(scan_cell(tmpl, res.axis1, res.axis2, x, y, tol, opts));
            if (res.cells.back().flag == CellFlag::Irregular) ++res.irregular;
            if (res.cells.back().flag == CellFlag::Undetermined) ++res.undetermined;
        }
    const std::size_t determined = res.cells.size() - res.undetermined;
    res.irregular_fraction = determined ? static_cast<double>(res.irregular) / static_cast<double>(determined) : 0.0;

    for (int c : {1, 2, 4}) {
        const int g = (opts.grid + c - 1) / c;
        std::vector<char> hit(static_cast<std::size_t>(g * g), 0);
        for (int i = 0; i < opts.grid; ++i)
            for (int j = 0; j < opts.grid; ++j)
                if (res.at(i, j).flag == CellFlag::Irregular) hit[static_cast<std::size_t>((i / c) * g + j / c)] = 1;
        res.mesh_counts.emplace_back(c * res.h, static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1)));
    }
    return res;
}

DerivativeCheck derivative_bounds_check(const Cplifs& tmpl, const Word& word, const std::string& parameter,
                                        double x, double h) {
    DerivativeCheck out;
    out.word = word;
    out.parameter = parameter;
    out.x = x;
    if (!(h > 0.0)) throw Error(ErrorKind::Validation, "step must be positive");
    Axis axis;
    try {
        axis = parse_axis(tmpl, parameter);
    } catch (const Error&) {
        out.skipped = true;
        out.reason = "no such parameter";
        return out;
    }
    out.bound = axis.kind == Axis::Kind::Tau ? 2.0 : gamma_bound(tmpl);
    const double p0 = parameter_value(tmpl, axis);
    double fm = 0.0, fp = 0.0;
    try {
        fm = eval_word(with_parameter(tmpl, axis, p0 - h), word, x);
        fp = eval_word(with_parameter(tmpl, axis, p0 + h), word, x);
    } catch (const Error&) {
        out.skipped = true;
        out.reason = "perturbed parameters are not valid";
        return out;
    }
    const double f0 = eval_word(tmpl, word, x);
    const double left = (f0 - fm) / h;
    const double right = (fp - f0) / h;
    if (std::abs(left - right) > 1e-6 * std::max(1.0, std::abs(left) + std::abs(right))) {
        out.skipped = true;
        out.reason = "not differentiable here";
        return out;
    }
    out.slope = (fp - fm) / (2.0 * h);
    out.pass = std::abs(out.slope) < out.bound + 10.0 * h;
    return out;
}

}  // namespace iflab
