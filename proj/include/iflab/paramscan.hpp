#pragma once

// Two-dimensional slices of the (breakpoint, translation) parameter space
// with the slopes held fixed, and finite-difference checks of how
// compositions depend on those parameters.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iflab/generated.hpp"
#include "iflab/pwl.hpp"
#include "iflab/regularity.hpp"

namespace iflab {

// "b<k>.<q>" is breakpoint q of map k, "tau<k>" the translation of map k,
// both 1-based.
struct Axis {
    enum class Kind { Breakpoint, Tau };
    Kind kind = Kind::Tau;
    int map = 0;    // 0-based
    int index = 0;  // 0-based; breakpoints only
    std::string id;
};

// Throws Error{BadAxis} for malformed ids or ids the template lacks.
Axis parse_axis(const Cplifs& tmpl, const std::string& id);

// Returns the template with one parameter replaced; throws Error{Validation}
// when the result is not a valid CPLIFS.
Cplifs with_parameter(const Cplifs& tmpl, const Axis& axis, double value);
double parameter_value(const Cplifs& tmpl, const Axis& axis);

// rho_max / (1 - rho_max)
double gamma_bound(const Cplifs& sys);

enum class CellFlag { Regular, Irregular, Undetermined };

const char* to_string(CellFlag f);

struct ScanCell {
    CellFlag flag = CellFlag::Undetermined;
    double x = 0.0;  // axis 1 value at the centre
    double y = 0.0;  // axis 2 value at the centre
    // Breakpoint-to-attractor distance below which the cell is flagged.
    double tolerance = 0.0;
    std::optional<BreakpointId> breakpoint;
    Word witness;
    std::string note;
};

struct ScanOptions {
    std::string axis1 = "b1.1";
    std::string axis2 = "tau1";
    double lo = 0.0;
    double hi = 1.0;
    int grid = 64;
    int probe_depth = 40;
    std::uint64_t seed = 0;       // recorded only: the scan is deterministic
    std::size_t cell_budget = 200'000;
};

struct ScanResult {
    Axis axis1;
    Axis axis2;
    double lo = 0.0;
    double hi = 1.0;
    int grid = 0;
    double h = 0.0;
    std::uint64_t seed = 0;
    std::vector<ScanCell> cells;  // row-major: index i * grid + j, i along axis 1
    std::size_t irregular = 0;
    std::size_t undetermined = 0;
    double irregular_fraction = 0.0;  // among determined cells
    std::vector<std::pair<double, std::size_t>> mesh_counts;  // (cell size, flagged)

    const ScanCell& at(int i, int j) const { return cells[static_cast<std::size_t>(i * grid + j)]; }
};

// Each cell is tested at its centre with a tolerance large enough to cover
// every parameter in the cell: the attractor moves by at most
// |jump in slope| / (1 - rho_max) per unit of breakpoint shift and
// 1 / (1 - rho_max) per unit of translation shift, and a breakpoint axis
// moves the breakpoint itself. A cell holding an irregular parameter is
// therefore always flagged.
ScanResult scan_regularity(const Cplifs& tmpl, const ScanOptions& opts);

struct DerivativeCheck {
    Word word;
    std::string parameter;
    double x = 0.0;
    double slope = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string reason;
};

// Central difference of f_word(x) in one parameter with step h. Skipped
// when the parameter does not exist, the perturbed system is invalid, or
// the left and right differences disagree (a kink).
DerivativeCheck derivative_bounds_check(const Cplifs& tmpl, const Word& word, const std::string& parameter,
                                        double x, double h);

}  // namespace iflab
