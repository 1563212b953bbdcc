#pragma once

// Natural dimension by direct pressure sums and by the graph-directed
// route, Moran covers, box counting and chaos-game sampling.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iflab/pwl.hpp"
#include "iflab/regularity.hpp"

namespace iflab {

// Cylinder lengths |f_w(I)| / |I| for every word of length 1..depth;
// levels[n-1] holds the m^n lengths of level n.
struct CylinderLengths {
    std::vector<std::vector<double>> levels;
};

// Throws Error{BudgetExceeded} when m + m^2 + ... + m^depth does.
CylinderLengths cylinder_lengths(const Cplifs& sys, int depth, std::size_t budget = kDefaultBudget);

struct PressureEstimate {
    double s = 0.0;
    std::vector<std::pair<int, double>> per_depth;  // (n, (1/n) log S_n^s)
    double extrapolated = 0.0;                      // log S_depth - log S_{depth-1}
};

PressureEstimate pressure_direct(const CylinderLengths& lengths, double s);
PressureEstimate pressure_direct(const Cplifs& sys, double s, int depth, std::size_t budget = kDefaultBudget);

enum class DimensionMethod { DirectPressure, Spectral };

const char* to_string(DimensionMethod m);

struct DimensionReport {
    double s_f = 0.0;
    DimensionMethod method = DimensionMethod::DirectPressure;
    std::optional<double> alpha;
    std::optional<double> box_estimate;
    int depth = 0;  // direct method
    int order = 0;  // spectral method: the regularity order used
    std::vector<std::string> notes;
};

struct DimensionOptions {
    int depth = 12;
    double tol = 1e-12;  // bisection width in s
    RegularityOptions regularity;
    std::size_t budget = kDefaultBudget;
};

// Direct: root of the extrapolated pressure. Spectral: natural exponent of
// the associated GDIFS at the regularity order; throws Error{NotRegular}
// unless the system is Regular. Both throw Error{NotSmall}.
DimensionReport natural_dimension(const Cplifs& sys, DimensionMethod method, const DimensionOptions& opts = {});

// Root of sum rho_k^s = 1. Throws Error{NoRoot} when sum rho_k >= 1.
// A single ratio gives 0.
double s_star(const std::vector<double>& ratios);

struct MoranCover {
    double r = 0.0;
    std::vector<Word> words;
    std::size_t count = 0;
};

// Depth-first: a word is extended until its ratio product drops to r
// (relative slack 1e-12). Throws Error{Validation} unless 0 < r < 1 and
// every ratio is in (0, 1), Error{BudgetExceeded} on oversized covers.
MoranCover moran_cover(const std::vector<double>& ratios, double r, std::size_t budget = kDefaultBudget);

struct MoranBounds {
    double s_star = 0.0;
    double lower = 0.0;  // r^-s*
    double upper = 0.0;  // (rho_min r)^-s*
    bool ok = false;     // lower <= count < upper
};

MoranBounds moran_bounds(const std::vector<double>& ratios, const MoranCover& cover);

struct BoxEstimate {
    double estimate = 0.0;
    double residual = 0.0;  // root mean square of the fit
    std::vector<std::pair<double, std::size_t>> counts;  // (r, N(r))
};

// r = |I| 2^-k for k = 4..12, with |I| read as 1 when I is a point.
std::vector<double> default_box_scales(const Cplifs& sys);

// Covers the attractor by the cylinders of the Moran cover at r / |I| and
// counts half-open mesh cells [j r, (j + 1) r) meeting them. Throws
// Error{Validation} for fewer than 4 scales or scales not decreasing.
BoxEstimate box_dimension_estimate(const Cplifs& sys, const std::vector<double>& scales,
                                   std::size_t budget = kDefaultBudget);

// Chaos game from I.lo with 64 discarded steps and uniform map choice.
std::vector<double> sample_attractor(const Cplifs& sys, std::size_t n, std::uint64_t seed);

// Hausdorff distance between two finite point sets on the line.
double hausdorff_distance(std::vector<double> a, std::vector<double> b);
// Largest distance from a point to its nearest other point.
double max_nearest_neighbor_gap(std::vector<double> pts);

}  // namespace iflab
