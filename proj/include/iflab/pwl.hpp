#pragma once

// Continuous piecewise-linear contractions of the real line and the systems
// (CPLIFS) they form.

#include <cstddef>
#include <span>
#include <vector>

#include "iflab/error.hpp"

namespace iflab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool degenerate() const { return lo == hi; }
    // Closed containment, optionally inflated by `tol` on both sides.
    bool contains(double x, double tol = 0.0) const { return lo - tol <= x && x <= hi + tol; }
    bool contains(const Interval& other, double tol = 0.0) const {
        return lo - tol <= other.lo && other.hi <= hi + tol;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

Interval hull(const Interval& a, const Interval& b);

// A word (i1, ..., in) addresses the composition f_{i1} o ... o f_{in}.
// Letters are 0-based map indices; reports print them 1-based.
using Word = std::vector<int>;

class PiecewiseLinearMap {
public:
    // Throws Error{Validation} unless breakpoints are strictly increasing,
    // there is exactly one more slope than breakpoints, every slope lies in
    // (-1, 1) \ {0} and adjacent slopes differ.
    PiecewiseLinearMap(std::vector<double> breakpoints, std::vector<double> slopes, double tau);

    static PiecewiseLinearMap similarity(double ratio, double translation);

    double operator()(double x) const;

    // Index i of the linearity interval J_i containing x. A point sitting
    // exactly on breakpoint b_i is assigned to the piece to its right.
    std::size_t piece_index(double x) const;
    double slope_at(double x) const { return slopes_[piece_index(x)]; }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& slopes() const { return slopes_; }
    // Translation parts t_i with f(x) = slopes[i] * x + offsets[i] on J_i.
    const std::vector<double>& offsets() const { return offsets_; }
    double tau() const { return tau_; }
    std::size_t piece_count() const { return slopes_.size(); }

    double max_abs_slope() const;
    double min_abs_slope() const;
    bool injective() const;
    // Unique fixed point of the contraction.
    double fixed_point() const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> slopes_;
    std::vector<double> offsets_;
    double tau_;
};

// The exact image {f(x) : x in J}.
Interval image_interval(const PiecewiseLinearMap& f, const Interval& J);

class Cplifs {
public:
    explicit Cplifs(std::vector<PiecewiseLinearMap> maps);

    std::size_t size() const { return maps_.size(); }
    const PiecewiseLinearMap& operator[](std::size_t k) const { return maps_[k]; }
    const std::vector<PiecewiseLinearMap>& maps() const { return maps_; }

    // l(k): breakpoint count per map.
    std::vector<std::size_t> type_vector() const;
    std::size_t total_breakpoints() const;  // L
    // rho_k = max_i |rho_{k,i}|
    const std::vector<double>& rho() const { return rho_; }
    double rho_max() const { return rho_max_; }
    // Smallest absolute slope over every piece of every map.
    double rho_min() const { return rho_min_; }

private:
    std::vector<PiecewiseLinearMap> maps_;
    std::vector<double> rho_;
    double rho_max_ = 0.0;
    double rho_min_ = 1.0;
};

// f_{w1} o ... o f_{wn}(x)
double eval_word(const Cplifs& sys, std::span<const int> w, double x);
// Derivative of the composition at x by the chain rule. At a breakpoint the
// slope of the piece to the right is used.
double derivative_word(const Cplifs& sys, std::span<const int> w, double x);

struct InvariantIntervalOptions {
    double tol = 1e-12;
    int max_iterations = 10'000;
};

// Smallest compact interval mapped into itself by every map, obtained by the
// increasing hull iteration seeded with the maps' fixed points. Throws
// Error{NonConvergence} when the cap is hit.
Interval invariant_interval(const Cplifs& sys, const InvariantIntervalOptions& opts = {});

// f_w(I) computed by repeated exact interval images, innermost letter first.
Interval cylinder(const Cplifs& sys, std::span<const int> w, const Interval& I);

struct PerMapBound {
    bool injective = true;
    double required = 0.0;  // rho_k must be strictly below this
    double actual = 0.0;
    bool ok = false;
};

struct SmallnessReport {
    double sum_rho = 0.0;
    std::vector<PerMapBound> per_map;
    bool small = false;
};

SmallnessReport check_small(const Cplifs& sys);

}  // namespace iflab
