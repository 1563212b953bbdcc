#include "iflab/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace iflab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation: return "ValidationError";
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NotSmall: return "NotSmall";
        case ErrorKind::NotRegular: return "NotRegular";
        case ErrorKind::NotStronglyConnected: return "NotStronglyConnected";
        case ErrorKind::BadRatio: return "BadRatio";
        case ErrorKind::Reducible: return "Reducible";
        case ErrorKind::NoRoot: return "NoRoot";
        case ErrorKind::BadAxis: return "BadAxis";
    }
    return "Error";
}

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::Validation, msg); }

}  // namespace

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<double> breakpoints, std::vector<double> slopes,
                                       double tau)
    : breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)), tau_(tau) {
    if (slopes_.size() != breakpoints_.size() + 1) {
        std::ostringstream os;
        os << "expected " << breakpoints_.size() + 1 << " slopes for " << breakpoints_.size()
           << " breakpoints, got " << slopes_.size();
        invalid(os.str());
    }
    if (!std::isfinite(tau_)) invalid("tau must be finite");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i])) invalid("breakpoints must be finite");
        if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))
            invalid("breakpoints must be strictly increasing");
    }
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        const double s = slopes_[i];
        if (!std::isfinite(s) || s == 0.0 || std::abs(s) >= 1.0)
            invalid("every slope must lie in (-1,1) and be nonzero");
        if (i > 0 && slopes_[i - 1] == s)
            invalid("adjacent slopes must differ (otherwise the breakpoint is not a breakpoint)");
    }

    // Translations by continuity, propagated outward from the piece that
    // contains 0 where t = tau.
    offsets_.assign(slopes_.size(), 0.0);
    const std::size_t z = piece_index(0.0);
    offsets_[z] = tau_;
    for (std::size_t i = z; i + 1 < slopes_.size(); ++i)
        offsets_[i + 1] = offsets_[i] + breakpoints_[i] * (slopes_[i] - slopes_[i + 1]);
    for (std::size_t i = z; i > 0; --i)
        offsets_[i - 1] = offsets_[i] + breakpoints_[i - 1] * (slopes_[i] - slopes_[i - 1]);
}

PiecewiseLinearMap PiecewiseLinearMap::similarity(double ratio, double translation) {
    return PiecewiseLinearMap({}, {ratio}, translation);
}

std::size_t PiecewiseLinearMap::piece_index(double x) const {
    return static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
}

double PiecewiseLinearMap::operator()(double x) const {
    const std::size_t i = piece_index(x);
    return slopes_[i] * x + offsets_[i];
}

double PiecewiseLinearMap::max_abs_slope() const {
    double m = 0.0;
    for (double s : slopes_) m = std::max(m, std::abs(s));
    return m;
}

double PiecewiseLinearMap::min_abs_slope() const {
    double m = 1.0;
    for (double s : slopes_) m = std::min(m, std::abs(s));
    return m;
}

bool PiecewiseLinearMap::injective() const {
    const bool pos = std::all_of(slopes_.begin(), slopes_.end(), [](double s) { return s > 0; });
    const bool neg = std::all_of(slopes_.begin(), slopes_.end(), [](double s) { return s < 0; });
    return pos || neg;
}

double PiecewiseLinearMap::fixed_point() const {
    // The fixed point of the piece similarity that lands in its own piece.
    double best = 0.0;
    double best_miss = INFINITY;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        const double x = offsets_[i] / (1.0 - slopes_[i]);
        const double left = i == 0 ? -INFINITY : breakpoints_[i - 1];
        const double right = i == breakpoints_.size() ? INFINITY : breakpoints_[i];
        const double miss = std::max({0.0, left - x, x - right});
        if (miss < best_miss) {
            best_miss = miss;
            best = x;
        }
    }
    return best;
}

Interval image_interval(const PiecewiseLinearMap& f, const Interval& J) {
    const double a = f(J.lo);
    const double b = f(J.hi);
    Interval out{std::min(a, b), std::max(a, b)};
    const auto& bps = f.breakpoints();
    auto it = std::upper_bound(bps.begin(), bps.end(), J.lo);
    for (; it != bps.end() && *it < J.hi; ++it) {
        const double v = f(*it);
        out.lo = std::min(out.lo, v);
        out.hi = std::max(out.hi, v);
    }
    return out;
}

Cplifs::Cplifs(std::vector<PiecewiseLinearMap> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw Error(ErrorKind::Validation, "a CPLIFS needs at least one map");
    for (const auto& f : maps_) {
        rho_.push_back(f.max_abs_slope());
        rho_max_ = std::max(rho_max_, rho_.back());
        rho_min_ = std::min(rho_min_, f.min_abs_slope());
    }
}

std::vector<std::size_t> Cplifs::type_vector() const {
    std::vector<std::size_t> out;
    for (const auto& f : maps_) out.push_back(f.breakpoints().size());
    return out;
}

std::size_t Cplifs::total_breakpoints() const {
    std::size_t n = 0;
    for (const auto& f : maps_) n += f.breakpoints().size();
    return n;
}

double eval_word(const Cplifs& sys, std::span<const int> w, double x) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = sys[*it](x);
    return x;
}

double derivative_word(const Cplifs& sys, std::span<const int> w, double x) {
    double d = 1.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        d *= sys[*it].slope_at(x);
        x = sys[*it](x);
    }
    return d;
}

Interval invariant_interval(const Cplifs& sys, const InvariantIntervalOptions& opts) {
    double seed = sys[0].fixed_point();
    Interval J{seed, seed};
    for (const auto& f : sys.maps()) {
        const double x = f.fixed_point();
        J = hull(J, {x, x});
    }
    for (int it = 0; it < opts.max_iterations; ++it) {
        Interval next = J;
        for (const auto& f : sys.maps()) next = hull(next, image_interval(f, J));
        const double growth = std::max(J.lo - next.lo, next.hi - J.hi);
        J = next;
        if (growth <= opts.tol) {
            // Polish to the floating-point fixed point of the hull map; the
            // sequence is monotone so this terminates quickly.
            for (int extra = 0; extra < 200; ++extra) {
                Interval again = J;
                for (const auto& f : sys.maps()) again = hull(again, image_interval(f, J));
                if (again == J) break;
                J = again;
            }
            return J;
        }
    }
    throw Error(ErrorKind::NonConvergence, "invariant interval iteration did not converge");
}

Interval cylinder(const Cplifs& sys, std::span<const int> w, const Interval& I) {
    Interval J = I;
    for (auto it = w.rbegin(); it != w.rend(); ++it) J = image_interval(sys[*it], J);
    return J;
}

SmallnessReport check_small(const Cplifs& sys) {
    SmallnessReport rep;
    bool all_ok = true;
    for (std::size_t k = 0; k < sys.size(); ++k) {
        PerMapBound b;
        b.injective = sys[k].injective();
        b.actual = sys.rho()[k];
        // rho_max is taken over the whole system, map k included.
        b.required = b.injective ? 0.5 : (1.0 - sys.rho_max()) / 2.0;
        b.ok = b.actual < b.required;
        all_ok = all_ok && b.ok;
        rep.sum_rho += b.actual;
        rep.per_map.push_back(b);
    }
    rep.small = rep.sum_rho < 1.0 && all_ok;
    return rep;
}

}  // namespace iflab
