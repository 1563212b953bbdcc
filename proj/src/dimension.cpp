#include "iflab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "iflab/gdifs.hpp"

namespace iflab {

const char* to_string(DimensionMethod m) {
    return m == DimensionMethod::Spectral ? "spectral" : "directPressure";
}

CylinderLengths cylinder_lengths(const Cplifs& sys, int depth, std::size_t budget) {
    if (depth < 1) throw Error(ErrorKind::Validation, "depth must be at least 1");
    const std::size_t m = sys.size();
    const Interval I = invariant_interval(sys);
    CylinderLengths out;
    if (I.degenerate()) return out;

    std::vector<Interval> level;
    for (std::size_t j = 0; j < m; ++j) level.push_back(image_interval(sys[j], I));
    std::size_t total = m;
    for (int n = 1;; ++n) {
        std::vector<double> len;
        len.reserve(level.size());
        for (const auto& c : level) len.push_back(c.length() / I.length());
        out.levels.push_back(std::move(len));
        if (n == depth) break;
        if (level.size() > budget / m || total + level.size() * m > budget)
            throw Error(ErrorKind::BudgetExceeded, "cylinder enumeration exceeds the budget at level " +
                                                       std::to_string(n + 1));
        // f_{j w}(I) = f_j(f_w(I))
        std::vector<Interval> next;
        next.reserve(level.size() * m);
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& c : level) next.push_back(image_interval(sys[j], c));
        total += next.size();
        level = std::move(next);
    }
    return out;
}

PressureEstimate pressure_direct(const CylinderLengths& lengths, double s) {
    PressureEstimate out;
    out.s = s;
    double prev = 0.0;
    for (std::size_t n = 0; n < lengths.levels.size(); ++n) {
        double sum = 0.0;
        for (double l : lengths.levels[n]) sum += std::pow(l, s);
        const double log_s = std::log(sum);
        out.per_depth.emplace_back(static_cast<int>(n + 1), log_s / static_cast<double>(n + 1));
        out.extrapolated = n == 0 ? log_s : log_s - prev;
        prev = log_s;
    }
    return out;
}

PressureEstimate pressure_direct(const Cplifs& sys, double s, int depth, std::size_t budget) {
    if (depth < 2) throw Error(ErrorKind::Validation, "pressure depth must be at least 2");
    return pressure_direct(cylinder_lengths(sys, depth, budget), s);
}

namespace {

DimensionReport direct_dimension(const Cplifs& sys, const DimensionOptions& opts) {
    DimensionReport rep;
    rep.method = DimensionMethod::DirectPressure;
    rep.depth = opts.depth;
    if (opts.depth < 2) throw Error(ErrorKind::Validation, "pressure depth must be at least 2");
    if (invariant_interval(sys).degenerate()) {
        rep.notes.push_back("invariant interval is a point");
        return rep;
    }
    const CylinderLengths lengths = cylinder_lengths(sys, opts.depth, opts.budget);
    auto pressure = [&](double s) { return pressure_direct(lengths, s).extrapolated; };

    double lo = 0.0, hi = 1.0;
    double p_lo = pressure(lo);
    if (p_lo <= 0.0) {
        rep.notes.push_back("pressure at s = 0 is not positive");
        return rep;
    }
    double p_hi = pressure(hi);
    while (p_hi >= 0.0) {
        lo = hi;
        p_lo = p_hi;
        hi *= 2.0;
        if (hi > 1e3) throw Error(ErrorKind::NoRoot, "pressure has no root below 1000");
        p_hi = pressure(hi);
    }
    bool monotone = true;
    while (hi - lo > opts.tol) {
        const double mid = 0.5 * (lo + hi);
        const double p = pressure(mid);
        if (p > p_lo || p < p_hi) monotone = false;
        if (p >= 0.0) {
            lo = mid;
            p_lo = p;
        } else {
            hi = mid;
            p_hi = p;
        }
    }
    if (!monotone) rep.notes.push_back("extrapolated pressure was not monotone during bisection");
    bool regular = false;
    try {
        regular = regularity_order(sys, opts.regularity).status == RegularityStatus::Regular;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
    if (!regular) rep.notes.push_back("system not verified Regular: the finite-depth pressure may converge slowly");
    rep.s_f = 0.5 * (lo + hi);
    return rep;
}

DimensionReport spectral_dimension(const Cplifs& sys, const DimensionOptions& opts) {
    DimensionReport rep;
    rep.method = DimensionMethod::Spectral;
    const RegularityResult reg = regularity_order(sys, opts.regularity);
    if (reg.status != RegularityStatus::Regular)
        throw Error(ErrorKind::NotRegular, std::string("the spectral method needs a Regular system; got ") +
                                               to_string(reg.status));
    rep.order = reg.order;
    if (invariant_interval(sys).degenerate()) {
        rep.notes.push_back("invariant interval is a point");
        rep.alpha = 0.0;
        return rep;
    }
    const AssociatedGdifs assoc = associate_gdifs(sys, reg.order, opts.budget);
    const NaturalExponent ne = natural_exponent(assoc.gdifs);
    if (ne.degenerate) rep.notes.push_back("natural exponent is degenerate (zero)");
    rep.alpha = ne.alpha;
    rep.s_f = ne.alpha;
    return rep;
}

}  // namespace

DimensionReport natural_dimension(const Cplifs& sys, DimensionMethod method, const DimensionOptions& opts) {
    if (!check_small(sys).small) throw Error(ErrorKind::NotSmall, "natural dimension needs a small system");
    return method == DimensionMethod::Spectral ? spectral_dimension(sys, opts) : direct_dimension(sys, opts);
}

double s_star(const std::vector<double>& ratios) {
    if (ratios.empty()) throw Error(ErrorKind::Validation, "no ratios given");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::Validation, "ratios must lie in (0,1)");
    if (ratios.size() == 1) return 0.0;
    auto f = [&](double s) {
        double sum = 0.0;
        for (double r : ratios) sum += std::pow(r, s);
        return sum - 1.0;
    };
    if (f(1.0) >= 0.0) throw Error(ErrorKind::NoRoot, "sum of ratios is at least 1");
    double lo = 0.0, hi = 1.0;
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) >= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

MoranCover moran_cover(const std::vector<double>& ratios, double r, std::size_t budget) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::Validation, "cover scale must lie in (0,1)");
    if (ratios.empty()) throw Error(ErrorKind::Validation, "no ratios given");
    for (double x : ratios)
        if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::Validation, "ratios must lie in (0,1)");
    const double limit = r * (1.0 + 1e-12);
    MoranCover out;
    out.r = r;
    struct Node {
        Word word;
        double product;
    };
    std::vector<Node> stack;
    for (int k = static_cast<int>(ratios.size()) - 1; k >= 0; --k)
        stack.push_back({Word{k}, ratios[static_cast<std::size_t>(k)]});
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (node.product <= limit) {
            if (out.words.size() >= budget) throw Error(ErrorKind::BudgetExceeded, "Moran cover exceeds the budget");
            out.words.push_back(std::move(node.word));
            continue;
        }
        for (int k = static_cast<int>(ratios.size()) - 1; k >= 0; --k) {
            Word w = node.word;
            w.push_back(k);
            stack.push_back({std::move(w), node.product * ratios[static_cast<std::size_t>(k)]});
        }
    }
    out.count = out.words.size();
    return out;
}

MoranBounds moran_bounds(const std::vector<double>& ratios, const MoranCover& cover) {
    MoranBounds b;
    b.s_star = s_star(ratios);
    const double rho_min = *std::min_element(ratios.begin(), ratios.end());
    b.lower = std::pow(cover.r, -b.s_star);
    b.upper = std::pow(rho_min * cover.r, -b.s_star);
    const auto c = static_cast<double>(cover.count);
    b.ok = b.lower <= c && c < b.upper;
    return b;
}

std::vector<double> default_box_scales(const Cplifs& sys) {
    const Interval I = invariant_interval(sys);
    // a single-point attractor has no natural length scale
    const double len = I.degenerate() ? 1.0 : I.length();
    std::vector<double> out;
    for (int k = 4; k <= 12; ++k) out.push_back(len * std::ldexp(1.0, -k));
    return out;
}

BoxEstimate box_dimension_estimate(const Cplifs& sys, const std::vector<double>& scales, std::size_t budget) {
    if (scales.size() < 4) throw Error(ErrorKind::Validation, "box counting needs at least 4 scales");
    for (std::size_t i = 0; i < scales.size(); ++i)
        if (!(scales[i] > 0.0) || (i > 0 && !(scales[i] < scales[i - 1])))
            throw Error(ErrorKind::Validation, "scales must be positive and strictly decreasing");
    BoxEstimate out;
    const Interval I = invariant_interval(sys);
    if (I.degenerate()) {
        for (double r : scales) out.counts.emplace_back(r, 1);
        return out;
    }
    for (double r : scales) {
        std::vector<std::pair<long long, long long>> cells;
        if (r >= I.length()) {
            cells.emplace_back(static_cast<long long>(std::floor(I.lo / r)),
                               static_cast<long long>(std::floor(I.hi / r)));
        } else {
            const MoranCover cover = moran_cover(sys.rho(), r / I.length(), budget);
            // A cell that a cylinder only touches at an endpoint (up to
            // rounding) is not counted.
            constexpr double kTouch = 1e-9;
            for (const auto& w : cover.words) {
                const Interval c = cylinder(sys, w, I);
                const auto a = static_cast<long long>(std::floor(c.lo / r + kTouch));
                const auto b = static_cast<long long>(std::floor(c.hi / r - kTouch));
                cells.emplace_back(a, std::max(a, b));
            }
        }
        std::sort(cells.begin(), cells.end());
        std::size_t count = 0;
        long long covered = std::numeric_limits<long long>::min();
        for (auto [a, b] : cells) {
            a = std::max(a, covered + 1);
            if (b >= a) {
                count += static_cast<std::size_t>(b - a + 1);
                covered = b;
            }
        }
        out.counts.emplace_back(r, count);
    }
    std::vector<double> xs, ys;
    for (auto [r, n] : out.counts) {
        xs.push_back(-std::log(r));
        ys.push_back(std::log(static_cast<double>(n)));
    }
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.estimate = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (my + out.estimate * (xs[i] - mx));
        ss += e * e;
    }
    out.residual = std::sqrt(ss / k);
    return out;
}

std::vector<double> sample_attractor(const Cplifs& sys, std::size_t n, std::uint64_t seed) {
    constexpr int kBurnIn = 64;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sys.size() - 1);
    double x = invariant_interval(sys).lo;
    for (int i = 0; i < kBurnIn; ++i) x = sys[pick(rng)](x);
    std::vector<double> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x = sys[pick(rng)](x);
        pts.push_back(x);
    }
    return pts;
}

namespace {

double nearest(const std::vector<double>& sorted, double x) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    double d = INFINITY;
    if (it != sorted.end()) d = *it - x;
    if (it != sorted.begin()) d = std::min(d, x - *std::prev(it));
    return d;
}

}  // namespace

double hausdorff_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorKind::Validation, "Hausdorff distance of an empty set");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    for (double x : a) d = std::max(d, nearest(b, x));
    for (double x : b) d = std::max(d, nearest(a, x));
    return d;
}

double max_nearest_neighbor_gap(std::vector<double> pts) {
    if (pts.size() < 2) return 0.0;
    std::sort(pts.begin(), pts.end());
    double gap = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double d = INFINITY;
        if (i > 0) d = pts[i] - pts[i - 1];
        if (i + 1 < pts.size()) d = std::min(d, pts[i + 1] - pts[i]);
        gap = std::max(gap, d);
    }
    return gap;
}

}  // namespace iflab
