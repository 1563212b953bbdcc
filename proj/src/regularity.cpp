#include "iflab/regularity.hpp"

#include <cmath>
#include <limits>

namespace iflab {

const char* to_string(RegularityStatus s) {
    switch (s) {
        case RegularityStatus::Regular: return "Regular";
        case RegularityStatus::Irregular: return "Irregular";
        case RegularityStatus::Undetermined: return "Undetermined";
    }
    return "?";
}

int default_max_order(std::size_t m) {
    if (m <= 1) return 12;
    int n = 0;
    std::size_t count = 1;
    while (count * m <= 4096) {
        count *= m;
        ++n;
    }
    return std::max(n, 1);
}

namespace {

std::size_t checked_power(std::size_t base, int exp, std::size_t cap) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / std::max<std::size_t>(base, 1)) return cap + 1;
        v *= base;
    }
    return v;
}

std::vector<BreakpointId> all_breakpoints(const Cplifs& sys) {
    std::vector<BreakpointId> out;
    for (std::size_t k = 0; k < sys.size(); ++k) {
        const auto& b = sys[k].breakpoints();
        for (std::size_t q = 0; q < b.size(); ++q)
            out.push_back({static_cast<int>(k), static_cast<int>(q), b[q]});
    }
    return out;
}

struct Offending {
    Word word;
    std::size_t breakpoint;  // index into the tracked breakpoint list
};

}  // namespace

Membership point_in_attractor(const Cplifs& sys, const Interval& I, double x, int depth, double tol,
                              std::size_t budget) {
    Membership out;
    if (!I.contains(x, tol)) return out;
    const double resolution = std::pow(sys.rho_max(), depth) * I.length() + tol;
    if (depth <= 0) {
        out.in = true;
        out.resolution = I.length() + tol;
        return out;
    }
    const int m = static_cast<int>(sys.size());
    // Depth-first over prefixes; next[p] is the next letter to try at depth p.
    Word word;
    std::vector<int> next{0};
    std::size_t nodes = 0;
    while (!next.empty()) {
        const std::size_t p = next.size() - 1;
        if (next[p] == m) {
            next.pop_back();
            if (!word.empty()) word.pop_back();
            continue;
        }
        word.push_back(next[p]++);
        if (++nodes > budget) throw Error(ErrorKind::BudgetExceeded, "attractor membership search exceeded budget");
        if (cylinder(sys, word, I).contains(x, tol)) {
            if (static_cast<int>(word.size()) == depth) {
                out.in = true;
                out.resolution = resolution;
                out.witness = word;
                return out;
            }
            next.push_back(0);
        } else {
            word.pop_back();
        }
    }
    return out;
}

Membership point_in_attractor(const Cplifs& sys, double x, int depth, double tol, std::size_t budget) {
    return point_in_attractor(sys, invariant_interval(sys), x, depth, tol, budget);
}

RegularityResult regularity_order(const Cplifs& sys, const RegularityOptions& opts) {
    if (!check_small(sys).small) throw Error(ErrorKind::NotSmall, "regularity is defined for small systems only");
    const int max_order = opts.max_order > 0 ? opts.max_order : default_max_order(sys.size());
    if (opts.probe_depth < 1) throw Error(ErrorKind::Validation, "probe depth must be at least 1");
    if (checked_power(sys.size(), max_order, opts.budget) > opts.budget)
        throw Error(ErrorKind::BudgetExceeded, "m^maxOrder exceeds the enumeration budget");

    RegularityResult res;
    res.max_order_tried = max_order;
    const Interval I = invariant_interval(sys);

    // Breakpoints outside I never meet a cylinder.
    std::vector<BreakpointId> tracked;
    for (const auto& b : all_breakpoints(sys)) {
        BreakpointVerdict v;
        v.breakpoint = b;
        v.inside_invariant_interval = I.contains(b.value);
        if (v.inside_invariant_interval) {
            v.membership = point_in_attractor(sys, I, b.value, opts.probe_depth, 0.0, opts.budget);
            tracked.push_back(b);
        }
        res.breakpoints.push_back(v);
    }

    // A breakpoint that is the fixed point of its own map lies in the
    // attractor; this is the one exactly certified case. Rounding may put
    // such a point just outside the computed I, so all breakpoints count.
    for (const auto& b : all_breakpoints(sys)) {
        const auto& f = sys[static_cast<std::size_t>(b.map)];
        const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b.value));
        if (std::abs(f(b.value) - b.value) <= slack) {
            res.status = RegularityStatus::Irregular;
            res.witness = IrregularWitness{b, Word(static_cast<std::size_t>(opts.probe_depth), b.map), true};
            res.note = "breakpoint coincides with the fixed point of its map";
            return res;
        }
    }

    const double width_limit = opts.membership_tol * I.length();
    std::vector<Offending> frontier;
    auto consider = [&](Word w) {
        const Interval c = cylinder(sys, w, I);
        for (std::size_t i = 0; i < tracked.size(); ++i)
            if (c.contains(tracked[i].value)) {
                frontier.push_back({std::move(w), i});
                return;
            }
    };
    for (int j = 0; j < static_cast<int>(sys.size()); ++j) consider(Word{j});

    for (int n = 1;; ++n) {
        if (frontier.empty()) {
            if (n <= max_order) {
                res.status = RegularityStatus::Regular;
                res.order = n;
            } else {
                res.status = RegularityStatus::Undetermined;
                res.note = "no breakpoint in any level-" + std::to_string(n) +
                           " cylinder, but that level is beyond maxOrder";
            }
            return res;
        }
        if (n >= opts.probe_depth) {
            const double width = std::pow(sys.rho_max(), n) * I.length();
            if (width < width_limit || I.degenerate()) {
                res.status = RegularityStatus::Irregular;
                res.witness = IrregularWitness{tracked[frontier.front().breakpoint], frontier.front().word, false};
                res.note = "breakpoint stays inside nested cylinders to the probe depth";
            } else {
                res.status = RegularityStatus::Undetermined;
                res.note = "offending cylinders persist but are wider than the membership tolerance";
            }
            return res;
        }
        std::vector<Offending> current;
        current.swap(frontier);
        for (const auto& o : current) {
            for (int j = 0; j < static_cast<int>(sys.size()); ++j) {
                Word w = o.word;
                w.push_back(j);
                consider(std::move(w));
            }
            if (frontier.size() > opts.budget)
                throw Error(ErrorKind::BudgetExceeded, "offending cylinder set exceeds the budget");
        }
    }
}

BdpConstants bdp_constants(const Cplifs& sys, int order) {
    if (order < 1) throw Error(ErrorKind::Validation, "order must be at least 1");
    const double lo = std::pow(sys.rho_min(), order);
    return {lo / sys.rho_max(), sys.rho_max() / lo, order};
}

}  // namespace iflab
