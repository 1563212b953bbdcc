#pragma once

// Regularity of small CPLIFS: the least level N at which no cylinder
// interval contains a breakpoint, irregularity witnesses, bounded-distortion
// constants and approximate attractor membership.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iflab/pwl.hpp"

namespace iflab {

enum class RegularityStatus { Regular, Irregular, Undetermined };

const char* to_string(RegularityStatus s);

struct BreakpointId {
    int map = 0;    // 0-based
    int index = 0;  // 0-based position among the map's breakpoints
    double value = 0.0;
};

struct Membership {
    bool in = false;
    // When in: x is within this distance of the attractor.
    double resolution = 0.0;
    // When in: a chain whose prefixes all have cylinders containing x.
    Word witness;
};

struct IrregularWitness {
    BreakpointId breakpoint;
    Word chain;
    // True only for the exact fixed-point coincidence f_k(b) = b.
    bool certified = false;
};

struct BreakpointVerdict {
    BreakpointId breakpoint;
    bool inside_invariant_interval = false;
    Membership membership;
};

struct RegularityResult {
    RegularityStatus status = RegularityStatus::Undetermined;
    int order = 0;  // meaningful when Regular
    std::optional<IrregularWitness> witness;
    int max_order_tried = 0;
    std::vector<BreakpointVerdict> breakpoints;
    std::string note;
};

struct RegularityOptions {
    int max_order = 0;  // 0 selects default_max_order(m)
    int probe_depth = 40;
    std::size_t budget = kDefaultBudget;
    // Irregularity is reported once the nested chain is narrower than
    // membership_tol * |I|.
    double membership_tol = 1e-9;
};

// Largest N with m^N <= 4096.
int default_max_order(std::size_t m);

// Throws Error{NotSmall} for systems that are not small and
// Error{BudgetExceeded} when m^maxOrder or an offending set exceeds the budget.
RegularityResult regularity_order(const Cplifs& sys, const RegularityOptions& opts = {});

struct BdpConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    int n = 0;
};

BdpConstants bdp_constants(const Cplifs& sys, int order);

// Searches for a chain of `depth` nested cylinders each within `tol` of x.
// An Out answer with tol = 0 is exact: x lies in no level-depth cylinder.
Membership point_in_attractor(const Cplifs& sys, const Interval& I, double x, int depth, double tol = 0.0,
                              std::size_t budget = kDefaultBudget);
Membership point_in_attractor(const Cplifs& sys, double x, int depth, double tol = 0.0,
                              std::size_t budget = kDefaultBudget);

}  // namespace iflab
