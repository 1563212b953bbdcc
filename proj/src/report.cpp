#include "iflab/report.hpp"

#include <cmath>

namespace iflab {

using nlohmann::json;

json word_json(const Word& w) {
    json a = json::array();
    for (int c : w) a.push_back(c + 1);
    return a;
}

json to_json(const SmallnessReport& r) {
    json maps = json::array();
    for (const auto& b : r.per_map)
        maps.push_back({{"injective", b.injective}, {"rho", b.actual}, {"required", b.required}, {"ok", b.ok}});
    return {{"small", r.small}, {"sumRho", r.sum_rho}, {"maps", maps}};
}

namespace {

json breakpoint_json(const BreakpointId& b) {
    return {{"map", b.map + 1}, {"index", b.index + 1}, {"value", b.value}};
}

}  // namespace

json to_json(const RegularityResult& r) {
    json j{{"status", to_string(r.status)}, {"maxOrderTried", r.max_order_tried}};
    if (r.status == RegularityStatus::Regular) j["order"] = r.order;
    if (r.witness)
        j["witness"] = {{"breakpoint", breakpoint_json(r.witness->breakpoint)},
                        {"chain", word_json(r.witness->chain)},
                        {"certified", r.witness->certified}};
    json bps = json::array();
    for (const auto& v : r.breakpoints) {
        json b{{"breakpoint", breakpoint_json(v.breakpoint)}, {"insideInvariantInterval", v.inside_invariant_interval},
               {"inAttractor", v.membership.in}};
        if (v.membership.in) b["resolution"] = v.membership.resolution;
        bps.push_back(b);
    }
    j["breakpoints"] = bps;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json to_json(const DimensionReport& r) {
    json j{{"sF", r.s_f}, {"method", to_string(r.method)}, {"notes", r.notes}};
    if (r.method == DimensionMethod::DirectPressure) j["depth"] = r.depth;
    if (r.method == DimensionMethod::Spectral) j["order"] = r.order;
    if (r.alpha) j["alpha"] = *r.alpha;
    if (r.box_estimate) j["boxEstimate"] = *r.box_estimate;
    return j;
}

json to_json(const EscReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        json e{{"n", l.n}, {"pairs", l.pair_count}};
        e["minDistance"] = std::isfinite(l.min_distance) ? json(l.min_distance) : json(nullptr);
        if (l.exact_min_distance) e["exactMinDistance"] = *l.exact_min_distance;
        levels.push_back(e);
    }
    json wit = json::array();
    for (const auto& w : r.zero_witnesses)
        wit.push_back({{"level", w.level}, {"first", word_json(w.first)}, {"second", word_json(w.second)}});
    json j{{"levels", levels}, {"zeroWitnesses", wit}, {"warnings", r.warnings}};
    j["fittedC"] = r.fitted_c ? json(*r.fitted_c) : json(nullptr);
    return j;
}

json to_json(const BoxEstimate& r) {
    json counts = json::array();
    for (auto [scale, n] : r.counts) counts.push_back({{"r", scale}, {"count", n}});
    return {{"estimate", r.estimate}, {"residual", r.residual}, {"counts", counts}};
}

json to_json(const MarkovMeasure& m) {
    json P = json::array();
    for (std::size_t i = 0; i < m.P.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.P.cols(); ++k) row.push_back(m.P(i, k));
        P.push_back(row);
    }
    return {{"alpha", m.alpha}, {"perronRoot", m.lambda}, {"u", m.u}, {"v", m.v}, {"P", P}, {"p", m.p}};
}

json to_json(const SandwichCheck& s) {
    return {{"c1", s.constants.c1}, {"c2", s.constants.c2}, {"chains", s.chains},
            {"violations", s.violations}, {"minRatio", s.min_ratio}, {"maxRatio", s.max_ratio}};
}

json to_json(const ScanResult& s) {
    json mesh = json::array();
    for (auto [size, n] : s.mesh_counts) mesh.push_back({{"cellSize", size}, {"flagged", n}});
    return {{"axis1", s.axis1.id},
            {"axis2", s.axis2.id},
            {"range", {s.lo, s.hi}},
            {"grid", s.grid},
            {"cellSize", s.h},
            {"seed", s.seed},
            {"irregular", s.irregular},
            {"undetermined", s.undetermined},
            {"irregularFraction", s.irregular_fraction},
            {"meshCounts", mesh}};
}

json to_json(const RunReport& r) {
    json j{{"command", r.command}, {"arguments", r.arguments}, {"configDigest", r.digest},
           {"results", r.results}, {"warnings", r.warnings}};
    if (r.seconds) j["timing"] = {{"seconds", *r.seconds}};
    return j;
}

}  // namespace iflab
