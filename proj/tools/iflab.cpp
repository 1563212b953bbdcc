// iflab: command-line front end.
//
//   iflab validate <file>
//   iflab dim <file> [--method direct|spectral|both] [--depth N] [--tol X]
//   iflab regularity <file> [--max-order N] [--probe-depth D]
//   iflab esc <file> [--max-level N] [--exact]
//   iflab boxdim <file> [--scales r1,r2,...]
//   iflab gdifs <file>
//   iflab scan <file> --axes b1.1,tau1 --range U,V --grid G [--seed S]
//
// Every subcommand accepts --json <path>, --csv <path> and --timing.
// Exit status: 0 success, 2 invalid input, 3 budget exhausted, 1 otherwise.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iflab/config.hpp"
#include "iflab/dimension.hpp"
#include "iflab/gdifs.hpp"
#include "iflab/generated.hpp"
#include "iflab/paramscan.hpp"
#include "iflab/regularity.hpp"
#include "iflab/report.hpp"

using namespace iflab;
using nlohmann::json;

namespace {

struct Common {
    std::string file;
    std::string json_path;
    std::string csv_path;
    bool timing = false;
};

struct Run {
    RunReport report;
    std::ostringstream summary;
    std::ostringstream csv;
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse:
        case ErrorKind::Validation:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::BadAxis:
        case ErrorKind::BadRatio:
        case ErrorKind::NotStronglyConnected:
        case ErrorKind::NotSmall:
            return 2;
        case ErrorKind::BudgetExceeded:
            return 3;
        default:
            return 1;
    }
}

std::size_t budget_for(const SystemConfig& cfg) {
    if (const char* env = std::getenv("IFLAB_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw Error(ErrorKind::Validation, "IFLAB_BUDGET must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return cfg.settings.budget.value_or(kDefaultBudget);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0') throw Error(ErrorKind::Validation, std::string("bad ") + what + ": " + text);
        out.push_back(v);
    }
    return out;
}

Cplifs need_cplifs(const SystemConfig& cfg, const char* cmd) {
    if (cfg.kind != SystemKind::Cplifs)
        throw Error(ErrorKind::Validation, std::string(cmd) + " needs a cplifs configuration");
    return to_cplifs(cfg);
}

RegularityOptions regularity_options(const SystemConfig& cfg, std::size_t budget) {
    RegularityOptions o;
    o.budget = budget;
    if (cfg.settings.max_order) o.max_order = *cfg.settings.max_order;
    if (cfg.settings.probe_depth) o.probe_depth = *cfg.settings.probe_depth;
    return o;
}

void cmd_validate(const SystemConfig& cfg, Run& run) {
    if (cfg.kind == SystemKind::Gdifs) {
        run.summary << "valid gdifs: " << cfg.vertex_count << " vertices, " << cfg.edges.size() << " edges\n";
        run.report.results["kind"] = "gdifs";
        return;
    }
    const Cplifs sys = to_cplifs(cfg);
    const Interval I = invariant_interval(sys);
    const SmallnessReport small = check_small(sys);
    run.summary << "valid cplifs: " << sys.size() << " maps, " << sys.total_breakpoints() << " breakpoints\n"
                << "invariant interval: [" << fmt(I.lo) << ", " << fmt(I.hi) << "]\n"
                << "small: " << (small.small ? "yes" : "no") << " (sum of rho = " << fmt(small.sum_rho) << ")\n"
                << "exact mode: " << (to_exact(cfg) ? "available" : "unavailable") << "\n";
    run.report.results = {{"kind", "cplifs"},
                          {"invariantInterval", {I.lo, I.hi}},
                          {"smallness", to_json(small)},
                          {"exact", to_exact(cfg).has_value()}};
    if (!small.small) run.report.warnings.push_back("system is not small; regularity and dimension are unavailable");
}

void cmd_dim(const SystemConfig& cfg, Run& run, const std::string& method, std::optional<int> depth,
             std::optional<double> tol, std::size_t budget) {
    if (cfg.kind == SystemKind::Gdifs) {
        const NaturalExponent ne = natural_exponent(to_gdifs(cfg));
        run.summary << "alpha = " << fmt(ne.alpha) << (ne.degenerate ? " (degenerate)" : "") << "\n";
        run.report.results = {{"alpha", ne.alpha}, {"degenerate", ne.degenerate}};
        if (ne.degenerate) run.report.warnings.push_back("single contraction cycle: alpha = 0");
        return;
    }
    const Cplifs sys = to_cplifs(cfg);
    DimensionOptions o;
    o.budget = budget;
    o.regularity = regularity_options(cfg, budget);
    o.depth = depth.value_or(cfg.settings.depth.value_or(12));
    if (tol) o.tol = *tol;
    else if (cfg.settings.tol) o.tol = *cfg.settings.tol;
    json out = json::object();
    run.csv << "method,sF\n";
    if (method == "direct" || method == "both") {
        const DimensionReport r = natural_dimension(sys, DimensionMethod::DirectPressure, o);
        run.summary << "sF (direct pressure, depth " << o.depth << ") = " << fmt(r.s_f) << "\n";
        for (const auto& n : r.notes) run.report.warnings.push_back(n);
        out["directPressure"] = to_json(r);
        run.csv << "directPressure," << fmt(r.s_f) << "\n";
    }
    if (method == "spectral" || method == "both") {
        try {
            const DimensionReport r = natural_dimension(sys, DimensionMethod::Spectral, o);
            run.summary << "sF (spectral, order " << r.order << ") = " << fmt(r.s_f) << "\n";
            out["spectral"] = to_json(r);
            run.csv << "spectral," << fmt(r.s_f) << "\n";
        } catch (const Error& e) {
            if (method == "spectral" || e.kind() != ErrorKind::NotRegular) throw;
            run.report.warnings.push_back(std::string("spectral method skipped: ") + e.what());
        }
    }
    run.report.results = out;
}

void cmd_regularity(const SystemConfig& cfg, Run& run, std::optional<int> max_order, std::optional<int> probe,
                    std::size_t budget) {
    const Cplifs sys = need_cplifs(cfg, "regularity");
    RegularityOptions o = regularity_options(cfg, budget);
    if (max_order) o.max_order = *max_order;
    if (probe) o.probe_depth = *probe;
    const RegularityResult r = regularity_order(sys, o);
    run.summary << to_string(r.status);
    if (r.status == RegularityStatus::Regular) run.summary << "(" << r.order << ")";
    run.summary << "\n";
    if (!r.note.empty()) run.summary << r.note << "\n";
    json j = to_json(r);
    if (r.status == RegularityStatus::Regular) {
        const BdpConstants c = bdp_constants(sys, r.order);
        j["bdp"] = {{"c1", c.c1}, {"c2", c.c2}};
    }
    run.report.results = j;
    run.csv << "map,index,value,insideInvariantInterval,inAttractor\n";
    for (const auto& b : r.breakpoints)
        run.csv << b.breakpoint.map + 1 << "," << b.breakpoint.index + 1 << "," << fmt(b.breakpoint.value) << ","
                << b.inside_invariant_interval << "," << b.membership.in << "\n";
}

void cmd_esc(const SystemConfig& cfg, Run& run, int max_level, bool exact, std::size_t budget) {
    SelfSimilarIfs ss;
    if (cfg.kind == SystemKind::Cplifs) {
        const Cplifs sys = to_cplifs(cfg);
        const auto ex = to_exact(cfg);
        if (exact && !ex) throw Error(ErrorKind::Validation, "--exact needs every number given as an integer or string");
        ss = ex ? generate_selfsimilar(sys, *ex) : generate_selfsimilar(sys);
    } else {
        if (cfg.vertex_count != 1) throw Error(ErrorKind::Validation, "esc on a gdifs needs a single vertex");
        std::vector<SimilarityMap> maps;
        for (const auto& e : cfg.edges) maps.push_back({e.r.value, e.t.value});
        ss = make_selfsimilar(maps);
        if (exact) throw Error(ErrorKind::Validation, "--exact is available for cplifs configurations only");
    }
    const EscReport r = esc_scan(ss, max_level, exact ? EscMode::Rational : EscMode::Float, budget);
    for (const auto& w : r.warnings) run.report.warnings.push_back(w);
    run.csv << "n,minDistance,exactMinDistance,pairs\n";
    for (const auto& l : r.levels) {
        run.summary << "level " << l.n << ": min distance " << fmt(l.min_distance);
        if (l.exact_min_distance) run.summary << " = " << *l.exact_min_distance;
        run.summary << " over " << l.pair_count << " pairs\n";
        run.csv << l.n << "," << fmt(l.min_distance) << "," << l.exact_min_distance.value_or("") << ","
                << l.pair_count << "\n";
    }
    if (!r.zero_witnesses.empty()) run.summary << r.zero_witnesses.size() << " exact overlap witness(es)\n";
    run.report.results = to_json(r);
}

void cmd_boxdim(const SystemConfig& cfg, Run& run, const std::string& scales, std::size_t budget) {
    const Cplifs sys = need_cplifs(cfg, "boxdim");
    const std::vector<double> r = scales.empty() ? default_box_scales(sys) : parse_list(scales, "scales");
    const BoxEstimate b = box_dimension_estimate(sys, r, budget);
    run.summary << "box-counting estimate = " << fmt(b.estimate) << " (residual " << fmt(b.residual) << ")\n";
    run.csv << "r,count\n";
    for (auto [s, n] : b.counts) run.csv << fmt(s) << "," << n << "\n";
    run.report.results = to_json(b);
}

void cmd_gdifs(const SystemConfig& cfg, Run& run, std::size_t budget) {
    Gdifs g;
    json j = json::object();
    if (cfg.kind == SystemKind::Gdifs) {
        g = to_gdifs(cfg);
    } else {
        const Cplifs sys = to_cplifs(cfg);
        const RegularityResult reg = regularity_order(sys, regularity_options(cfg, budget));
        if (reg.status != RegularityStatus::Regular)
            throw Error(ErrorKind::NotRegular, std::string("associated GDIFS needs a Regular system; got ") +
                                                   to_string(reg.status));
        g = associate_gdifs(sys, reg.order, budget).gdifs;
        j["order"] = reg.order;
    }
    const NaturalExponent ne = natural_exponent(g);
    j["vertices"] = g.vertex_count;
    j["edges"] = g.edges.size();
    j["alpha"] = ne.alpha;
    run.summary << "alpha = " << fmt(ne.alpha) << "\n";
    if (ne.degenerate) {
        run.report.warnings.push_back("single contraction cycle: alpha = 0, no Markov measure");
        run.report.results = j;
        return;
    }
    const MarkovMeasure mm = markov_measure(g);
    const EntropyLyapunov el = entropy_lyapunov(mm, g);
    const SandwichCheck sc = sandwich_check(mm, g, 6, budget);
    j["markov"] = to_json(mm);
    j["entropy"] = el.h;
    j["lyapunov"] = el.chi;
    j["sandwich"] = to_json(sc);
    run.summary << "h = " << fmt(el.h) << ", chi = " << fmt(el.chi) << ", h/chi = " << fmt(el.h / el.chi) << "\n"
                << "sandwich [" << fmt(sc.constants.c1) << ", " << fmt(sc.constants.c2) << "]: " << sc.chains
                << " chains, " << sc.violations << " violations\n";
    run.csv << "vertex,u,v,p\n";
    for (std::size_t i = 0; i < mm.p.size(); ++i)
        run.csv << i + 1 << "," << fmt(mm.u[i]) << "," << fmt(mm.v[i]) << "," << fmt(mm.p[i]) << "\n";
    run.report.results = j;
}

void cmd_scan(const SystemConfig& cfg, Run& run, const std::string& axes, const std::string& range, int grid,
              std::uint64_t seed, std::optional<int> probe, std::size_t budget) {
    const Cplifs sys = need_cplifs(cfg, "scan");
    ScanOptions o;
    const auto comma = axes.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::BadAxis, "--axes expects two ids separated by a comma");
    o.axis1 = axes.substr(0, comma);
    o.axis2 = axes.substr(comma + 1);
    const std::vector<double> uv = parse_list(range, "range");
    if (uv.size() != 2) throw Error(ErrorKind::Validation, "--range expects U,V");
    o.lo = uv[0];
    o.hi = uv[1];
    o.grid = grid;
    o.seed = seed;
    o.probe_depth = probe.value_or(cfg.settings.probe_depth.value_or(40));
    o.cell_budget = std::min<std::size_t>(budget, o.cell_budget);
    const ScanResult r = scan_regularity(sys, o);
    run.summary << r.irregular << " irregular, " << r.undetermined << " undetermined of " << r.cells.size()
                << " cells; irregular fraction " << fmt(r.irregular_fraction) << "\n";
    run.csv << "i,j," << r.axis1.id << "," << r.axis2.id << ",flag\n";
    for (int i = 0; i < r.grid; ++i)
        for (int k = 0; k < r.grid; ++k) {
            const ScanCell& c = r.at(i, k);
            run.csv << i << "," << k << "," << fmt(c.x) << "," << fmt(c.y) << "," << to_string(c.flag) << "\n";
        }
    run.report.results = to_json(r);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Validation, "cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous piecewise-linear IFS laboratory"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", common.file, "system configuration (JSON)")->required();
        sub->add_option("--json", common.json_path, "write the run report here");
        sub->add_option("--csv", common.csv_path, "write tabular output here");
        sub->add_flag("--timing", common.timing, "include wall-clock time in the report");
    };

    auto* validate = app.add_subcommand("validate", "check a configuration");
    add_common(validate);

    std::string method = "both";
    std::optional<int> depth, max_order, probe;
    std::optional<double> tol;
    auto* dim = app.add_subcommand("dim", "natural dimension");
    add_common(dim);
    dim->add_option("--method", method)->check(CLI::IsMember({"direct", "spectral", "both"}));
    dim->add_option("--depth", depth);
    dim->add_option("--tol", tol);

    auto* regularity = app.add_subcommand("regularity", "regularity order");
    add_common(regularity);
    regularity->add_option("--max-order", max_order);
    regularity->add_option("--probe-depth", probe);

    int max_level = 8;
    bool exact = false;
    auto* esc = app.add_subcommand("esc", "exponential separation scan of the generated IFS");
    add_common(esc);
    esc->add_option("--max-level", max_level);
    esc->add_flag("--exact", exact, "rational arithmetic");

    std::string scales;
    auto* boxdim = app.add_subcommand("boxdim", "box-counting estimate");
    add_common(boxdim);
    boxdim->add_option("--scales", scales, "comma-separated decreasing scales");

    auto* gdifs = app.add_subcommand("gdifs", "natural exponent and Markov measure");
    add_common(gdifs);

    std::string axes = "b1.1,tau1", range = "0,1";
    int grid = 64;
    std::uint64_t seed = 0;
    auto* scan = app.add_subcommand("scan", "exceptional-parameter scan of a 2-D slice");
    add_common(scan);
    scan->add_option("--axes", axes);
    scan->add_option("--range", range);
    scan->add_option("--grid", grid);
    scan->add_option("--seed", seed);
    scan->add_option("--probe-depth", probe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    Run run;
    run.report.command = sub->get_name();
    // Output locations and timing stay out of the report so reruns compare equal.
    for (int i = 2; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--timing" || a.rfind("--json=", 0) == 0 || a.rfind("--csv=", 0) == 0) continue;
        if (a == "--json" || a == "--csv") {
            ++i;
            continue;
        }
        run.report.arguments.push_back(a);
    }
    const auto start = std::chrono::steady_clock::now();
    try {
        const SystemConfig cfg = load_config(common.file);
        run.report.digest = config_digest(cfg);
        const std::size_t budget = budget_for(cfg);
        if (sub == validate) cmd_validate(cfg, run);
        else if (sub == dim) cmd_dim(cfg, run, method, depth, tol, budget);
        else if (sub == regularity) cmd_regularity(cfg, run, max_order, probe, budget);
        else if (sub == esc) cmd_esc(cfg, run, max_level, exact, budget);
        else if (sub == boxdim) cmd_boxdim(cfg, run, scales, budget);
        else if (sub == gdifs) cmd_gdifs(cfg, run, budget);
        else cmd_scan(cfg, run, axes, range, grid, seed, probe, budget);
    } catch (const Error& e) {
        std::cerr << "iflab: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "iflab: " << e.what() << "\n";
        return 1;
    }
    if (common.timing)
        run.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::cout << run.summary.str();
    for (const auto& w : run.report.warnings) std::cout << "warning: " << w << "\n";
    try {
        if (!common.json_path.empty()) write_file(common.json_path, to_json(run.report).dump(2) + "\n");
        if (!common.csv_path.empty()) write_file(common.csv_path, run.csv.str());
    } catch (const Error& e) {
        std::cerr << "iflab: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
