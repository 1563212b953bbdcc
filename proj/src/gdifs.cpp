#include "iflab/gdifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace iflab {

void validate_gdifs(const Gdifs& g) {
    if (g.vertex_count < 1) throw Error(ErrorKind::Validation, "a GDIFS needs at least one vertex");
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        if (e.from < 0 || e.from >= g.vertex_count || e.to < 0 || e.to >= g.vertex_count) {
            std::ostringstream os;
            os << "edge " << i + 1 << " refers to a vertex outside 1.." << g.vertex_count;
            throw Error(ErrorKind::Validation, os.str());
        }
        if (!(e.map.r != 0.0 && std::abs(e.map.r) < 1.0) || !std::isfinite(e.map.t)) {
            std::ostringstream os;
            os << "edge " << i + 1 << " has ratio " << e.map.r << " outside (-1,1) \\ {0}";
            throw Error(ErrorKind::BadRatio, os.str());
        }
    }
    if (!irreducible(pressure_matrix(g, 0.0)))
        throw Error(ErrorKind::NotStronglyConnected, "the graph is not strongly connected");
}

namespace {

std::size_t checked_pow(std::size_t base, int exp, std::size_t cap) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

Word decode(std::size_t index, std::size_t m, int n) {
    Word w(static_cast<std::size_t>(n));
    for (int p = n - 1; p >= 0; --p) {
        w[static_cast<std::size_t>(p)] = static_cast<int>(index % m);
        index /= m;
    }
    return w;
}

}  // namespace

AssociatedGdifs associate_gdifs(const Cplifs& sys, int n, std::size_t budget) {
    if (n < 1) throw Error(ErrorKind::Validation, "order must be at least 1");
    const std::size_t m = sys.size();
    const std::size_t q = checked_pow(m, n, budget);
    if (q > budget || q * q > budget)
        throw Error(ErrorKind::BudgetExceeded, "associated graph has more edges than the budget allows");

    std::vector<std::size_t> first_letter(m, 0);
    for (std::size_t k = 1; k < m; ++k) first_letter[k] = first_letter[k - 1] + sys[k - 1].piece_count();
    const SelfSimilarIfs ss = generate_selfsimilar(sys);

    AssociatedGdifs out;
    out.invariant = invariant_interval(sys);
    out.gdifs.vertex_count = static_cast<int>(q);
    out.psi.n = n;
    for (std::size_t i = 0; i < q; ++i) {
        out.vertices.push_back(decode(i, m, n));
        out.cylinders.push_back(cylinder(sys, out.vertices.back(), out.invariant));
    }
    out.gdifs.edges.reserve(q * q);
    for (std::size_t v = 0; v < q; ++v) {
        const Word& vw = out.vertices[v];
        for (std::size_t u = 0; u < q; ++u) {
            Interval J = out.cylinders[u];
            Word a(static_cast<std::size_t>(n));
            for (int p = n - 1; p >= 0; --p) {
                const auto& f = sys[static_cast<std::size_t>(vw[static_cast<std::size_t>(p)])];
                const std::size_t piece = f.piece_index(0.5 * (J.lo + J.hi));
                const auto& b = f.breakpoints();
                const bool left_ok = piece == 0 || b[piece - 1] <= J.lo;
                const bool right_ok = piece == b.size() || J.hi <= b[piece];
                if (!left_ok || !right_ok) {
                    std::ostringstream os;
                    os << "interval [" << J.lo << ", " << J.hi << "] straddles a breakpoint of map "
                       << vw[static_cast<std::size_t>(p)] + 1 << " at order " << n;
                    throw Error(ErrorKind::NotRegular, os.str());
                }
                a[static_cast<std::size_t>(p)] =
                    static_cast<int>(first_letter[static_cast<std::size_t>(vw[static_cast<std::size_t>(p)])] + piece);
                J = image_interval(f, J);
            }
            SimilarityMap F{1.0, 0.0};
            for (int p = n - 1; p >= 0; --p) {
                const SimilarityMap& S = ss.maps[static_cast<std::size_t>(a[static_cast<std::size_t>(p)])];
                F = {S.r * F.r, S.r * F.t + S.t};
            }
            out.gdifs.edges.push_back({static_cast<int>(v), static_cast<int>(u), F});
            out.psi.words.push_back(std::move(a));
            out.psi.ratios.push_back(F.r);
        }
    }
    return out;
}

Matrix pressure_matrix(const Gdifs& g, double s) {
    const auto q = static_cast<std::size_t>(g.vertex_count);
    Matrix c(q, q);
    for (const Edge& e : g.edges)
        c(static_cast<std::size_t>(e.from), static_cast<std::size_t>(e.to)) += std::pow(std::abs(e.map.r), s);
    return c;
}

NaturalExponent natural_exponent(const Gdifs& g) {
    auto excess = [&](double s) { return spectral_radius(pressure_matrix(g, s)) - 1.0; };
    NaturalExponent out;
    if (excess(0.0) <= 0.0) {
        out.degenerate = true;
        return out;
    }
    double lo = 0.0, hi = 1.0;
    while (excess(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw Error(ErrorKind::NonConvergence, "could not bracket the natural exponent");
    }
    // Tighter than strictly needed: h / chi = alpha is checked to 1e-10.
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) >= 0.0 ? lo : hi) = mid;
    }
    out.alpha = 0.5 * (lo + hi);
    return out;
}

MarkovMeasure markov_measure(const Gdifs& g) {
    const NaturalExponent ne = natural_exponent(g);
    if (ne.degenerate) throw Error(ErrorKind::Validation, "natural exponent is zero; no Markov measure");
    MarkovMeasure mm;
    mm.alpha = ne.alpha;
    const Matrix c = pressure_matrix(g, mm.alpha);
    const PerronData right = perron(c);
    const PerronData left = perron(c.transpose());
    mm.lambda = right.root;
    mm.v = right.vector;
    mm.u = left.vector;
    const double uv = std::inner_product(mm.u.begin(), mm.u.end(), mm.v.begin(), 0.0);
    for (double& x : mm.u) x /= uv;

    const std::size_t q = mm.v.size();
    mm.P = Matrix(q, q);
    for (const Edge& e : g.edges) {
        const auto s = static_cast<std::size_t>(e.from);
        const auto t = static_cast<std::size_t>(e.to);
        const double pe = std::pow(std::abs(e.map.r), mm.alpha) * mm.v[t] / (mm.lambda * mm.v[s]);
        mm.edge_probability.push_back(pe);
        mm.P(s, t) += pe;
    }
    for (std::size_t i = 0; i < q; ++i) mm.p.push_back(mm.u[i] * mm.v[i]);
    return mm;
}

EntropyLyapunov entropy_lyapunov(const MarkovMeasure& mm, const Gdifs& g) {
    EntropyLyapunov out;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const double w = mm.p[static_cast<std::size_t>(g.edges[i].from)] * mm.edge_probability[i];
        out.h -= w * std::log(mm.edge_probability[i]);
        out.chi -= w * std::log(std::abs(g.edges[i].map.r));
    }
    return out;
}

namespace {

std::vector<std::vector<std::size_t>> outgoing(const Gdifs& g) {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(g.vertex_count));
    for (std::size_t i = 0; i < g.edges.size(); ++i) out[static_cast<std::size_t>(g.edges[i].from)].push_back(i);
    return out;
}

}  // namespace

MonteCarloEntropy monte_carlo_entropy(const MarkovMeasure& mm, const Gdifs& g, std::size_t steps,
                                      std::uint64_t seed) {
    constexpr std::size_t kBatches = 100;
    if (steps < kBatches) throw Error(ErrorKind::Validation, "need at least 100 steps");
    const auto out_edges = outgoing(g);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> start(mm.p.begin(), mm.p.end());
    std::size_t vertex = start(rng);

    const std::size_t batch = steps / kBatches;
    std::vector<double> means;
    double total = 0.0;
    for (std::size_t b = 0; b < kBatches; ++b) {
        double acc = 0.0;
        for (std::size_t k = 0; k < batch; ++k) {
            const auto& es = out_edges[vertex];
            std::vector<double> w;
            for (std::size_t e : es) w.push_back(mm.edge_probability[e]);
            std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
            const std::size_t e = es[pick(rng)];
            acc -= std::log(mm.edge_probability[e]);
            vertex = static_cast<std::size_t>(g.edges[e].to);
        }
        means.push_back(acc / static_cast<double>(batch));
        total += acc;
    }
    MonteCarloEntropy out;
    out.steps = batch * kBatches;
    out.estimate = total / static_cast<double>(out.steps);
    double var = 0.0;
    for (double x : means) var += (x - out.estimate) * (x - out.estimate);
    var /= static_cast<double>(kBatches - 1);
    out.standard_error = std::sqrt(var / static_cast<double>(kBatches));
    return out;
}

std::vector<double> sample_gdifs_attractor(const Gdifs& g, std::size_t n, std::uint64_t seed) {
    constexpr int kBurnIn = 64;
    const auto out_edges = outgoing(g);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vertex_dist(0, g.vertex_count - 1);
    std::vector<double> pts;
    pts.reserve(n);
    std::vector<std::size_t> path(kBurnIn);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::size_t>(vertex_dist(rng));
        for (auto& e : path) {
            const auto& es = out_edges[v];
            std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
            e = es[pick(rng)];
            v = static_cast<std::size_t>(g.edges[e].to);
        }
        double x = 0.0;
        for (auto it = path.rbegin(); it != path.rend(); ++it) x = g.edges[*it].map(x);
        pts.push_back(x);
    }
    return pts;
}

SandwichConstants sandwich_constants(const MarkovMeasure& mm) {
    const auto [umin, umax] = std::minmax_element(mm.u.begin(), mm.u.end());
    const auto [vmin, vmax] = std::minmax_element(mm.v.begin(), mm.v.end());
    return {*umin * *vmin, *umax * *vmax};
}

SandwichCheck sandwich_check(const MarkovMeasure& mm, const Gdifs& g, int depth, std::size_t budget) {
    SandwichCheck out;
    out.constants = sandwich_constants(mm);
    out.min_ratio = INFINITY;
    out.max_ratio = 0.0;
    const auto out_edges = outgoing(g);
    constexpr double kSlack = 1e-12;

    struct Node {
        std::size_t vertex;
        double mu;
        double rho_alpha;
        int length;
    };
    std::vector<Node> stack;
    for (std::size_t v = 0; v < mm.p.size(); ++v) stack.push_back({v, mm.p[v], 1.0, 0});
    while (!stack.empty()) {
        const Node node = stack.back();
        stack.pop_back();
        if (node.length > 0) {
            if (++out.chains > budget) throw Error(ErrorKind::BudgetExceeded, "too many chains to enumerate");
            const double ratio = node.mu / node.rho_alpha;
            out.min_ratio = std::min(out.min_ratio, ratio);
            out.max_ratio = std::max(out.max_ratio, ratio);
            if (ratio < out.constants.c1 * (1 - kSlack) || ratio > out.constants.c2 * (1 + kSlack)) ++out.violations;
        }
        if (node.length == depth) continue;
        for (std::size_t e : out_edges[node.vertex])
            stack.push_back({static_cast<std::size_t>(g.edges[e].to), node.mu * mm.edge_probability[e],
                             node.rho_alpha * std::pow(std::abs(g.edges[e].map.r), mm.alpha), node.length + 1});
    }
    return out;
}

}  // namespace iflab
