#pragma once

// Graph-directed self-similar systems: pressure
// matrices, the natural exponent, the Perron Markov measure and its
// entropy / Lyapunov exponent, plus the system associated to a regular
// CPLIFS.

#include <cstdint>
#include <vector>

#include "iflab/generated.hpp"
#include "iflab/matrix.hpp"
#include "iflab/pwl.hpp"

namespace iflab {

// Edge e = (from, to) carries F_e with Lambda_from containing F_e(Lambda_to).
struct Edge {
    int from = 0;  // 0-based
    int to = 0;
    SimilarityMap map;
};

struct Gdifs {
    int vertex_count = 0;
    std::vector<Edge> edges;
};

// Throws Error{Validation} for bad vertex indices, Error{BadRatio} for a
// ratio outside (-1, 1) \ {0} and Error{NotStronglyConnected}.
void validate_gdifs(const Gdifs& g);

struct PsiTable {
    int n = 0;
    // Edge index v * q + u. Letters index the generated self-similar IFS.
    std::vector<Word> words;
    std::vector<double> ratios;
};

struct AssociatedGdifs {
    Gdifs gdifs;
    PsiTable psi;
    std::vector<Word> vertices;  // level-n words in lexicographic order
    std::vector<Interval> cylinders;
    Interval invariant;
};

// Full graph on m^n vertices; edge (v, u) carries f_v restricted to I_u.
// Throws Error{NotRegular} when some f_{v_p...v_n}(I_u) straddles a
// breakpoint of f_{v_{p-1}} and Error{BudgetExceeded} when (m^n)^2 does.
AssociatedGdifs associate_gdifs(const Cplifs& sys, int n, std::size_t budget = kDefaultBudget);

// c(i, j) = sum of |r_e|^s over edges i -> j.
Matrix pressure_matrix(const Gdifs& g, double s);

struct NaturalExponent {
    double alpha = 0.0;
    // rho(C^(0)) <= 1: a single cycle of contractions, alpha = 0.
    bool degenerate = false;
};

NaturalExponent natural_exponent(const Gdifs& g);

struct MarkovMeasure {
    double alpha = 0.0;
    double lambda = 1.0;        // Perron root of C^(alpha) as computed
    std::vector<double> u;      // left Perron vector
    std::vector<double> v;      // right Perron vector, sum v = 1, sum u v = 1
    std::vector<double> edge_probability;
    Matrix P;
    std::vector<double> p;      // stationary, p_i = u_i v_i
};

// Throws Error{Reducible} for reducible graphs and Error{Validation} when
// the natural exponent is zero.
MarkovMeasure markov_measure(const Gdifs& g);

struct EntropyLyapunov {
    double h = 0.0;
    double chi = 0.0;
};

// Per-edge sums, which coincide with the vertex-pair formulas on graphs
// without parallel edges.
EntropyLyapunov entropy_lyapunov(const MarkovMeasure& mm, const Gdifs& g);

struct MonteCarloEntropy {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t steps = 0;
};

// Ergodic average of -log q_e along one chain started from p; the standard
// error comes from 100 batch means.
MonteCarloEntropy monte_carlo_entropy(const MarkovMeasure& mm, const Gdifs& g, std::size_t steps,
                                      std::uint64_t seed);

// Each point: a uniform start vertex, 64 uniformly chosen outgoing edges,
// and the composed maps applied to 0.
std::vector<double> sample_gdifs_attractor(const Gdifs& g, std::size_t n, std::uint64_t seed);

struct SandwichConstants {
    double c1 = 0.0;
    double c2 = 0.0;
};

// The ratio mu([e1...en]) / |r_e1 ... r_en|^alpha telescopes to
// u_{from(e1)} v_{to(en)} / lambda^n.
SandwichConstants sandwich_constants(const MarkovMeasure& mm);

struct SandwichCheck {
    SandwichConstants constants;
    std::size_t chains = 0;
    std::size_t violations = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

// Enumerates every edge path of length 1..depth; ratios are compared with a
// relative slack of 1e-12.
SandwichCheck sandwich_check(const MarkovMeasure& mm, const Gdifs& g, int depth,
                             std::size_t budget = kDefaultBudget);

}  // namespace iflab
