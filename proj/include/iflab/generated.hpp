#pragma once

// The self-similar IFS generated by a CPLIFS (one similarity per linearity
// interval), the affine parameter correspondence onto its translations, and
// an exponential-separation scanner for self-similar systems.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iflab/pwl.hpp"
#include "iflab/rational.hpp"

namespace iflab {

struct SimilarityMap {
    double r = 1.0;
    double t = 0.0;

    double operator()(double x) const { return r * x + t; }
};

struct ExactSimilarity {
    Rational r;
    Rational t;
};

// (k, i): piece i of map k, both 0-based.
struct PieceLabel {
    int map = 0;
    int piece = 0;

    friend bool operator==(const PieceLabel&, const PieceLabel&) = default;
};

struct SelfSimilarIfs {
    std::vector<SimilarityMap> maps;
    std::vector<PieceLabel> labels;  // empty for systems given directly
    std::optional<std::vector<ExactSimilarity>> exact;

    std::size_t size() const { return maps.size(); }
};

// Throws Error{BadRatio} when a ratio is zero or outside (-1, 1).
SelfSimilarIfs make_selfsimilar(std::vector<SimilarityMap> maps);

SelfSimilarIfs generate_selfsimilar(const Cplifs& sys);
// Same maps, with exact rational translations attached.
SelfSimilarIfs generate_selfsimilar(const Cplifs& sys, const ExactSystem& exact);

// Parameter vector (b, tau, rho) laid out block by block per map.
struct CplifsParameters {
    std::vector<std::size_t> type;
    std::vector<double> breakpoints;  // length L
    std::vector<double> tau;          // length m
    std::vector<double> rho;          // length L + m
};

CplifsParameters parameters_of(const Cplifs& sys);
// Throws Error{DimensionMismatch} when lengths disagree with `type`, and
// Error{Validation} when the parameters do not describe valid maps.
Cplifs build_cplifs(const CplifsParameters& p);

struct TranslationVector {
    std::vector<double> entries;  // (t_{1,1}, ..., t_{m,l(m)+1})
};

// (b, tau) -> t for fixed slopes rho. Affine on each region where the signs
// of the breakpoints are fixed; it bends where a breakpoint crosses 0.
TranslationVector phi_rho(const std::vector<std::size_t>& type, const std::vector<double>& breakpoints,
                          const std::vector<double>& tau, const std::vector<double>& rho);

enum class EscMode { Float, Rational };

struct EscLevel {
    int n = 0;
    // +inf when no two distinct words share a ratio at this level.
    double min_distance = 0.0;
    std::optional<std::string> exact_min_distance;
    std::size_t pair_count = 0;
};

struct EscWitness {
    int level = 0;
    Word first;
    Word second;
};

struct EscReport {
    std::vector<EscLevel> levels;
    std::vector<EscWitness> zero_witnesses;
    // Heuristic: exp of the least-squares slope of log(min distance) vs n.
    std::optional<double> fitted_c;
    std::vector<std::string> warnings;
};

inline constexpr double kEscRatioTolerance = 1e-12;

// Levels whose word count exceeds the budget are skipped with a warning;
// Error{BudgetExceeded} is raised only when not even level 1 fits.
// Rational mode requires `ss.exact`.
EscReport esc_scan(const SelfSimilarIfs& ss, int max_level, EscMode mode,
                   std::size_t budget = kDefaultBudget);

}  // namespace iflab
