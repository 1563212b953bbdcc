#include "iflab/generated.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace iflab {

SelfSimilarIfs make_selfsimilar(std::vector<SimilarityMap> maps) {
    if (maps.empty()) throw Error(ErrorKind::Validation, "a self-similar IFS needs at least one map");
    for (const auto& s : maps)
        if (!(s.r != 0.0 && std::abs(s.r) < 1.0) || !std::isfinite(s.t))
            throw Error(ErrorKind::BadRatio, "similarity ratios must lie in (-1,1) \\ {0}");
    SelfSimilarIfs out;
    out.maps = std::move(maps);
    return out;
}

SelfSimilarIfs generate_selfsimilar(const Cplifs& sys) {
    SelfSimilarIfs out;
    for (std::size_t k = 0; k < sys.size(); ++k) {
        const auto& f = sys[k];
        for (std::size_t i = 0; i < f.piece_count(); ++i) {
            out.maps.push_back({f.slopes()[i], f.offsets()[i]});
            out.labels.push_back({static_cast<int>(k), static_cast<int>(i)});
        }
    }
    return out;
}

namespace {

std::vector<ExactSimilarity> exact_pieces(const ExactMap& f) {
    const std::size_t pieces = f.slopes.size();
    std::vector<Rational> t(pieces);
    std::size_t z = 0;
    while (z < f.breakpoints.size() && f.breakpoints[z] <= 0) ++z;
    t[z] = f.tau;
    for (std::size_t i = z; i + 1 < pieces; ++i)
        t[i + 1] = t[i] + f.breakpoints[i] * (f.slopes[i] - f.slopes[i + 1]);
    for (std::size_t i = z; i > 0; --i)
        t[i - 1] = t[i] + f.breakpoints[i - 1] * (f.slopes[i] - f.slopes[i - 1]);
    std::vector<ExactSimilarity> out;
    for (std::size_t i = 0; i < pieces; ++i) out.push_back({f.slopes[i], t[i]});
    return out;
}

}  // namespace

SelfSimilarIfs generate_selfsimilar(const Cplifs& sys, const ExactSystem& exact) {
    SelfSimilarIfs out = generate_selfsimilar(sys);
    if (exact.size() != sys.size())
        throw Error(ErrorKind::DimensionMismatch, "exact parameters do not match the system");
    std::vector<ExactSimilarity> all;
    for (const auto& f : exact) {
        auto p = exact_pieces(f);
        all.insert(all.end(), p.begin(), p.end());
    }
    if (all.size() != out.maps.size())
        throw Error(ErrorKind::DimensionMismatch, "exact parameters do not match the system");
    out.exact = std::move(all);
    return out;
}

CplifsParameters parameters_of(const Cplifs& sys) {
    CplifsParameters p;
    for (const auto& f : sys.maps()) {
        p.type.push_back(f.breakpoints().size());
        p.breakpoints.insert(p.breakpoints.end(), f.breakpoints().begin(), f.breakpoints().end());
        p.tau.push_back(f.tau());
        p.rho.insert(p.rho.end(), f.slopes().begin(), f.slopes().end());
    }
    return p;
}

Cplifs build_cplifs(const CplifsParameters& p) {
    const std::size_t m = p.type.size();
    const std::size_t L = std::accumulate(p.type.begin(), p.type.end(), std::size_t{0});
    if (m == 0 || p.breakpoints.size() != L || p.tau.size() != m || p.rho.size() != L + m) {
        std::ostringstream os;
        os << "parameter lengths (" << p.breakpoints.size() << ", " << p.tau.size() << ", "
           << p.rho.size() << ") do not match type with L=" << L << ", m=" << m;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    std::vector<PiecewiseLinearMap> maps;
    std::size_t bi = 0, ri = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t l = p.type[k];
        std::vector<double> b(p.breakpoints.begin() + bi, p.breakpoints.begin() + bi + l);
        std::vector<double> r(p.rho.begin() + ri, p.rho.begin() + ri + l + 1);
        maps.emplace_back(std::move(b), std::move(r), p.tau[k]);
        bi += l;
        ri += l + 1;
    }
    return Cplifs(std::move(maps));
}

TranslationVector phi_rho(const std::vector<std::size_t>& type, const std::vector<double>& breakpoints,
                          const std::vector<double>& tau, const std::vector<double>& rho) {
    const Cplifs sys = build_cplifs({type, breakpoints, tau, rho});
    TranslationVector t;
    for (const auto& f : sys.maps()) t.entries.insert(t.entries.end(), f.offsets().begin(), f.offsets().end());
    return t;
}

namespace {

Word decode_word(std::size_t index, std::size_t alphabet, int length) {
    Word w(static_cast<std::size_t>(length));
    for (int p = length - 1; p >= 0; --p) {
        w[static_cast<std::size_t>(p)] = static_cast<int>(index % alphabet);
        index /= alphabet;
    }
    return w;
}

constexpr std::size_t kMaxWitnesses = 64;

// Composed maps of one level, with word index j*M^{n-1} + idx(w) for j.w.
template <class T>
struct Level {
    std::vector<T> r;
    std::vector<T> t;
};

template <class T>
Level<T> extend(const Level<T>& prev, const std::vector<T>& r1, const std::vector<T>& t1) {
    Level<T> next;
    const std::size_t n = prev.r.size();
    next.r.resize(n * r1.size());
    next.t.resize(n * r1.size());
    for (std::size_t j = 0; j < r1.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            next.r[j * n + i] = r1[j] * prev.r[i];
            next.t[j * n + i] = r1[j] * prev.t[i] + t1[j];
        }
    return next;
}

struct LevelScan {
    EscLevel level;
    std::vector<std::pair<std::size_t, std::size_t>> zeros;
};

LevelScan scan_float(const Level<double>& lv, int n) {
    LevelScan out;
    out.level.n = n;
    out.level.min_distance = INFINITY;
    std::vector<std::size_t> idx(lv.r.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return lv.r[a] != lv.r[b] ? lv.r[a] < lv.r[b] : lv.t[a] < lv.t[b];
    });
    std::size_t start = 0;
    while (start < idx.size()) {
        std::size_t end = start + 1;
        const double r0 = lv.r[idx[start]];
        while (end < idx.size() &&
               std::abs(lv.r[idx[end]] - r0) <= kEscRatioTolerance * std::abs(r0))
            ++end;
        const std::size_t sz = end - start;
        if (sz > 1) {
            std::sort(idx.begin() + static_cast<std::ptrdiff_t>(start), idx.begin() + static_cast<std::ptrdiff_t>(end),
                      [&](std::size_t a, std::size_t b) { return lv.t[a] < lv.t[b]; });
            out.level.pair_count += sz * (sz - 1) / 2;
            for (std::size_t k = start + 1; k < end; ++k) {
                const double d = lv.t[idx[k]] - lv.t[idx[k - 1]];
                out.level.min_distance = std::min(out.level.min_distance, d);
                if (d == 0.0 && out.zeros.size() < kMaxWitnesses) out.zeros.emplace_back(idx[k - 1], idx[k]);
            }
        }
        start = end;
    }
    return out;
}

LevelScan scan_exact(const Level<Rational>& lv, int n) {
    LevelScan out;
    out.level.n = n;
    out.level.min_distance = INFINITY;
    std::vector<std::size_t> idx(lv.r.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return lv.r[a] != lv.r[b] ? lv.r[a] < lv.r[b] : lv.t[a] < lv.t[b];
    });
    std::optional<Rational> best;
    std::size_t start = 0;
    while (start < idx.size()) {
        std::size_t end = start + 1;
        while (end < idx.size() && lv.r[idx[end]] == lv.r[idx[start]]) ++end;
        const std::size_t sz = end - start;
        out.level.pair_count += sz * (sz - 1) / 2;
        for (std::size_t k = start + 1; k < end; ++k) {
            Rational d = lv.t[idx[k]] - lv.t[idx[k - 1]];
            if (!best || d < *best) best = d;
            if (d == 0 && out.zeros.size() < kMaxWitnesses) out.zeros.emplace_back(idx[k - 1], idx[k]);
        }
        start = end;
    }
    if (best) {
        out.level.min_distance = to_double(*best);
        out.level.exact_min_distance = to_string(*best);
    }
    return out;
}

std::optional<double> fit_c(const std::vector<EscLevel>& levels) {
    std::vector<double> xs, ys;
    for (const auto& l : levels)
        if (std::isfinite(l.min_distance) && l.min_distance > 0) {
            xs.push_back(l.n);
            ys.push_back(std::log(l.min_distance));
        }
    if (xs.size() < 2) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return std::exp(sxy / sxx);
}

}  // namespace

EscReport esc_scan(const SelfSimilarIfs& ss, int max_level, EscMode mode, std::size_t budget) {
    if (max_level < 1) throw Error(ErrorKind::Validation, "max level must be at least 1");
    const std::size_t M = ss.size();
    if (M > budget) throw Error(ErrorKind::BudgetExceeded, "level 1 alone exceeds the word budget");
    if (mode == EscMode::Rational && !ss.exact)
        throw Error(ErrorKind::Validation, "rational mode needs exact (rational) map parameters");

    EscReport rep;
    auto record = [&](LevelScan&& s, int n) {
        for (auto [a, b] : s.zeros) rep.zero_witnesses.push_back({n, decode_word(a, M, n), decode_word(b, M, n)});
        rep.levels.push_back(std::move(s.level));
    };

    std::size_t words = M;
    if (mode == EscMode::Float) {
        std::vector<double> r1, t1;
        for (const auto& s : ss.maps) {
            r1.push_back(s.r);
            t1.push_back(s.t);
        }
        Level<double> lv{r1, t1};
        for (int n = 1; n <= max_level; ++n) {
            if (n > 1) {
                if (words > budget / M) {
                    rep.warnings.push_back("levels " + std::to_string(n) + ".." + std::to_string(max_level) +
                                           " skipped: word count exceeds budget");
                    break;
                }
                words *= M;
                lv = extend(lv, r1, t1);
            }
            record(scan_float(lv, n), n);
        }
    } else {
        std::vector<Rational> r1, t1;
        for (const auto& s : *ss.exact) {
            r1.push_back(s.r);
            t1.push_back(s.t);
        }
        Level<Rational> lv{r1, t1};
        for (int n = 1; n <= max_level; ++n) {
            if (n > 1) {
                if (words > budget / M) {
                    rep.warnings.push_back("levels " + std::to_string(n) + ".." + std::to_string(max_level) +
                                           " skipped: word count exceeds budget");
                    break;
                }
                words *= M;
                lv = extend(lv, r1, t1);
            }
            record(scan_exact(lv, n), n);
        }
    }
    rep.fitted_c = fit_c(rep.levels);
    return rep;
}

}  // namespace iflab
