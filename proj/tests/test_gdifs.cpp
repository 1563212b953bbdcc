#include "support.hpp"

#include "iflab/dimension.hpp"
#include "iflab/gdifs.hpp"
#include "iflab/regularity.hpp"

using namespace iflab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("GDIFS validation", "[gdifs]") {
    CHECK_NOTHROW(validate_gdifs(fixtures::mw()));
    Gdifs one_way;
    one_way.vertex_count = 2;
    one_way.edges = {{0, 1, {0.5, 0.0}}};
    CHECK(error_kind([&] { validate_gdifs(one_way); }) == ErrorKind::NotStronglyConnected);
    Gdifs bad = fixtures::mw();
    bad.edges[0].map.r = 1.0;
    CHECK(error_kind([&] { validate_gdifs(bad); }) == ErrorKind::BadRatio);
    bad = fixtures::mw();
    bad.edges[0].to = 5;
    CHECK(error_kind([&] { validate_gdifs(bad); }) == ErrorKind::Validation);
}

TEST_CASE("pressure matrices", "[gdifs]") {
    const Matrix c0 = pressure_matrix(fixtures::mw(), 0.0);
    CHECK(c0(0, 0) == 1.0);
    CHECK(c0(0, 1) == 1.0);
    CHECK(c0(1, 0) == 1.0);
    CHECK(c0(1, 1) == 0.0);
    const Matrix c1 = pressure_matrix(fixtures::mw(), 1.0);
    CHECK(c1(0, 0) == 0.5);
    CHECK(c1(0, 1) == 0.25);
    CHECK_THAT(c1(1, 0), WithinAbs(1.0 / 3, 1e-16));
}

TEST_CASE("Perron roots", "[gdifs]") {
    CHECK_THAT(spectral_radius(Matrix(2, 2, 1.0)), WithinRel(2.0, 1e-12));
    Matrix perm(2, 2);
    perm(0, 1) = perm(1, 0) = 1.0;
    CHECK_THAT(spectral_radius(perm), WithinRel(1.0, 1e-12));
    CHECK_THAT(spectral_radius(pressure_matrix(fixtures::mw(), 0.4965)), WithinRel(1.0000163083960194, 1e-12));
    Matrix tiny(3, 3);
    tiny(0, 1) = 1e-3;
    tiny(1, 2) = 2e-3;
    tiny(2, 0) = 4e-3;
    CHECK_THAT(spectral_radius(tiny), WithinRel(2e-3, 1e-12));
    Matrix reducible(2, 2, 0.0);
    reducible(0, 0) = reducible(0, 1) = 1.0;
    CHECK(error_kind([&] { perron(reducible); }) == ErrorKind::Reducible);
}

TEST_CASE("property: the Perron root decreases in s", "[gdifs][property]") {
    for (const Gdifs& g : {fixtures::mw(), fixtures::cantor_loops()}) {
        double prev = spectral_radius(pressure_matrix(g, 0.0));
        CHECK(prev >= 1.0);
        for (int k = 1; k <= 20; ++k) {
            const double cur = spectral_radius(pressure_matrix(g, 0.1 * k));
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("natural exponents", "[gdifs]") {
    CHECK_THAT(natural_exponent(fixtures::mw()).alpha, WithinAbs(0.4965173325451844, 1e-12));
    CHECK_THAT(natural_exponent(fixtures::cantor_loops()).alpha, WithinAbs(std::log(2.0) / std::log(3.0), 1e-12));
    Gdifs loop;
    loop.vertex_count = 1;
    loop.edges = {{0, 0, {0.5, 1.0}}};
    const auto ne = natural_exponent(loop);
    CHECK(ne.degenerate);
    CHECK(ne.alpha == 0.0);
    CHECK(error_kind([&] { markov_measure(loop); }) == ErrorKind::Validation);
}

TEST_CASE("Markov measure of the mw fixture", "[gdifs]") {
    const MarkovMeasure mm = markov_measure(fixtures::mw());
    CHECK_THAT(mm.u[0], WithinAbs(1.223344818464735, 1e-10));
    CHECK_THAT(mm.u[1], WithinAbs(0.6146327054110503, 1e-10));
    CHECK_THAT(mm.v[0], WithinAbs(0.6330862920662177, 1e-10));
    CHECK_THAT(mm.v[1], WithinAbs(0.36691370793378236, 1e-10));
    CHECK_THAT(mm.P(0, 0), WithinAbs(0.7088157997097281, 1e-10));
    CHECK_THAT(mm.P(0, 1), WithinAbs(0.2911842002902721, 1e-10));
    CHECK_THAT(mm.P(1, 0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(mm.p[0], WithinAbs(0.7744828350402594, 1e-10));
    CHECK_THAT(mm.p[1], WithinAbs(0.2255171649597406, 1e-10));
    const EntropyLyapunov el = entropy_lyapunov(mm, fixtures::mw());
    CHECK_THAT(el.h, WithinAbs(0.46717470200829464, 1e-10));
    CHECK_THAT(el.chi, WithinAbs(0.9409031092903097, 1e-10));
    CHECK_THAT(el.h / el.chi, WithinAbs(mm.alpha, 1e-10));
}

namespace {

void check_markov_invariants(const MarkovMeasure& mm, const Gdifs& g) {
    const std::size_t q = mm.p.size();
    double sum_v = 0.0, sum_uv = 0.0, sum_p = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        CHECK(mm.u[i] > 0);
        CHECK(mm.v[i] > 0);
        CHECK(mm.p[i] > 0);
        sum_v += mm.v[i];
        sum_uv += mm.u[i] * mm.v[i];
        sum_p += mm.p[i];
        double row = 0.0, stat = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
            row += mm.P(i, j);
            stat += mm.p[j] * mm.P(j, i);
        }
        CHECK_THAT(row, WithinAbs(1.0, 1e-12));
        CHECK_THAT(stat, WithinAbs(mm.p[i], 1e-12));
    }
    CHECK_THAT(sum_v, WithinAbs(1.0, 1e-12));
    CHECK_THAT(sum_uv, WithinAbs(1.0, 1e-12));
    CHECK_THAT(sum_p, WithinAbs(1.0, 1e-12));
    const EntropyLyapunov el = entropy_lyapunov(mm, g);
    CHECK_THAT(el.h / el.chi, WithinAbs(mm.alpha, 1e-10));
}

}  // namespace

TEST_CASE("property: Markov invariants on every constructed system", "[gdifs][property]") {
    check_markov_invariants(markov_measure(fixtures::mw()), fixtures::mw());
    check_markov_invariants(markov_measure(fixtures::cantor_loops()), fixtures::cantor_loops());
    for (int n : {1, 2}) {
        const Gdifs g = associate_gdifs(fixtures::cantor(), n).gdifs;
        check_markov_invariants(markov_measure(g), g);
    }
    const Gdifs t = associate_gdifs(fixtures::triangle(), 1).gdifs;
    check_markov_invariants(markov_measure(t), t);
    const Gdifs j = associate_gdifs(fixtures::inj(), 2).gdifs;
    check_markov_invariants(markov_measure(j), j);
}

TEST_CASE("Cantor as an associated system", "[gdifs]") {
    const auto a1 = associate_gdifs(fixtures::cantor(), 1);
    CHECK(a1.gdifs.vertex_count == 2);
    REQUIRE(a1.gdifs.edges.size() == 4);
    for (std::size_t e = 0; e < 4; ++e) {
        CHECK_THAT(a1.gdifs.edges[e].map.r, WithinAbs(1.0 / 3, 1e-16));
        CHECK(a1.psi.words[e] == Word{a1.gdifs.edges[e].from});
    }
    const MarkovMeasure mm = markov_measure(a1.gdifs);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK_THAT(mm.P(i, j), WithinAbs(0.5, 1e-12));
    CHECK_THAT(mm.p[0], WithinAbs(0.5, 1e-12));
    const EntropyLyapunov el = entropy_lyapunov(mm, a1.gdifs);
    CHECK_THAT(el.h, WithinAbs(std::log(2.0), 1e-12));
    CHECK_THAT(el.chi, WithinAbs(std::log(3.0), 1e-12));
    const Matrix c = pressure_matrix(a1.gdifs, 0.7);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK_THAT(c(i, j), WithinAbs(std::pow(1.0 / 3, 0.7), 1e-15));

    const auto a2 = associate_gdifs(fixtures::cantor(), 2);
    CHECK(a2.gdifs.vertex_count == 4);
    REQUIRE(a2.gdifs.edges.size() == 16);
    for (const auto& e : a2.gdifs.edges) CHECK_THAT(e.map.r, WithinAbs(1.0 / 9, 1e-16));
}

TEST_CASE("associated edges agree with the composed maps", "[gdifs]") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& [sys, n] : {std::pair{fixtures::triangle(), 1}, std::pair{fixtures::triangle(), 2},
                                 std::pair{fixtures::inj(), 2}}) {
        const auto a = associate_gdifs(sys, n);
        const std::size_t q = a.vertices.size();
        for (std::size_t e = 0; e < a.gdifs.edges.size(); ++e) {
            const Edge& edge = a.gdifs.edges[e];
            const Word& v = a.vertices[static_cast<std::size_t>(edge.from)];
            const Interval& Iu = a.cylinders[static_cast<std::size_t>(edge.to)];
            CHECK(static_cast<std::size_t>(edge.from) * q + static_cast<std::size_t>(edge.to) == e);
            for (int k = 0; k < 1000 / static_cast<int>(a.gdifs.edges.size()) + 1; ++k) {
                const double x = Iu.lo + (Iu.hi - Iu.lo) * u(rng);
                CHECK_THAT(edge.map(x), WithinAbs(eval_word(sys, v, x), 1e-12));
            }
            CHECK_THAT(a.psi.ratios[e], WithinAbs(edge.map.r, 1e-15));
            CHECK(std::abs(edge.map.r) <= std::pow(sys.rho_max(), n) * (1 + 1e-12));
        }
    }
}

TEST_CASE("associate_gdifs refuses irregular orders and oversized graphs", "[gdifs]") {
    // inj.json needs order 2; at order 1 an image straddles 0.85
    CHECK(error_kind([] { associate_gdifs(fixtures::inj(), 1); }) == ErrorKind::NotRegular);
    CHECK(error_kind([] { associate_gdifs(fixtures::cantor(), 6, 1000); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("GDIFS sampling", "[gdifs]") {
    Gdifs loop;
    loop.vertex_count = 1;
    loop.edges = {{0, 0, {0.5, 1.0}}};
    for (double x : sample_gdifs_attractor(loop, 50, 1)) CHECK_THAT(x, WithinAbs(2.0, 1e-15));

    const Gdifs g = associate_gdifs(fixtures::cantor(), 2).gdifs;
    const auto pts = sample_gdifs_attractor(g, 2000, 42);
    const double delta = std::pow(1.0 / 3, 64);
    for (double x : pts) {
        CHECK(x >= -delta);
        CHECK(x <= 1.0 + delta);
        CHECK_FALSE((x > 1.0 / 3 + delta && x < 2.0 / 3 - delta));
        CHECK(point_in_attractor(fixtures::cantor(), x, 20, 1e-12).in);
    }
    CHECK(sample_gdifs_attractor(g, 100, 7) == sample_gdifs_attractor(g, 100, 7));
    CHECK(sample_gdifs_attractor(g, 100, 7) != sample_gdifs_attractor(g, 100, 8));
}

TEST_CASE("Monte-Carlo entropy agrees with the closed form", "[gdifs]") {
    const Gdifs g = fixtures::mw();
    const MarkovMeasure mm = markov_measure(g);
    const double h = entropy_lyapunov(mm, g).h;
    const MonteCarloEntropy mc = monte_carlo_entropy(mm, g, 10'000, 2024);
    CHECK(mc.steps == 10'000);
    CHECK(mc.standard_error > 0);
    CHECK(std::abs(mc.estimate - h) <= 3 * mc.standard_error);

    const MarkovMeasure uniform = markov_measure(fixtures::cantor_loops());
    const MonteCarloEntropy flat = monte_carlo_entropy(uniform, fixtures::cantor_loops(), 10'000, 1);
    CHECK_THAT(flat.estimate, WithinAbs(std::log(2.0), 1e-12));
}

TEST_CASE("sandwich bounds", "[gdifs]") {
    const Gdifs g = fixtures::mw();
    const MarkovMeasure mm = markov_measure(g);
    const SandwichCheck sc = sandwich_check(mm, g, 6);
    CHECK(sc.violations == 0);
    CHECK_THAT(sc.constants.c1, WithinAbs(0.2255171649597406, 1e-10));
    CHECK_THAT(sc.constants.c2, WithinAbs(0.7744828350402594, 1e-10));
    CHECK_THAT(sc.min_ratio, WithinAbs(0.22551716495974058, 1e-10));
    CHECK_THAT(sc.max_ratio, WithinAbs(0.7744828350402596, 1e-10));

    // one vertex: mu of a chain is the product of probabilities = |rho|^alpha
    const MarkovMeasure c = markov_measure(fixtures::cantor_loops());
    const SandwichCheck cc = sandwich_check(c, fixtures::cantor_loops(), 6);
    CHECK(cc.violations == 0);
    CHECK_THAT(cc.min_ratio, WithinAbs(1.0, 1e-12));
    CHECK_THAT(cc.max_ratio, WithinAbs(1.0, 1e-12));
    CHECK(cc.chains == 2 + 4 + 8 + 16 + 32 + 64);
}
