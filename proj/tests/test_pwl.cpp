#include "support.hpp"

#include "iflab/pwl.hpp"

using namespace iflab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("piecewise map evaluation", "[pwl]") {
    const PiecewiseLinearMap f({0.5}, {0.3, -0.3}, 0.1);
    CHECK_THAT(f(0.0), WithinAbs(0.1, 1e-15));
    CHECK_THAT(f(0.5), WithinAbs(0.25, 1e-15));
    CHECK_THAT(f(1.0), WithinAbs(0.1, 1e-15));
    // continuity at the breakpoint from both sides
    CHECK_THAT(f(0.5 - 1e-12), WithinAbs(f(0.5), 1e-12));
    CHECK(f.piece_index(0.5) == 1);
    CHECK(f.slope_at(0.5) == -0.3);
}

TEST_CASE("offsets propagate outward from the piece holding 0", "[pwl]") {
    // breakpoint at -1: the second piece holds 0 and carries tau
    const PiecewiseLinearMap g({-1.0}, {0.2, 0.4}, 0.0);
    CHECK_THAT(g.offsets()[1], WithinAbs(0.0, 1e-15));
    CHECK_THAT(g.offsets()[0], WithinAbs(-0.2, 1e-15));
    CHECK_THAT(g(-1.0), WithinAbs(-0.4, 1e-15));
    CHECK_THAT(g(-2.0), WithinAbs(-0.6, 1e-15));
}

TEST_CASE("map validation", "[pwl]") {
    CHECK(error_kind([] { PiecewiseLinearMap({0.5}, {0.3, 0.3}, 0.0); }) == ErrorKind::Validation);
    CHECK(error_kind([] { PiecewiseLinearMap({0.5}, {0.3}, 0.0); }) == ErrorKind::Validation);
    CHECK(error_kind([] { PiecewiseLinearMap({}, {1.0}, 0.0); }) == ErrorKind::Validation);
    CHECK(error_kind([] { PiecewiseLinearMap({}, {0.0}, 0.0); }) == ErrorKind::Validation);
    CHECK(error_kind([] { PiecewiseLinearMap({0.5, 0.2}, {0.1, 0.2, 0.1}, 0.0); }) == ErrorKind::Validation);
}

TEST_CASE("image of an interval", "[pwl]") {
    const PiecewiseLinearMap f({0.5}, {0.3, -0.3}, 0.1);
    const Interval a = image_interval(f, {0.0, 1.0});
    CHECK_THAT(a.lo, WithinAbs(0.1, 1e-15));
    CHECK_THAT(a.hi, WithinAbs(0.25, 1e-15));
    const Interval b = image_interval(f, {0.6, 0.9});
    CHECK_THAT(b.lo, WithinAbs(0.13, 1e-15));
    CHECK_THAT(b.hi, WithinAbs(0.22, 1e-15));
}

TEST_CASE("invariant intervals of the fixtures", "[pwl]") {
    const Interval c = invariant_interval(fixtures::cantor());
    CHECK_THAT(c.lo, WithinAbs(0.0, 1e-15));
    CHECK_THAT(c.hi, WithinAbs(1.0, 1e-15));

    const Interval t = invariant_interval(fixtures::triangle());
    CHECK_THAT(t.lo, WithinAbs(0.12142857142857141, 1e-14));
    CHECK_THAT(t.hi, WithinAbs(0.9285714285714286, 1e-14));
    const Interval c1 = cylinder(fixtures::triangle(), Word{0}, t);
    CHECK_THAT(c1.lo, WithinAbs(0.12142857142857141, 1e-14));
    CHECK_THAT(c1.hi, WithinAbs(0.25, 1e-14));

    const Interval j = invariant_interval(fixtures::inj());
    CHECK_THAT(j.lo, WithinAbs(0.0, 1e-15));
    CHECK_THAT(j.hi, WithinAbs(1.0, 1e-14));

    const Interval p = invariant_interval(fixtures::tent(0.5, 0.2));
    CHECK(p.degenerate());
    CHECK_THAT(p.lo, WithinRel(0.2 / 0.7, 1e-14));
}

TEST_CASE("smallness", "[pwl]") {
    CHECK(check_small(fixtures::cantor()).small);
    CHECK(check_small(fixtures::triangle()).small);
    CHECK(check_small(fixtures::inj()).small);
    // non-injective with rho = 0.4 needs 0.4 < (1 - 0.4) / 2
    const Cplifs big({PiecewiseLinearMap({0.5}, {0.4, -0.4}, 0.0)});
    const auto rep = check_small(big);
    CHECK_FALSE(rep.small);
    CHECK_FALSE(rep.per_map[0].ok);
    CHECK_THAT(rep.per_map[0].required, WithinAbs(0.3, 1e-15));
    const Cplifs heavy({PiecewiseLinearMap::similarity(0.45, 0.0), PiecewiseLinearMap::similarity(0.45, 1.0),
                        PiecewiseLinearMap::similarity(0.2, 2.0)});
    CHECK_FALSE(check_small(heavy).small);
}

TEST_CASE("property: the invariant interval is mapped into itself", "[pwl][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Cplifs sys = fixtures::random_small(rng, 2 + trial % 3);
        const Interval I = invariant_interval(sys);
        const double slack = 1e-12 * std::max(1.0, std::abs(I.lo) + std::abs(I.hi));
        for (const auto& f : sys.maps()) CHECK(I.contains(image_interval(f, I), slack));
        for (const auto& f : sys.maps()) CHECK(I.contains(f.fixed_point(), slack));
    }
}

TEST_CASE("property: exact images agree with dense sampling", "[pwl][property]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Cplifs sys = fixtures::random_small(rng, 2);
        const auto& f = sys[0];
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        const Interval img = image_interval(f, {a, b});
        double lo = INFINITY, hi = -INFINITY;
        for (int k = 0; k <= 2000; ++k) {
            const double y = f(a + (b - a) * k / 2000.0);
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        CHECK(img.lo <= lo + 1e-12);
        CHECK(img.hi >= hi - 1e-12);
        CHECK(img.hi - img.lo <= (hi - lo) + f.max_abs_slope() * (b - a) / 1000.0 + 1e-12);
    }
}

TEST_CASE("property: cylinders are nested and contain their words' images", "[pwl][property]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Cplifs sys = fixtures::random_small(rng, 3);
        const Interval I = invariant_interval(sys);
        std::uniform_int_distribution<int> letter(0, 2);
        Word w;
        Interval prev = I;
        for (int n = 0; n < 8; ++n) {
            w.push_back(letter(rng));
            const Interval c = cylinder(sys, w, I);
            CHECK(prev.contains(c, 1e-12));
            CHECK(c.length() <= std::pow(sys.rho_max(), n + 1) * I.length() + 1e-12);
            const double x = I.lo + 0.37 * I.length();
            CHECK(c.contains(eval_word(sys, w, x), 1e-12));
            prev = c;
        }
    }
}
