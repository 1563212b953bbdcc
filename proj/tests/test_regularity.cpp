#include "support.hpp"

#include "iflab/regularity.hpp"

using namespace iflab;
using Catch::Matchers::WithinAbs;

TEST_CASE("regularity orders of the fixtures", "[regularity]") {
    const auto c = regularity_order(fixtures::cantor());
    CHECK(c.status == RegularityStatus::Regular);
    CHECK(c.order == 1);
    CHECK(c.breakpoints.empty());

    const auto t = regularity_order(fixtures::triangle());
    CHECK(t.status == RegularityStatus::Regular);
    CHECK(t.order == 1);
    REQUIRE(t.breakpoints.size() == 1);
    CHECK(t.breakpoints[0].inside_invariant_interval);
    CHECK_FALSE(t.breakpoints[0].membership.in);

    const auto j = regularity_order(fixtures::inj());
    CHECK(j.status == RegularityStatus::Regular);
    CHECK(j.order == 2);
}

TEST_CASE("default max order", "[regularity]") {
    CHECK(default_max_order(2) == 12);
    CHECK(default_max_order(3) == 7);
    CHECK(default_max_order(4) == 6);
    CHECK(default_max_order(5000) == 1);
}

TEST_CASE("a breakpoint at the fixed point is certified irregular", "[regularity]") {
    // tent with b = tau / 0.7: the fixed point sits on the breakpoint
    const auto r = regularity_order(fixtures::tent(0.5, 0.35));
    CHECK(r.status == RegularityStatus::Irregular);
    REQUIRE(r.witness);
    CHECK(r.witness->certified);
    // away from the coincidence the single point attractor misses b
    const auto ok = regularity_order(fixtures::tent(0.5, 0.2));
    CHECK(ok.status == RegularityStatus::Regular);
    CHECK(ok.order == 1);
}

TEST_CASE("an attractor point on a breakpoint is found by probing", "[regularity]") {
    // 0 is the fixed point of f1 and the breakpoint of f2 is f2(0) = 0.25,
    // an attractor point that is not a fixed point.
    const Cplifs sys({PiecewiseLinearMap::similarity(0.25, 0.0), PiecewiseLinearMap({0.25}, {0.2, -0.2}, 0.25)});
    REQUIRE(check_small(sys).small);
    const auto r = regularity_order(sys);
    CHECK(r.status == RegularityStatus::Irregular);
    REQUIRE(r.witness);
    CHECK_FALSE(r.witness->certified);
    CHECK(r.witness->chain.size() == 40);
}

TEST_CASE("regularity rejects large systems and honours the budget", "[regularity]") {
    const Cplifs big({PiecewiseLinearMap({0.5}, {0.4, -0.4}, 0.0)});
    CHECK(error_kind([&] { regularity_order(big); }) == ErrorKind::NotSmall);
    RegularityOptions o;
    o.budget = 100;
    CHECK(error_kind([&] { regularity_order(fixtures::inj(), o); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("regular beyond the max order is undetermined", "[regularity]") {
    RegularityOptions o;
    o.max_order = 1;
    const auto r = regularity_order(fixtures::inj(), o);
    CHECK(r.status == RegularityStatus::Undetermined);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("attractor membership", "[regularity]") {
    const Cplifs c = fixtures::cantor();
    const auto quarter = point_in_attractor(c, 0.25, 30);
    CHECK(quarter.in);
    REQUIRE(quarter.witness.size() == 30);
    // 1/4 = 0.020202... in base 3
    for (std::size_t i = 0; i < 30; ++i) CHECK(quarter.witness[i] == static_cast<int>(i % 2 == 0 ? 0 : 1));
    CHECK(quarter.resolution <= std::pow(1.0 / 3, 30) + 1e-15);
    CHECK_FALSE(point_in_attractor(c, 0.5, 30).in);
    CHECK_FALSE(point_in_attractor(c, 1.5, 30).in);
    // a tolerance reaches the nearest attractor point 2/3
    CHECK(point_in_attractor(c, 0.6, 20, 0.07).in);
    CHECK_FALSE(point_in_attractor(c, 0.6, 20, 0.06).in);
    CHECK(error_kind([&] { point_in_attractor(c, 0.25, 30, 0.0, 10); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("distortion constants", "[regularity]") {
    const auto b = bdp_constants(fixtures::inj(), 2);
    CHECK_THAT(b.c1, WithinAbs(0.04 / 0.35, 1e-15));
    CHECK_THAT(b.c2, WithinAbs(0.35 / 0.04, 1e-12));
}

TEST_CASE("property: derivative ratios on regular fixtures obey the distortion bounds", "[regularity][property]") {
    std::mt19937_64 rng(21);
    for (const Cplifs& sys : {fixtures::cantor(), fixtures::triangle(), fixtures::inj()}) {
        const auto reg = regularity_order(sys);
        REQUIRE(reg.status == RegularityStatus::Regular);
        const int N = reg.order;
        const auto c = bdp_constants(sys, N);
        const Interval I = invariant_interval(sys);
        std::uniform_int_distribution<int> len(N, 3 * N), letter(0, static_cast<int>(sys.size()) - 1);
        std::uniform_real_distribution<double> pt(I.lo, I.hi);
        for (int trial = 0; trial < 2000; ++trial) {
            Word w(static_cast<std::size_t>(len(rng)));
            for (int& a : w) a = letter(rng);
            const double q = std::abs(derivative_word(sys, w, pt(rng)) / derivative_word(sys, w, pt(rng)));
            CHECK(q >= c.c1 * (1 - 1e-12));
            CHECK(q <= c.c2 * (1 + 1e-12));
        }
    }
}

TEST_CASE("property: regular systems have no breakpoint in level-N cylinders", "[regularity][property]") {
    std::mt19937_64 rng(4);
    int regular = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const Cplifs sys = fixtures::random_small(rng, 2);
        const auto r = regularity_order(sys);
        if (r.status != RegularityStatus::Regular) continue;
        ++regular;
        const Interval I = invariant_interval(sys);
        const std::size_t count = std::size_t{1} << r.order;
        for (std::size_t idx = 0; idx < count; ++idx) {
            Word w(static_cast<std::size_t>(r.order));
            for (int p = 0; p < r.order; ++p) w[static_cast<std::size_t>(p)] = static_cast<int>((idx >> p) & 1U);
            const Interval c = cylinder(sys, w, I);
            for (const auto& f : sys.maps())
                for (double b : f.breakpoints()) CHECK_FALSE(c.contains(b));
        }
    }
    CHECK(regular > 10);
}
