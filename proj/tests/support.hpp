#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "catch_amalgamated.hpp"

#include "iflab/config.hpp"
#include "iflab/error.hpp"
#include "iflab/gdifs.hpp"
#include "iflab/pwl.hpp"

namespace fixtures {

inline iflab::Cplifs cantor() {
    using iflab::PiecewiseLinearMap;
    return iflab::Cplifs({PiecewiseLinearMap::similarity(1.0 / 3, 0.0), PiecewiseLinearMap::similarity(1.0 / 3, 2.0 / 3)});
}

inline iflab::Cplifs triangle() {
    using iflab::PiecewiseLinearMap;
    return iflab::Cplifs({PiecewiseLinearMap({0.5}, {0.3, -0.3}, 0.1), PiecewiseLinearMap::similarity(0.3, 0.65)});
}

inline iflab::Cplifs inj() {
    using iflab::PiecewiseLinearMap;
    return iflab::Cplifs({PiecewiseLinearMap({0.85}, {0.35, 0.2}, 0.0), PiecewiseLinearMap::similarity(0.3, 0.7)});
}

// Single tent-shaped map; b is its breakpoint.
inline iflab::Cplifs tent(double b, double tau) {
    return iflab::Cplifs({iflab::PiecewiseLinearMap({b}, {0.3, -0.3}, tau)});
}

inline iflab::Gdifs mw() {
    iflab::Gdifs g;
    g.vertex_count = 2;
    g.edges = {{0, 0, {0.5, 0.0}}, {0, 1, {0.25, 0.5}}, {1, 0, {1.0 / 3, 0.0}}};
    return g;
}

// The Cantor system as a one-vertex graph with two loops.
inline iflab::Gdifs cantor_loops() {
    iflab::Gdifs g;
    g.vertex_count = 1;
    g.edges = {{0, 0, {1.0 / 3, 0.0}}, {0, 0, {1.0 / 3, 2.0 / 3}}};
    return g;
}

inline std::string path(const std::string& name) { return std::string(IFLAB_FIXTURES_DIR) + "/" + name; }

// A random small system: m maps, each injective (slopes of one sign) or
// with a single breakpoint.
inline iflab::Cplifs random_small(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<iflab::PiecewiseLinearMap> maps;
    const double cap = 0.9 / m;
    for (int k = 0; k < m; ++k) {
        const double r1 = 0.05 + (std::min(cap, 0.3) - 0.05) * u(rng);
        double r2 = 0.05 + (std::min(cap, 0.3) - 0.05) * u(rng);
        if (std::abs(r2 - r1) < 1e-3) r2 = r1 * 0.5;
        const double tau = u(rng);
        if (u(rng) < 0.5)
            maps.push_back(iflab::PiecewiseLinearMap::similarity(u(rng) < 0.5 ? r1 : -r1, tau));
        else
            maps.push_back(iflab::PiecewiseLinearMap({u(rng)}, {r1, u(rng) < 0.5 ? -r2 : r2}, tau));
    }
    return iflab::Cplifs(std::move(maps));
}

}  // namespace fixtures

template <class F>
iflab::ErrorKind error_kind(F&& f) {
    try {
        f();
    } catch (const iflab::Error& e) {
        return e.kind();
    }
    FAIL("expected iflab::Error");
    return iflab::ErrorKind::Validation;
}
