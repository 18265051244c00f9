#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctlab/flowmap.hpp"

using namespace ctlab;

TEST_CASE("constant translation pulls back by shifting the argument") {
    Grid g{16};
    GridMap f(g);
    const double c = 0.37;
    for (auto& v : f.u[0].values()) v = c;
    ScalarField s = ScalarField::sample(g, [](double x, double y, double) {
        return std::sin(x) + 0.2 * std::cos(y);
    });
    ScalarField ref = ScalarField::sample(g, [c](double x, double y, double) {
        return std::sin(x + c) + 0.2 * std::cos(y);
    });
    CHECK((pullback_scalar(f, s) - ref).max_abs() < 1e-12);
}

TEST_CASE("compose and invert round-trip a smooth map") {
    Grid g{16};
    GridMap f(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double x = g.coord(i), y = g.coord(j);
                f.u[0].at(i, j, k) = 0.05 * std::sin(y);
                f.u[1].at(i, j, k) = 0.04 * std::cos(x);
                f.u[2].at(i, j, k) = 0.03 * std::sin(x + y);
            }
    const GridMap finv = invert(f);
    const GridMap round = compose(finv, f);  // f o f^{-1}
    CHECK(round.max_displacement() < 1e-9);
}

TEST_CASE("quarter turn is an exact symmetry of eta") {
    Grid g{16};
    ContactModel m(g);
    const CoordOneForm pe = pullback_quarter_turn(m.eta(), QuarterTurn{1});
    for (int i = 0; i < 3; ++i) CHECK((pe.c[i] - m.eta().c[i]).max_abs() < 1e-13);
    // Four quarter turns compose to the identity on scalars.
    ScalarField s = random_band_limited(g, 77, 3, 1.0);
    ScalarField r = s;
    for (int q = 0; q < 4; ++q) r = compose_with_quarter_turn(r, QuarterTurn{1});
    CHECK((r - s).max_abs() < 1e-13);
}

TEST_CASE("geodesic integrator self-converges at fourth order") {
    ContactModel m(Grid{8}, JChoice::aniso(0.3));
    const std::array<double, 3> x0{0.3, 1.1, 2.0};
    const std::array<double, 3> v{0.4, -0.3, 0.5};
    GeodesicConfig fine;
    fine.step_count = 256;
    const auto ref = exp_map(m, x0, v, fine);
    std::vector<double> hs, errs;
    for (int steps : {8, 16, 32}) {
        GeodesicConfig cfg;
        cfg.step_count = steps;
        const auto y = exp_map(m, x0, v, cfg);
        double e = 0.0;
        for (int c = 0; c < 3; ++c) e = std::max(e, std::abs(y[c] - ref[c]));
        hs.push_back(1.0 / steps);
        errs.push_back(e);
    }
    const double slope = std::log(errs[0] / errs[2]) / std::log(hs[0] / hs[2]);
    CHECK(slope >= 3.8);
}

TEST_CASE("flat exponential map is translation") {
    ContactModel m(Grid{8});
    const std::array<double, 3> x0{0.1, 0.2, 0.3};
    const std::array<double, 3> v{0.5, -0.4, 0.2};
    const auto y = exp_map(m, x0, v);
    CHECK(y[0] == doctest::Approx(0.6));
    CHECK(y[1] == doctest::Approx(-0.2));
    CHECK(y[2] == doctest::Approx(0.5));
}

TEST_CASE("pullback along the flow is functorial on 1-forms") {
    Grid g{16};
    ContactModel m(g);
    FrameVectorField x{random_band_limited(g, 91, 1, 0.01), random_band_limited(g, 92, 1, 0.01),
                       random_band_limited(g, 93, 1, 0.01)};
    FrameVectorField y{random_band_limited(g, 94, 1, 0.01), random_band_limited(g, 95, 1, 0.01),
                       random_band_limited(g, 96, 1, 0.01)};
    const GridMap f = flow_from_field(m, x);
    const GridMap h = flow_from_field(m, y);
    const CoordOneForm lhs = pullback(compose(f, h), m.eta());
    const CoordOneForm rhs = pullback(f, pullback(h, m.eta()));
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, (lhs.c[i] - rhs.c[i]).max_abs());
    CHECK(worst < 1e-8);
}

TEST_CASE("quadratic remainder vanishes for the zero field") {
    Grid g{8};
    ContactModel m(g);
    FrameVectorField zero{ScalarField(g), ScalarField(g), ScalarField(g)};
    const CoordOneForm q = quad_remainder(m, zero, m.eta());
    for (int i = 0; i < 3; ++i) CHECK(q.c[i].max_abs() < 1e-13);
}

TEST_CASE("maps reject displacements beyond the injectivity guard") {
    Grid g{8};
    GridMap f(g);
    CHECK_NOTHROW(GridMap{g});
    ScalarField big(g, 2.0);
    CHECK_THROWS(GridMap({big, ScalarField(g), ScalarField(g)}));
}
