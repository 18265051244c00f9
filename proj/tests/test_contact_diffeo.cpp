#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctlab/contact_diffeo.hpp"

using namespace ctlab;

namespace {

struct Fixture {
    Grid g{16};
    ContactModel m{g};
    RuminComplex R{m};
    HodgeStack H{R, SolverConfig{}};
    ContactLab lab{m, R, H};
};

}  // namespace

TEST_CASE("generating function smallness guard") {
    Grid g{8};
    ScalarField big(g, 0.5);
    CHECK_THROWS(GeneratingFunction(big, 0.1));
    CHECK_NOTHROW(GeneratingFunction(ScalarField(g, 0.05), 0.1));
}

TEST_CASE("g = 1 generates the Reeb field") {
    Fixture fx;
    const FrameVectorField x = contact_field_from_g(fx.lab, ScalarField(fx.g, 1.0));
    CHECK((x.f0 - ScalarField(fx.g, 1.0)).max_abs() < 1e-13);
    CHECK(x.f1.max_abs() < 1e-13);
    CHECK(x.f2.max_abs() < 1e-13);
}

TEST_CASE("contact fields satisfy the three characterizations") {
    Fixture fx;
    ScalarField g = random_band_limited(fx.g, 55, 3, 0.05);
    const FrameVectorField x = contact_field_from_g(fx.lab, g);
    const auto res = check_contact_field(fx.lab, x);
    CHECK(res.lemma_a < 1e-8);
    CHECK(res.lemma_b < 1e-8);
    CHECK(res.lemma_c < 1e-8);
    // pi_Q L_X eta = 0 is the defining identity.
    CHECK(rumin_norm(fx.R.pi_Q(lie_derivative(fx.m, x, fx.m.eta()))) < 1e-10);
}

TEST_CASE("interior product with d eta matches the coordinate computation") {
    Fixture fx;
    FrameVectorField x{random_band_limited(fx.g, 61, 2, 1.0),
                       random_band_limited(fx.g, 62, 2, 1.0),
                       random_band_limited(fx.g, 63, 2, 1.0)};
    const RuminForm iota = interior_d_eta(x);
    // Coordinate check: X -| d eta, then read off the (eps1, eps2) frame
    // coefficients of the resulting horizontal 1-form.
    const auto vc = fx.m.vector_to_coords(x);
    const CoordOneForm c = interior(vc, fx.m.d_eta());
    const auto fr = fx.m.coords_to_frame(c);
    CHECK((fr[1] - iota.comp(0)).max_abs() < 1e-12);
    CHECK((fr[2] - iota.comp(1)).max_abs() < 1e-12);
    CHECK(fr[0].max_abs() < 1e-12);  // the contraction is horizontal
}

TEST_CASE("dphi0_inverse undoes the linearization on contact data") {
    Fixture fx;
    // For v = (g, 0, 0) the inverse produces exactly X_g.
    ScalarField g = random_band_limited(fx.g, 71, 2, 0.05);
    PhiValue v{g, ScalarField(fx.g), RuminForm(1, fx.g)};
    const FrameVectorField x = dphi0_inverse(fx.lab, v);
    const FrameVectorField ref = contact_field_from_g(fx.lab, g);
    CHECK((x.f0 - ref.f0).max_abs() < 1e-12);
    CHECK((x.f1 - ref.f1).max_abs() < 1e-12);
    CHECK((x.f2 - ref.f2).max_abs() < 1e-12);
}

TEST_CASE("phi of the zero field is zero and of X_g has small defect parts") {
    Fixture fx;
    FrameVectorField zero{ScalarField(fx.g), ScalarField(fx.g), ScalarField(fx.g)};
    RuminForm beta(1, fx.g);
    const PhiValue v = phi(fx.lab, zero, &beta);
    CHECK(v.g.max_abs() < 1e-12);
    CHECK(v.alpha.max_abs() < 1e-12);
    CHECK(rumin_norm(v.omega) < 1e-12);
    CHECK(rumin_norm(beta) < 1e-12);

    // For small X_g the (alpha, omega) parts are quadratically small.
    ScalarField g = random_band_limited(fx.g, 81, 2, 0.01);
    const FrameVectorField x = contact_field_from_g(fx.lab, g);
    RuminForm beta2(1, fx.g);
    const PhiValue w = phi(fx.lab, x, &beta2);
    CHECK(l2_norm(w.alpha) < 5e-3 * l2_norm(w.g));
    CHECK(rumin_norm(w.omega) < 5e-3 * l2_norm(w.g));
}

TEST_CASE("solver converges on a small fixture and the defect is certified") {
    Fixture fx;
    ScalarField g = ScalarField::sample(
        fx.g, [](double x, double, double) { return 0.02 * std::sin(x); });
    SolveReport rep;
    const FrameVectorField x = solve_psi(fx.lab, GeneratingFunction(g, 0.1), rep, 1e-9, 20);
    CHECK(rep.converged);
    CHECK(rep.final_defect <= 1e-9);
    // Recompute the defect from scratch: pi_Q F_X^* eta.
    const GridMap f = flow_from_field(fx.m, x, fx.lab.geo);
    CHECK(rumin_norm(fx.R.pi_Q(pullback_eta(f))) <= 2e-9);
}

TEST_CASE("log-log slope helper on exact power data") {
    std::vector<double> t{1.0, 0.5, 0.25}, y;
    for (double v : t) y.push_back(3.0 * v * v);
    CHECK(detail::loglog_slope(t, y) == doctest::Approx(2.0).epsilon(1e-12));
}
