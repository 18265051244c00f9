#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctlab/rumin.hpp"

using namespace ctlab;

namespace {

struct Fixture {
    Grid g{16};
    ContactModel m{g};
    RuminComplex R{m};

    RuminForm rand_form(int degree, std::uint64_t seed, int band = 3) const {
        std::vector<ScalarField> c;
        const int nc = RuminForm::component_count(degree);
        for (int i = 0; i < nc; ++i) c.push_back(random_band_limited(g, seed * 4 + i, band, 1.0));
        return RuminForm(degree, std::move(c));
    }
};

}  // namespace

TEST_CASE("complex identities D_Q d_Q = 0 and d_Q2 D_Q = 0") {
    Fixture fx;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        RuminForm f = fx.rand_form(0, s, 4);
        RuminForm a = fx.rand_form(1, s + 50, 4);
        CHECK(rumin_norm(fx.R.D_Q(fx.R.d_Q0(f))) / rumin_norm(f) < 1e-12);
        CHECK(rumin_norm(fx.R.d_Q2(fx.R.D_Q(a))) / rumin_norm(a) < 1e-12);
    }
}

TEST_CASE("d_Q0 of a constant vanishes and the complex resolves constants") {
    Fixture fx;
    RuminForm one(0, {ScalarField(fx.g, 1.0)});
    CHECK(rumin_norm(fx.R.d_Q0(one)) == 0.0);
}

TEST_CASE("Hodge star is an isometry with the expected involution signs") {
    Fixture fx;
    RuminForm a = fx.rand_form(1, 7);
    RuminForm b = fx.rand_form(2, 8);
    CHECK(rumin_norm(fx.R.star(a)) == doctest::Approx(rumin_norm(a)).epsilon(1e-12));
    // On the middle degrees the two quarter rotations compose to the identity.
    CHECK(rumin_norm(fx.R.star(fx.R.star(a)) - a) < 1e-13);
    CHECK(rumin_norm(fx.R.star(fx.R.star(b)) - b) < 1e-13);
}

TEST_CASE("adjointness of the three operator pairs") {
    Fixture fx;
    RuminForm f = fx.rand_form(0, 11);
    RuminForm a = fx.rand_form(1, 12);
    RuminForm b = fx.rand_form(2, 13);
    RuminForm t = fx.rand_form(3, 14);
    CHECK(std::abs(rumin_inner(fx.R.d_Q0(f), a) - rumin_inner(f, fx.R.delta_Q(a))) /
              (rumin_norm(f) * rumin_norm(a)) < 1e-12);
    CHECK(std::abs(rumin_inner(fx.R.D_Q(a), b) - rumin_inner(a, fx.R.D_Q_star(b))) /
              (rumin_norm(a) * rumin_norm(b)) < 1e-12);
    CHECK(std::abs(rumin_inner(fx.R.d_Q2(b), t) - rumin_inner(b, fx.R.delta_Q(t))) /
              (rumin_norm(b) * rumin_norm(t)) < 1e-12);
}

TEST_CASE("pi_Q annihilates eta and multiples of it") {
    Fixture fx;
    CHECK(rumin_norm(fx.R.pi_Q(fx.m.eta())) < 1e-13);
    ScalarField f = random_band_limited(fx.g, 17, 2, 1.0);
    CoordOneForm feta(multiply(f, fx.m.cos_z()), multiply(f, fx.m.sin_z()), ScalarField(fx.g));
    CHECK(rumin_norm(fx.R.pi_Q(feta)) < 1e-12);
}

TEST_CASE("harmonic representatives of the coordinate 1-forms") {
    Fixture fx;
    // [DERIVED] pi_Q(dx) is both D_Q-closed and delta_Q-closed.
    CoordOneForm dx(ScalarField(fx.g, 1.0), ScalarField(fx.g), ScalarField(fx.g));
    const RuminForm p = fx.R.pi_Q(dx);
    CHECK(rumin_norm(fx.R.D_Q(p)) < 1e-13);
    CHECK(rumin_norm(fx.R.delta_Q(p)) < 1e-13);
}

TEST_CASE("Laplacian eigenfunction oracle: sin z in degree 0") {
    Fixture fx;
    // [DERIVED] Delta_0 sin z = 2 delta_Q d_Q sin z = 2 sin z
    // (e1 sin z = 0, e2 sin z = cos z, and delta_Q(0, cos z) = sin z).
    ScalarField sz = ScalarField::sample(fx.g, [](double, double, double z) { return std::sin(z); });
    const RuminForm lhs = fx.R.laplacian(RuminForm(0, {sz}));
    CHECK((lhs.comp(0) - 2.0 * sz).max_abs() < 1e-12);
}

TEST_CASE("Laplacians kill constants and harmonic representatives") {
    Fixture fx;
    RuminForm one(0, {ScalarField(fx.g, 1.0)});
    CHECK(rumin_norm(fx.R.laplacian(one)) < 1e-13);
    CoordOneForm dy(ScalarField(fx.g), ScalarField(fx.g, 1.0), ScalarField(fx.g));
    CHECK(rumin_norm(fx.R.laplacian(fx.R.pi_Q(dy))) < 1e-12);
}
