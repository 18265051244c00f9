#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctlab/folland_stein.hpp"

using namespace ctlab;

namespace {
const double kVol = std::pow(2.0 * std::numbers::pi, 3);
}

TEST_CASE("s = 0 norm is the L2 norm") {
    Grid g{16};
    ContactModel m(g);
    ScalarField f = random_band_limited(g, 5, 3, 1.0);
    CHECK(fs_norm(m, f, 0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("closed-form value for sin x at s = 1") {
    Grid g{16};
    ContactModel m(g);
    ScalarField f = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
    // [DERIVED] words: {}, e1, e2 with e1 sin x = sin z cos x, e2 sin x = 0:
    // ||f||_1^2 = V/2 + V/4.
    CHECK(fs_norm_sq(m, f, 1) == doctest::Approx(kVol * 0.75).epsilon(1e-12));
}

TEST_CASE("recursive identity over the word expansion") {
    Grid g{16};
    ContactModel m(g);
    ScalarField f = random_band_limited(g, 9, 2, 1.0);
    for (int s = 1; s <= 4; ++s) {
        const double lhs = fs_norm_sq(m, f, s);
        const double rhs = fs_norm_sq(m, f, 0) +
                           fs_norm_sq(m, m.apply_horizontal(f, 1), s - 1) +
                           fs_norm_sq(m, m.apply_horizontal(f, 2), s - 1);
        CHECK(std::abs(lhs - rhs) / lhs < 1e-12);
    }
}

TEST_CASE("norms are monotone in s") {
    Grid g{16};
    ContactModel m(g);
    ScalarField f = random_band_limited(g, 13, 3, 1.0);
    for (int s = 1; s <= 4; ++s) CHECK(fs_norm(m, f, s) >= fs_norm(m, f, s - 1));
}

TEST_CASE("refinement invariance for band-limited fields") {
    ContactModel m8{Grid{8}}, m16{Grid{16}};
    ScalarField f8 = random_band_limited(Grid{8}, 31, 2, 1.0);
    ScalarField f16 = random_band_limited(Grid{16}, 31, 2, 1.0);
    CHECK(fs_norm(m8, f8, 1) == doctest::Approx(fs_norm(m16, f16, 1)).epsilon(1e-12));
}

TEST_CASE("Reeb derivative counts as two horizontal orders") {
    // The weighted index (a, b) with Reeb weight 2 must reject overflows.
    Grid g{8};
    ContactModel m(g);
    ScalarField f = random_band_limited(g, 1, 2, 1.0);
    CHECK_THROWS(fs_norm(m, f, fs_s_max + 1));
}

TEST_CASE("empirical ratio reports stay finite") {
    Grid g{8};
    ContactModel m(g);
    const auto sob = sobolev_ratio_report(m, 4, 2, 99);
    const auto alg = algebra_constant_report(m, 4, 2, 3, 3, 99);
    const auto div = division_report(m, 4, 2, 3, 99);
    CHECK(sob.all_finite);
    CHECK(alg.all_finite);
    CHECK(div.all_finite);
    CHECK(sob.max_ratio > 0.0);
    CHECK(alg.max_ratio > 0.0);
    CHECK(div.max_ratio > 0.0);
}
