#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctlab/grid.hpp"

using namespace ctlab;

namespace {
constexpr double kPi = std::numbers::pi;
const double kVol = std::pow(2.0 * kPi, 3);
}  // namespace

TEST_CASE("spectral derivative is exact on trigonometric polynomials") {
    Grid g{16};
    ScalarField f = ScalarField::sample(
        g, [](double x, double y, double z) { return std::sin(x) + std::cos(2 * y - z); });
    ScalarField dx = partial_derivative(f, Axis::x);
    ScalarField ref = ScalarField::sample(g, [](double x, double, double) { return std::cos(x); });
    CHECK((dx - ref).max_abs() < 1e-13);
}

TEST_CASE("mixed partials commute") {
    Grid g{16};
    ScalarField f = ScalarField::sample(
        g, [](double x, double y, double z) { return std::sin(x + 2 * y) * std::cos(z); });
    ScalarField a = partial_derivative(partial_derivative(f, Axis::x), Axis::y);
    ScalarField b = partial_derivative(partial_derivative(f, Axis::y), Axis::x);
    CHECK((a - b).max_abs() <= 1e-10);
}

TEST_CASE("trig multiplies match pointwise products for resolved bands") {
    Grid g{16};
    ScalarField f = ScalarField::sample(
        g, [](double x, double y, double z) { return std::cos(x - y) + std::sin(3 * z); });
    ScalarField ref = ScalarField::sample(g, [](double x, double y, double z) {
        return std::cos(z) * (std::cos(x - y) + std::sin(3 * z));
    });
    CHECK((mul_cos_z(f) - ref).max_abs() < 1e-13);
    ScalarField ref2 = ScalarField::sample(g, [](double x, double y, double z) {
        return std::sin(z) * (std::cos(x - y) + std::sin(3 * z));
    });
    CHECK((mul_sin_z(f) - ref2).max_abs() < 1e-13);
}

TEST_CASE("dealiased multiply is exact on band-limited inputs") {
    Grid g{16};
    ScalarField f = ScalarField::sample(g, [](double x, double, double) { return std::sin(2 * x); });
    ScalarField h = ScalarField::sample(g, [](double, double y, double) { return std::cos(3 * y); });
    ScalarField ref = ScalarField::sample(
        g, [](double x, double y, double) { return std::sin(2 * x) * std::cos(3 * y); });
    CHECK((multiply(f, h) - ref).max_abs() < 1e-13);
}

TEST_CASE("integration and inner products use the Lebesgue volume") {
    Grid g{8};
    ScalarField one(g, 1.0);
    CHECK(integrate(one) == doctest::Approx(kVol).epsilon(1e-12));
    ScalarField s = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
    CHECK(integrate(s) == doctest::Approx(0.0).epsilon(1e-12));
    // [DERIVED] ||sin x||^2 = (2 pi)^3 / 2.
    CHECK(l2_inner(s, s) == doctest::Approx(kVol / 2.0).epsilon(1e-12));
}

TEST_CASE("band_project removes exactly the Nyquist planes") {
    Grid g{8};
    ScalarField f = ScalarField::sample(
        g, [](double x, double y, double) { return std::cos(4 * x) + std::sin(y); });
    ScalarField p = band_project(f);
    ScalarField ref = ScalarField::sample(g, [](double, double y, double) { return std::sin(y); });
    CHECK((p - ref).max_abs() < 1e-13);
    // Band-limited fields pass through untouched.
    CHECK((band_project(ref) - ref).max_abs() < 1e-15);
}

TEST_CASE("off-grid evaluation reproduces the trigonometric polynomial") {
    Grid g{16};
    ScalarField f = ScalarField::sample(g, [](double x, double y, double z) {
        return std::sin(x + y) + 0.3 * std::cos(2 * z - x);
    });
    OffGridEvaluator ev(f);
    const double x = 0.73, y = 2.19, z = 5.01;
    const double ref = std::sin(x + y) + 0.3 * std::cos(2 * z - x);
    CHECK(ev(x, y, z) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("random band fixture is independent of the grid size") {
    ScalarField a = random_band_limited(Grid{8}, 42, 2, 1.0);
    ScalarField b = random_band_limited(Grid{16}, 42, 2, 1.0);
    // Compare at the coarse-grid points shared by both grids.
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k)
                worst = std::max(worst,
                                 std::abs(a(i, j, k) - b(2 * i, 2 * j, 2 * k)));
    CHECK(worst < 1e-13);
}

TEST_CASE("pad and truncate round-trip band-limited spectra") {
    Grid g{8};
    ScalarField f = random_band_limited(g, 7, 3, 1.0);
    ScalarField up = from_spectrum(Grid{16}, detail::pad_spectrum(g, to_spectrum(f), 16));
    ScalarField back = from_spectrum(g, detail::truncate_spectrum(g, to_spectrum(up), 16));
    CHECK((back - f).max_abs() < 1e-13);
}
