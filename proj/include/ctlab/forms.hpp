#pragma once

// Differential forms on the 3-torus in coordinate components, with spectral
// exterior derivative, wedge products, and interior products. Two-forms are
// stored in the basis (dy^dz, dz^dx, dx^dy).

#include <array>
#include <stdexcept>

#include "ctlab/grid.hpp"

namespace ctlab {

struct CoordOneForm {
    std::array<ScalarField, 3> c;  // dx, dy, dz components

    explicit CoordOneForm(const Grid& g) : c{ScalarField(g), ScalarField(g), ScalarField(g)} {}
    CoordOneForm(ScalarField cx, ScalarField cy, ScalarField cz)
        : c{std::move(cx), std::move(cy), std::move(cz)} {}

    const Grid& grid() const { return c[0].grid(); }

    CoordOneForm& operator+=(const CoordOneForm& o) {
        for (int i = 0; i < 3; ++i) c[i] += o.c[i];
        return *this;
    }
    CoordOneForm& operator-=(const CoordOneForm& o) {
        for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
        return *this;
    }
    CoordOneForm& operator*=(double a) {
        for (int i = 0; i < 3; ++i) c[i] *= a;
        return *this;
    }
    friend CoordOneForm operator+(CoordOneForm a, const CoordOneForm& b) { return a += b; }
    friend CoordOneForm operator-(CoordOneForm a, const CoordOneForm& b) { return a -= b; }
    friend CoordOneForm operator*(CoordOneForm a, double s) { return a *= s; }
    friend CoordOneForm operator*(double s, CoordOneForm a) { return a *= s; }

    double max_abs() const {
        return std::max({c[0].max_abs(), c[1].max_abs(), c[2].max_abs()});
    }
};

struct CoordTwoForm {
    std::array<ScalarField, 3> c;  // dy^dz, dz^dx, dx^dy components

    explicit CoordTwoForm(const Grid& g) : c{ScalarField(g), ScalarField(g), ScalarField(g)} {}
    CoordTwoForm(ScalarField cyz, ScalarField czx, ScalarField cxy)
        : c{std::move(cyz), std::move(czx), std::move(cxy)} {}

    const Grid& grid() const { return c[0].grid(); }

    CoordTwoForm& operator+=(const CoordTwoForm& o) {
        for (int i = 0; i < 3; ++i) c[i] += o.c[i];
        return *this;
    }
    CoordTwoForm& operator-=(const CoordTwoForm& o) {
        for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
        return *this;
    }
    CoordTwoForm& operator*=(double a) {
        for (int i = 0; i < 3; ++i) c[i] *= a;
        return *this;
    }
    friend CoordTwoForm operator+(CoordTwoForm a, const CoordTwoForm& b) { return a += b; }
    friend CoordTwoForm operator-(CoordTwoForm a, const CoordTwoForm& b) { return a -= b; }
    friend CoordTwoForm operator*(CoordTwoForm a, double s) { return a *= s; }
    friend CoordTwoForm operator*(double s, CoordTwoForm a) { return a *= s; }

    double max_abs() const {
        return std::max({c[0].max_abs(), c[1].max_abs(), c[2].max_abs()});
    }
};

struct CoordThreeForm {
    ScalarField c;  // dx^dy^dz component

    explicit CoordThreeForm(const Grid& g) : c(g) {}
    explicit CoordThreeForm(ScalarField f) : c(std::move(f)) {}
    const Grid& grid() const { return c.grid(); }
};

// d of a function.
inline CoordOneForm exterior_derivative(const ScalarField& f) {
    return CoordOneForm(partial_derivative(f, Axis::x), partial_derivative(f, Axis::y),
                        partial_derivative(f, Axis::z));
}

// d of a one-form (curl layout in the two-form basis).
inline CoordTwoForm exterior_derivative(const CoordOneForm& a) {
    return CoordTwoForm(
        partial_derivative(a.c[2], Axis::y) - partial_derivative(a.c[1], Axis::z),
        partial_derivative(a.c[0], Axis::z) - partial_derivative(a.c[2], Axis::x),
        partial_derivative(a.c[1], Axis::x) - partial_derivative(a.c[0], Axis::y));
}

// d of a two-form (divergence).
inline CoordThreeForm exterior_derivative(const CoordTwoForm& b) {
    return CoordThreeForm(partial_derivative(b.c[0], Axis::x) +
                          partial_derivative(b.c[1], Axis::y) +
                          partial_derivative(b.c[2], Axis::z));
}

inline CoordTwoForm wedge(const CoordOneForm& a, const CoordOneForm& b) {
    return CoordTwoForm(multiply(a.c[1], b.c[2]) - multiply(a.c[2], b.c[1]),
                        multiply(a.c[2], b.c[0]) - multiply(a.c[0], b.c[2]),
                        multiply(a.c[0], b.c[1]) - multiply(a.c[1], b.c[0]));
}

inline CoordThreeForm wedge(const CoordOneForm& a, const CoordTwoForm& b) {
    return CoordThreeForm(multiply(a.c[0], b.c[0]) + multiply(a.c[1], b.c[1]) +
                          multiply(a.c[2], b.c[2]));
}

inline CoordThreeForm wedge(const CoordTwoForm& b, const CoordOneForm& a) {
    return wedge(a, b);
}

// Interior products with a coordinate vector field v = (v^x, v^y, v^z).
inline ScalarField interior(const std::array<ScalarField, 3>& v, const CoordOneForm& a) {
    return multiply(v[0], a.c[0]) + multiply(v[1], a.c[1]) + multiply(v[2], a.c[2]);
}

inline CoordOneForm interior(const std::array<ScalarField, 3>& v, const CoordTwoForm& b) {
    // v -| (dy^dz) = v^y dz - v^z dy, etc.
    return CoordOneForm(multiply(v[2], b.c[1]) - multiply(v[1], b.c[2]),
                        multiply(v[0], b.c[2]) - multiply(v[2], b.c[0]),
                        multiply(v[1], b.c[0]) - multiply(v[0], b.c[1]));
}

inline ScalarField scale(const ScalarField& coeff, const ScalarField& f) {
    return multiply(coeff, f);
}

inline CoordOneForm scale(const ScalarField& coeff, const CoordOneForm& a) {
    return CoordOneForm(multiply(coeff, a.c[0]), multiply(coeff, a.c[1]),
                        multiply(coeff, a.c[2]));
}

}  // namespace ctlab
