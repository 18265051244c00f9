#pragma once

// The concrete compact contact 3-manifold: the torus T^3 = (R/2piZ)^3 with
//
//   eta = cos z dx + sin z dy          (contact form)
//   T   = cos z @x + sin z @y          (Reeb field)
//   e1  = sin z @x - cos z @y          (horizontal frame)
//   e2  = @z
//
// The frame satisfies eta(T) = 1, dic eta(e1,e2) = 1, [e1,e2] = -T, and
// eta ^ d eta evaluates to +1 on (T,e1,e2). With the default J the frame is
// g-orthonormal and the adapted metric is the Euclidean identity; the
// anisotropic option J e1 = lambda(z) e2 yields g = diag(1, lambda,
// 1/lambda) in the frame with lambda(z) = exp(eps cos z).

#include <array>
#include <cmath>
#include <stdexcept>

#include "ctlab/forms.hpp"
#include "ctlab/grid.hpp"

namespace ctlab {

struct JChoice {
    bool anisotropic = false;
    double eps = 0.0;  // lambda(z) = exp(eps * cos z)

    static JChoice standard() { return {}; }
    static JChoice aniso(double eps) { return {true, eps}; }
};

// Vector field in components against the global frame (T, e1, e2).
struct FrameVectorField {
    ScalarField f0, f1, f2;  // X = f0 T + f1 e1 + f2 e2

    explicit FrameVectorField(const Grid& g) : f0(g), f1(g), f2(g) {}
    FrameVectorField(ScalarField a, ScalarField b, ScalarField c)
        : f0(std::move(a)), f1(std::move(b)), f2(std::move(c)) {}

    const Grid& grid() const { return f0.grid(); }

    FrameVectorField& operator+=(const FrameVectorField& o) {
        f0 += o.f0;
        f1 += o.f1;
        f2 += o.f2;
        return *this;
    }
    FrameVectorField& operator-=(const FrameVectorField& o) {
        f0 -= o.f0;
        f1 -= o.f1;
        f2 -= o.f2;
        return *this;
    }
    FrameVectorField& operator*=(double a) {
        f0 *= a;
        f1 *= a;
        f2 *= a;
        return *this;
    }
    friend FrameVectorField operator+(FrameVectorField a, const FrameVectorField& b) {
        return a += b;
    }
    friend FrameVectorField operator-(FrameVectorField a, const FrameVectorField& b) {
        return a -= b;
    }
    friend FrameVectorField operator*(FrameVectorField a, double s) { return a *= s; }
    friend FrameVectorField operator*(double s, FrameVectorField a) { return a *= s; }

    double max_abs() const { return std::max({f0.max_abs(), f1.max_abs(), f2.max_abs()}); }
};

// Horizontal one-form in coframe components (eps1, eps2).
struct HorizontalOneForm {
    ScalarField c1, c2;  // phi = c1 eps1 + c2 eps2

    explicit HorizontalOneForm(const Grid& g) : c1(g), c2(g) {}
    HorizontalOneForm(ScalarField a, ScalarField b) : c1(std::move(a)), c2(std::move(b)) {}

    const Grid& grid() const { return c1.grid(); }
    double max_abs() const { return std::max(c1.max_abs(), c2.max_abs()); }
};

class ContactModel {
  public:
    explicit ContactModel(Grid grid, JChoice j = JChoice::standard())
        : grid_(grid),
          j_(j),
          cosz_(ScalarField::sample(grid, [](double, double, double z) { return std::cos(z); })),
          sinz_(ScalarField::sample(grid, [](double, double, double z) { return std::sin(z); })) {
        verify_structure();
    }

    const Grid& grid() const { return grid_; }
    const JChoice& j_choice() const { return j_; }
    const ScalarField& cos_z() const { return cosz_; }
    const ScalarField& sin_z() const { return sinz_; }

    // --- closed-form structure data ------------------------------------

    // eta, as a coordinate one-form sampled on the grid.
    CoordOneForm eta() const { return CoordOneForm(cosz_, sinz_, ScalarField(grid_)); }

    // d eta = -cos z dy^dz - sin z dz^dx in the (dy^dz, dz^dx, dx^dy) basis.
    CoordTwoForm d_eta() const { return CoordTwoForm(-1.0 * cosz_, -1.0 * sinz_, ScalarField(grid_)); }

    // Frame vectors as coordinate component triples.
    std::array<ScalarField, 3> reeb_coords() const { return {cosz_, sinz_, ScalarField(grid_)}; }
    std::array<ScalarField, 3> e1_coords() const { return {sinz_, -cosz_, ScalarField(grid_)}; }
    std::array<ScalarField, 3> e2_coords() const {
        return {ScalarField(grid_), ScalarField(grid_), ScalarField(grid_, 1.0)};
    }

    // Closed-form pointwise versions (used off-grid by the flow code).
    static std::array<double, 3> reeb_at(double z) { return {std::cos(z), std::sin(z), 0.0}; }
    static std::array<double, 3> e1_at(double z) { return {std::sin(z), -std::cos(z), 0.0}; }
    static std::array<double, 3> e2_at(double) { return {0.0, 0.0, 1.0}; }

    // --- derivative operators ------------------------------------------

    // e_i f, i in {1,2}; contact order 1.
    ScalarField apply_horizontal(const ScalarField& f, int i) const {
        if (i == 1)
            return band_project(mul_sin_z(partial_derivative(f, Axis::x)) -
                                mul_cos_z(partial_derivative(f, Axis::y)));
        if (i == 2) return partial_derivative(f, Axis::z);
        throw std::invalid_argument("apply_horizontal: i must be 1 or 2");
    }

    // T f; contact order 2.
    ScalarField apply_reeb(const ScalarField& f) const {
        return band_project(mul_cos_z(partial_derivative(f, Axis::x)) +
                            mul_sin_z(partial_derivative(f, Axis::y)));
    }

    // --- musical maps (induced by d eta, with d eta(e1,e2) = 1) --------

    // flat(X) = X -| d eta restricted to H: a e1 + b e2 -> -b eps1 + a eps2.
    HorizontalOneForm flat(const FrameVectorField& x) const {
        return HorizontalOneForm(-x.f2, x.f1);
    }

    // sharp(p eps1 + q eps2) = q e1 - p e2 (horizontal output).
    FrameVectorField sharp(const HorizontalOneForm& phi) const {
        return FrameVectorField(ScalarField(grid_), phi.c2, -phi.c1);
    }

    // --- change of basis ------------------------------------------------

    // Coordinate 1-form -> coframe components (eta, eps1, eps2).
    std::array<ScalarField, 3> coords_to_frame(const CoordOneForm& a) const {
        return {mul_cos_z(a.c[0]) + mul_sin_z(a.c[1]),
                mul_sin_z(a.c[0]) - mul_cos_z(a.c[1]), a.c[2]};
    }

    CoordOneForm frame_to_coords(const std::array<ScalarField, 3>& f) const {
        return CoordOneForm(mul_cos_z(f[0]) + mul_sin_z(f[1]),
                            mul_sin_z(f[0]) - mul_cos_z(f[1]), f[2]);
    }

    // Coordinate 2-form -> frame components on (eps1^eps2, eps2^eta, eta^eps1).
    std::array<ScalarField, 3> coords_to_frame2(const CoordTwoForm& w) const {
        return {-mul_cos_z(w.c[0]) - mul_sin_z(w.c[1]),
                -mul_sin_z(w.c[0]) + mul_cos_z(w.c[1]), -w.c[2]};
    }

    CoordTwoForm frame_to_coords2(const std::array<ScalarField, 3>& f) const {
        // eps1^eps2 = (-cos z, -sin z, 0), eps2^eta = (-sin z, cos z, 0),
        // eta^eps1 = (0, 0, -1) in the coordinate two-form basis.
        return CoordTwoForm(-mul_cos_z(f[0]) - mul_sin_z(f[1]),
                            -mul_sin_z(f[0]) + mul_cos_z(f[1]), -f[2]);
    }

    // Frame vector field -> coordinate components.
    std::array<ScalarField, 3> vector_to_coords(const FrameVectorField& x) const {
        return {mul_cos_z(x.f0) + mul_sin_z(x.f1),
                mul_sin_z(x.f0) - mul_cos_z(x.f1), x.f2};
    }

    FrameVectorField vector_from_coords(const std::array<ScalarField, 3>& v) const {
        return FrameVectorField(mul_cos_z(v[0]) + mul_sin_z(v[1]),
                                mul_sin_z(v[0]) - mul_cos_z(v[1]), v[2]);
    }

    // Volume form eta ^ d eta = -dx^dy^dz; integration against dV0 is
    // plain Lebesgue quadrature.
    double volume_integral(const ScalarField& f) const { return integrate(f); }

    // --- metric (coordinate components, closed form in z) ---------------

    double lambda(double z) const { return j_.anisotropic ? std::exp(j_.eps * std::cos(z)) : 1.0; }
    double lambda_prime(double z) const {
        return j_.anisotropic ? -j_.eps * std::sin(z) * lambda(z) : 0.0;
    }

    using Mat3 = std::array<std::array<double, 3>, 3>;

    Mat3 metric_at(double z) const {
        // g = P diag(1, lambda, 1/lambda) P with symmetric orthogonal
        // P = [[cz, sz, 0], [sz, -cz, 0], [0, 0, 1]] (coframe rows).
        const double cz = std::cos(z), sz = std::sin(z);
        const double la = lambda(z), li = 1.0 / la;
        Mat3 g{};
        g[0][0] = cz * cz + la * sz * sz;
        g[0][1] = cz * sz - la * sz * cz;
        g[1][0] = g[0][1];
        g[1][1] = sz * sz + la * cz * cz;
        g[2][2] = li;
        g[0][2] = g[2][0] = g[1][2] = g[2][1] = 0.0;
        return g;
    }

    Mat3 metric_dz_at(double z) const {
        const double cz = std::cos(z), sz = std::sin(z);
        const double la = lambda(z), lp = lambda_prime(z);
        const double li = 1.0 / la, lip = -lp / (la * la);
        Mat3 dg{};
        dg[0][0] = -2.0 * cz * sz + lp * sz * sz + la * 2.0 * sz * cz;
        dg[0][1] = (cz * cz - sz * sz) - lp * sz * cz - la * (cz * cz - sz * sz);
        dg[1][0] = dg[0][1];
        dg[1][1] = 2.0 * sz * cz + lp * cz * cz - la * 2.0 * cz * sz;
        dg[2][2] = lip;
        dg[0][2] = dg[2][0] = dg[1][2] = dg[2][1] = 0.0;
        (void)li;
        return dg;
    }

    // Christoffel symbols Gamma^k_ij at a point; only the z-dependence of g
    // contributes. Default J: all zero.
    std::array<Mat3, 3> christoffels_at(double z) const {
        std::array<Mat3, 3> gamma{};
        if (!j_.anisotropic) return gamma;
        const Mat3 g = metric_at(z);
        const Mat3 dg = metric_dz_at(z);
        const Mat3 gi = invert3(g);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double sum = 0.0;
                    for (int l = 0; l < 3; ++l) {
                        const double di_gjl = (i == 2) ? dg[j][l] : 0.0;
                        const double dj_gil = (j == 2) ? dg[i][l] : 0.0;
                        const double dl_gij = (l == 2) ? dg[i][j] : 0.0;
                        sum += gi[k][l] * (di_gjl + dj_gil - dl_gij);
                    }
                    gamma[k][i][j] = 0.5 * sum;
                }
        return gamma;
    }

    static Mat3 invert3(const Mat3& m) {
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (std::abs(det) < 1e-14) throw std::runtime_error("invert3: singular metric");
        Mat3 r;
        r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
        r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
        r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
        r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
        r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
        r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
        r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
        r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
        r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
        return r;
    }

  private:
    void verify_structure() const {
        // Pointwise closed-form identities, checked at a handful of z values.
        for (int s = 0; s < 16; ++s) {
            const double z = two_pi * s / 16.0 + 0.0371;
            const double cz = std::cos(z), sz = std::sin(z);
            // eta(T) = 1, eta(e1) = eta(e2) = 0
            if (std::abs(cz * cz + sz * sz - 1.0) > 1e-12 ||
                std::abs(cz * sz - sz * cz) > 1e-12)
                throw std::runtime_error("contact model: frame identities failed");
            // d eta(e1, e2) = 1 with d eta = (0, -sz, cz):
            // (dz^dx)(e1,e2) = -sz, (dz^dy)(e1,e2) = cz (coefficients -sz, cz
            // in the (dy^dz, dz^dx, dx^dy) basis give value sz^2 + cz^2).
            const double val = (-sz) * (-sz) + cz * cz;
            if (std::abs(val - 1.0) > 1e-12)
                throw std::runtime_error("contact model: d eta normalization failed");
        }
    }

    Grid grid_;
    JChoice j_;
    ScalarField cosz_, sinz_;
};

// Lie bracket of e1 and e2 applied to f, for tests: [e1,e2]f = -T f.
inline ScalarField frame_bracket(const ContactModel& m, const ScalarField& f) {
    return m.apply_horizontal(m.apply_horizontal(f, 2), 1) -
           m.apply_horizontal(m.apply_horizontal(f, 1), 2);
}

}  // namespace ctlab
