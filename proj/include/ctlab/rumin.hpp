#pragma once

// The Rumin complex for n = 1 on the model torus:
//
//   R^0 --d_Q--> R^1 --D_Q--> R^2 --d_Q--> R^3
//
// with spaces in frame components (bases {1}, {eps1, eps2},
// {eta^eps1, eta^eps2}, {eta^eps1^eps2}), the adjoints delta_Q and D_Q*,
// and the four Laplacians. All differentials are computed through one code
// path: convert to coordinate components, apply the spectral exterior
// derivative, convert back. Contact orders: d_Q 1, D_Q 2, delta_Q 1,
// D_Q* 2.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctlab/contact_model.hpp"
#include "ctlab/forms.hpp"
#include "ctlab/grid.hpp"

namespace ctlab {

class RuminForm {
  public:
    RuminForm(int degree, const Grid& g)
        : degree_(degree), c_(component_count(degree), ScalarField(g)) {}
    RuminForm(int degree, std::vector<ScalarField> comps)
        : degree_(degree), c_(std::move(comps)) {
        if (c_.size() != static_cast<std::size_t>(component_count(degree_)))
            throw std::invalid_argument("RuminForm: component count mismatch");
    }

    static int component_count(int degree) {
        switch (degree) {
            case 0: case 3: return 1;
            case 1: case 2: return 2;
            default: throw std::invalid_argument("RuminForm: degree must be 0..3");
        }
    }

    int degree() const { return degree_; }
    const Grid& grid() const { return c_[0].grid(); }
    int components() const { return static_cast<int>(c_.size()); }
    const ScalarField& comp(int i) const { return c_[i]; }
    ScalarField& comp(int i) { return c_[i]; }

    RuminForm& operator+=(const RuminForm& o) {
        require_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    RuminForm& operator-=(const RuminForm& o) {
        require_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    RuminForm& operator*=(double a) {
        for (auto& f : c_) f *= a;
        return *this;
    }
    friend RuminForm operator+(RuminForm a, const RuminForm& b) { return a += b; }
    friend RuminForm operator-(RuminForm a, const RuminForm& b) { return a -= b; }
    friend RuminForm operator*(RuminForm a, double s) { return a *= s; }
    friend RuminForm operator*(double s, RuminForm a) { return a *= s; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& f : c_) m = std::max(m, f.max_abs());
        return m;
    }

  private:
    void require_same(const RuminForm& o) const {
        if (o.degree_ != degree_) throw std::invalid_argument("RuminForm: degree mismatch");
    }

    int degree_;
    std::vector<ScalarField> c_;
};

// L^2 pairing; the frame bases are pointwise orthonormal for the default J.
inline double rumin_inner(const RuminForm& a, const RuminForm& b) {
    double s = 0.0;
    for (int i = 0; i < a.components(); ++i) s += l2_inner(a.comp(i), b.comp(i));
    return s;
}

inline double rumin_norm(const RuminForm& a) { return std::sqrt(std::max(0.0, rumin_inner(a, a))); }

class RuminComplex {
  public:
    explicit RuminComplex(const ContactModel& m) : m_(&m) {}

    const ContactModel& model() const { return *m_; }
    const Grid& grid() const { return m_->grid(); }

    // --- projections and lifts ------------------------------------------

    // pi_Q of a coordinate one-form: (beta(e1), beta(e2)).
    RuminForm pi_Q(const CoordOneForm& beta) const {
        auto f = m_->coords_to_frame(beta);
        return RuminForm(1, {band_project(f[1]), band_project(f[2])});
    }

    // Lift of a degree-1 form to coordinates with zero eta-component.
    CoordOneForm lift1(const RuminForm& a) const {
        require_degree(a, 1);
        return m_->frame_to_coords({ScalarField(grid()), a.comp(0), a.comp(1)});
    }

    // Lift of a degree-2 form b1 eta^eps1 + b2 eta^eps2 to coordinates.
    CoordTwoForm lift2(const RuminForm& b) const {
        require_degree(b, 2);
        // frame two-form components on (eps1^eps2, eps2^eta, eta^eps1):
        // eta^eps2 = -eps2^eta.
        return m_->frame_to_coords2({ScalarField(grid()), -b.comp(1), b.comp(0)});
    }

    // Express a coordinate two-form with eta ^ w = 0 in the degree-2 basis.
    RuminForm project2(const CoordTwoForm& w) const {
        auto f = m_->coords_to_frame2(w);
        return RuminForm(2, {std::move(f[2]), -f[1]});
    }

    // --- differentials ---------------------------------------------------

    RuminForm d_Q0(const RuminForm& f) const {
        require_degree(f, 0);
        return RuminForm(1, {m_->apply_horizontal(f.comp(0), 1),
                             m_->apply_horizontal(f.comp(0), 2)});
    }

    // Second-order middle operator: D_Q a = d(a~ + f eta) with f the unique
    // function making the result a section of R^2.
    RuminForm D_Q(const RuminForm& a) const {
        require_degree(a, 1);
        const CoordOneForm lift = lift1(a);
        const CoordTwoForm dlift = exterior_derivative(lift);
        // eta ^ d(a~) = c dx^dy^dz; (dx^dy^dz)(T,e1,e2) = det(T,e1,e2) = -1,
        // and f = -(eta ^ d a~)(T,e1,e2) = c.
        const ScalarField f = mul_cos_z(dlift.c[0]) + mul_sin_z(dlift.c[1]);
        const CoordOneForm f_eta(mul_cos_z(f), mul_sin_z(f), ScalarField(grid()));
        const CoordTwoForm total = dlift + exterior_derivative(f_eta);
        RuminForm out = project2(total);
        return RuminForm(2, {band_project(out.comp(0)), band_project(out.comp(1))});
    }

    RuminForm d_Q2(const RuminForm& b) const {
        require_degree(b, 2);
        const ScalarField c = exterior_derivative(lift2(b)).c;
        // dV = eta^eps1^eps2 = -dx^dy^dz.
        return RuminForm(3, {band_project(-c)});
    }

    // --- Hodge star (default J, orthonormal coframe) ---------------------

    RuminForm star(const RuminForm& w) const {
        switch (w.degree()) {
            case 0: return RuminForm(3, {w.comp(0)});
            case 3: return RuminForm(0, {w.comp(0)});
            case 1:  // *(a eps1 + b eps2) = b eta^eps1 - a eta^eps2
                return RuminForm(2, {w.comp(1), -w.comp(0)});
            case 2:  // *(p eta^eps1 + q eta^eps2) = -q eps1 + p eps2
                return RuminForm(1, {-w.comp(1), w.comp(0)});
        }
        throw std::invalid_argument("star: bad degree");
    }

    // --- adjoints: delta_Q = (-1)^k * d_Q *, D_Q* = * D_Q * ---------------

    RuminForm delta_Q(const RuminForm& w) const {
        if (w.degree() == 1) return -1.0 * star(d_Q2(star(w)));
        if (w.degree() == 3) return -1.0 * star(d_Q0(star(w)));
        throw std::invalid_argument("delta_Q: degree must be 1 or 3");
    }

    RuminForm D_Q_star(const RuminForm& b) const {
        require_degree(b, 2);
        return star(D_Q(star(b)));
    }

    // --- Laplacians (n = 1 instances, D-7 absolute-value convention) ------

    RuminForm laplacian(const RuminForm& w) const {
        switch (w.degree()) {
            case 0:
                return 2.0 * delta_Q(d_Q0(w));
            case 1: {
                RuminForm dd = d_Q0(delta_Q(w));
                dd = d_Q0(delta_Q(dd));
                return dd + D_Q_star(D_Q(w));
            }
            case 2: {
                RuminForm sd = delta_Q(d_Q2(w));
                sd = delta_Q(d_Q2(sd));
                return D_Q(D_Q_star(w)) + sd;
            }
            case 3:
                return d_Q2(delta_Q(w));
        }
        throw std::invalid_argument("laplacian: bad degree");
    }

    static int contact_order_d_Q() { return 1; }
    static int contact_order_D_Q() { return 2; }
    static int contact_order_delta_Q() { return 1; }
    static int contact_order_D_Q_star() { return 2; }

  private:
    static void require_degree(const RuminForm& w, int d) {
        if (w.degree() != d) throw std::invalid_argument("RuminComplex: wrong degree");
    }

    const ContactModel* m_;
};

}  // namespace ctlab
