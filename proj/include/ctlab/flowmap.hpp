#pragma once

// Exponential charts and near-identity self-maps of the torus: geodesic
// exponential map (exact for the flat default metric, RK4 for the
// anisotropic one), flows of vector fields, pullbacks, Lie derivatives, the
// quadratic pullback remainder, and grid-map composition/inversion.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctlab/contact_model.hpp"
#include "ctlab/forms.hpp"
#include "ctlab/grid.hpp"

namespace ctlab {

inline double wrap_pi(double d) {
    // reduce to (-pi, pi]
    d = std::fmod(d, two_pi);
    if (d <= -std::numbers::pi) d += two_pi;
    if (d > std::numbers::pi) d -= two_pi;
    return d;
}

inline double wrap_2pi(double x) {
    x = std::fmod(x, two_pi);
    return x < 0.0 ? x + two_pi : x;
}

// Near-identity self-map F(x) = x + u(x) mod 2pi, u periodic.
struct GridMap {
    std::array<ScalarField, 3> u;

    explicit GridMap(const Grid& g) : u{ScalarField(g), ScalarField(g), ScalarField(g)} {}
    explicit GridMap(std::array<ScalarField, 3> disp) : u(std::move(disp)) {
        if (max_displacement() > std::numbers::pi / 2.0)
            throw std::invalid_argument("GridMap: displacement beyond pi/2 rejected");
    }

    const Grid& grid() const { return u[0].grid(); }
    double max_displacement() const {
        return std::max({u[0].max_abs(), u[1].max_abs(), u[2].max_abs()});
    }

    std::array<double, 3> apply_at(int i, int j, int k) const {
        const Grid& g = grid();
        return {wrap_2pi(g.coord(i) + u[0](i, j, k)), wrap_2pi(g.coord(j) + u[1](i, j, k)),
                wrap_2pi(g.coord(k) + u[2](i, j, k))};
    }

    // min over grid points of det(Id + Du); must stay >= 0.1 for the map to
    // remain a C^1 diffeomorphism at desk scale.
    double min_jacobian_det() const {
        const Grid& g = grid();
        std::array<std::array<ScalarField, 3>, 3> du{{
            {partial_derivative(u[0], Axis::x), partial_derivative(u[0], Axis::y),
             partial_derivative(u[0], Axis::z)},
            {partial_derivative(u[1], Axis::x), partial_derivative(u[1], Axis::y),
             partial_derivative(u[1], Axis::z)},
            {partial_derivative(u[2], Axis::x), partial_derivative(u[2], Axis::y),
             partial_derivative(u[2], Axis::z)},
        }};
        double mn = 1e300;
        for (std::size_t q = 0; q < g.size(); ++q) {
            double j[3][3];
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    j[a][b] = (a == b ? 1.0 : 0.0) + du[a][b].values()[q];
            const double det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
                               j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
                               j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
            mn = std::min(mn, det);
        }
        return mn;
    }
};

struct GeodesicConfig {
    int step_count = 32;   // RK4 steps per unit parameter
    int quad_nodes = 64;   // Gauss-Legendre nodes for the B-coefficient integral
    double fd_step = 1e-4; // central-difference step for dy/dX
};

namespace detail {

// Geodesic RK4 integration of (x, v) with vdot^k = -Gamma^k_ij v^i v^j.
inline std::array<double, 3> integrate_geodesic(const ContactModel& m, std::array<double, 3> x,
                                                std::array<double, 3> v,
                                                const GeodesicConfig& cfg) {
    struct State {
        std::array<double, 3> x, v;
    };
    auto rhs = [&m](const State& s) {
        State d;
        d.x = s.v;
        const auto gamma = m.christoffels_at(s.x[2]);
        for (int k = 0; k < 3; ++k) {
            double acc = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) acc += gamma[k][i][j] * s.v[i] * s.v[j];
            d.v[k] = -acc;
        }
        return d;
    };
    auto axpy = [](const State& s, double h, const State& d) {
        State o;
        for (int i = 0; i < 3; ++i) {
            o.x[i] = s.x[i] + h * d.x[i];
            o.v[i] = s.v[i] + h * d.v[i];
        }
        return o;
    };
    State s{x, v};
    const int n = cfg.step_count;
    const double h = 1.0 / n;
    for (int step = 0; step < n; ++step) {
        const State k1 = rhs(s);
        const State k2 = rhs(axpy(s, 0.5 * h, k1));
        const State k3 = rhs(axpy(s, 0.5 * h, k2));
        const State k4 = rhs(axpy(s, h, k3));
        for (int i = 0; i < 3; ++i) {
            s.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
            s.v[i] += h / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
        }
        for (int i = 0; i < 3; ++i)
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.v[i]))
                throw std::runtime_error("geodesic integration diverged");
    }
    return s.x;
}

// Gauss-Legendre nodes/weights on [0, 1].
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        nodes[i] = 0.5 * (1.0 - t);  // map [-1,1] -> [0,1], reversed order is fine
        weights[i] = 1.0 / ((1.0 - t * t) * pp * pp);
    }
}

}  // namespace detail

inline std::array<double, 3> scale_vec(const std::array<double, 3>& v, double a) {
    return {a * v[0], a * v[1], a * v[2]};
}

// exp(x, X) for a coordinate tangent vector X at x.
inline std::array<double, 3> exp_map(const ContactModel& m, const std::array<double, 3>& x,
                                     const std::array<double, 3>& tangent,
                                     const GeodesicConfig& cfg = {}) {
    if (!m.j_choice().anisotropic)
        return {x[0] + tangent[0], x[1] + tangent[1], x[2] + tangent[2]};
    return detail::integrate_geodesic(m, x, tangent, cfg);
}

// Quadratic coefficient of the exponential map contracted with X twice:
// B(x,X).X.X = -int_0^1 (1-t) Gamma(exp(x,tX)) (dy/dX*X) (dy/dX*X) dt, with
// the flow derivative by central finite differences.
inline std::array<double, 3> exp_quadratic_coeff(const ContactModel& m,
                                                 const std::array<double, 3>& x,
                                                 const std::array<double, 3>& tangent,
                                                 const GeodesicConfig& cfg = {}) {
    if (!m.j_choice().anisotropic) return {0.0, 0.0, 0.0};
    std::vector<double> nodes, weights;
    detail::gauss_legendre(cfg.quad_nodes, nodes, weights);
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    const double h = cfg.fd_step;
    for (int q = 0; q < cfg.quad_nodes; ++q) {
        const double t = nodes[q];
        const auto gt = detail::integrate_geodesic(m, x, scale_vec(tangent, t), cfg);
        const auto gp = detail::integrate_geodesic(m, x, scale_vec(tangent, t + h), cfg);
        const auto gm = detail::integrate_geodesic(m, x, scale_vec(tangent, t - h), cfg);
        std::array<double, 3> w;
        for (int i = 0; i < 3; ++i) w[i] = (gp[i] - gm[i]) / (2.0 * h);
        const auto gamma = m.christoffels_at(gt[2]);
        for (int k = 0; k < 3; ++k) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) s += gamma[k][a][b] * w[a] * w[b];
            acc[k] -= weights[q] * (1.0 - t) * s;
        }
    }
    return acc;
}

// F_X = exp o X as a grid map; displacement unwrapped to (-pi, pi].
inline GridMap flow_from_field(const ContactModel& m, const FrameVectorField& x,
                               const GeodesicConfig& cfg = {}) {
    const Grid& g = m.grid();
    const auto vc = m.vector_to_coords(x);
    GridMap f(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const std::array<double, 3> p{g.coord(i), g.coord(j), g.coord(k)};
                const std::array<double, 3> t{vc[0](i, j, k), vc[1](i, j, k), vc[2](i, j, k)};
                const auto y = exp_map(m, p, t, cfg);
                f.u[0].at(i, j, k) = wrap_pi(y[0] - p[0]);
                f.u[1].at(i, j, k) = wrap_pi(y[1] - p[1]);
                f.u[2].at(i, j, k) = wrap_pi(y[2] - p[2]);
            }
    if (f.min_jacobian_det() < 0.1)
        throw std::runtime_error("flow_from_field: Jacobian degeneracy (det < 0.1)");
    return f;
}

namespace detail {

// Jacobian fields d_j F^i = delta_ij + d_j u^i.
inline std::array<std::array<ScalarField, 3>, 3> map_jacobian(const GridMap& f) {
    std::array<std::array<ScalarField, 3>, 3> j{{
        {partial_derivative(f.u[0], Axis::x), partial_derivative(f.u[0], Axis::y),
         partial_derivative(f.u[0], Axis::z)},
        {partial_derivative(f.u[1], Axis::x), partial_derivative(f.u[1], Axis::y),
         partial_derivative(f.u[1], Axis::z)},
        {partial_derivative(f.u[2], Axis::x), partial_derivative(f.u[2], Axis::y),
         partial_derivative(f.u[2], Axis::z)},
    }};
    for (int a = 0; a < 3; ++a) j[a][a] += ScalarField(f.grid(), 1.0);
    return j;
}

}  // namespace detail

// Composition with a scalar field: (f o F)(x) = f(F(x)).
inline ScalarField pullback_scalar(const GridMap& f, const ScalarField& s) {
    const Grid& g = f.grid();
    OffGridEvaluator ev(s);
    ScalarField out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const auto p = f.apply_at(i, j, k);
                out.at(i, j, k) = ev(p[0], p[1], p[2]);
            }
    return out;
}

// Pullback of a grid one-form: (F* psi)_j(x) = psi_i(F(x)) dF^i/dx^j.
inline CoordOneForm pullback(const GridMap& f, const CoordOneForm& psi) {
    const Grid& g = f.grid();
    const auto jac = detail::map_jacobian(f);
    std::array<ScalarField, 3> comp_at_f{pullback_scalar(f, psi.c[0]),
                                         pullback_scalar(f, psi.c[1]),
                                         pullback_scalar(f, psi.c[2])};
    CoordOneForm out(g);
    for (int j = 0; j < 3; ++j) {
        ScalarField acc(g);
        for (int i = 0; i < 3; ++i) acc += multiply(comp_at_f[i], jac[i][j]);
        out.c[j] = acc;
    }
    return out;
}

// Pullback of eta = cos z dx + sin z dy using its closed form (no
// interpolation needed for the components).
inline CoordOneForm pullback_eta(const GridMap& f) {
    const Grid& g = f.grid();
    const auto jac = detail::map_jacobian(f);
    ScalarField czf(g), szf(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double zf = g.coord(k) + f.u[2](i, j, k);
                czf.at(i, j, k) = std::cos(zf);
                szf.at(i, j, k) = std::sin(zf);
            }
    CoordOneForm out(g);
    for (int j = 0; j < 3; ++j)
        out.c[j] = multiply(czf, jac[0][j]) + multiply(szf, jac[1][j]);
    return out;
}

// Cartan formula: L_X psi = X -| d psi + d(psi(X)).
inline CoordOneForm lie_derivative(const ContactModel& m, const FrameVectorField& x,
                                   const CoordOneForm& psi) {
    const auto vc = m.vector_to_coords(x);
    return interior(vc, exterior_derivative(psi)) + exterior_derivative(interior(vc, psi));
}

// Quad_psi(X) = F_X^* psi - psi - L_X psi.
inline CoordOneForm quad_remainder(const ContactModel& m, const FrameVectorField& x,
                                   const CoordOneForm& psi, const GeodesicConfig& cfg = {}) {
    const GridMap f = flow_from_field(m, x, cfg);
    return pullback(f, psi) - psi - lie_derivative(m, x, psi);
}

// compose(F, G) = G o F.
inline GridMap compose(const GridMap& f, const GridMap& g) {
    const Grid& gr = f.grid();
    GridMap out(gr);
    std::array<OffGridEvaluator, 3> ev{OffGridEvaluator(g.u[0]), OffGridEvaluator(g.u[1]),
                                       OffGridEvaluator(g.u[2])};
    for (int i = 0; i < gr.n; ++i)
        for (int j = 0; j < gr.n; ++j)
            for (int k = 0; k < gr.n; ++k) {
                const auto p = f.apply_at(i, j, k);
                for (int a = 0; a < 3; ++a)
                    out.u[a].at(i, j, k) =
                        wrap_pi(f.u[a](i, j, k) + ev[a](p[0], p[1], p[2]));
            }
    return out;
}

// invert(F): damped Newton solve of y + u(y) = x per grid point,
// initialized at y = x - u(x).
inline GridMap invert(const GridMap& f, double tol = 1e-12, int max_iter = 50) {
    const Grid& g = f.grid();
    std::array<OffGridEvaluator, 3> ev{OffGridEvaluator(f.u[0]), OffGridEvaluator(f.u[1]),
                                       OffGridEvaluator(f.u[2])};
    const auto jac = detail::map_jacobian(f);
    std::array<std::array<OffGridEvaluator, 3>, 3> jev{{
        {OffGridEvaluator(jac[0][0]), OffGridEvaluator(jac[0][1]), OffGridEvaluator(jac[0][2])},
        {OffGridEvaluator(jac[1][0]), OffGridEvaluator(jac[1][1]), OffGridEvaluator(jac[1][2])},
        {OffGridEvaluator(jac[2][0]), OffGridEvaluator(jac[2][1]), OffGridEvaluator(jac[2][2])},
    }};
    GridMap out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const std::array<double, 3> x{g.coord(i), g.coord(j), g.coord(k)};
                std::array<double, 3> y{x[0] - f.u[0](i, j, k), x[1] - f.u[1](i, j, k),
                                        x[2] - f.u[2](i, j, k)};
                double res = 1e300;
                for (int it = 0; it < max_iter; ++it) {
                    std::array<double, 3> r;
                    for (int a = 0; a < 3; ++a)
                        r[a] = wrap_pi(y[a] + ev[a](y[0], y[1], y[2]) - x[a]);
                    res = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
                    if (res <= tol) break;
                    ContactModel::Mat3 jm;
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b) jm[a][b] = jev[a][b](y[0], y[1], y[2]);
                    const auto ji = ContactModel::invert3(jm);
                    for (int a = 0; a < 3; ++a) {
                        double dy = 0.0;
                        for (int b = 0; b < 3; ++b) dy += ji[a][b] * r[b];
                        y[a] -= dy;
                    }
                }
                if (res > tol)
                    throw std::runtime_error("invert: Newton stalled, worst residual " +
                                             std::to_string(res));
                for (int a = 0; a < 3; ++a) out.u[a].at(i, j, k) = wrap_pi(y[a] - x[a]);
            }
    return out;
}

// --- exact contact symmetries F_c --------------------------------------
//
// F_c(x,y,z) = (x cos c - y sin c, x sin c + y cos c, z + c) descends to the
// torus only for c in (pi/2) Z; those values form the exact symmetry family
// used as controls. For 4 | N they act by grid permutation.

struct QuarterTurn {
    int quarters;  // c = quarters * pi/2

    double angle() const { return quarters * std::numbers::pi / 2.0; }

    std::array<double, 3> apply(const std::array<double, 3>& p) const {
        const double c = std::cos(angle()), s = std::sin(angle());
        return {wrap_2pi(c * p[0] - s * p[1]), wrap_2pi(s * p[0] + c * p[1]),
                wrap_2pi(p[2] + angle())};
    }
};

// f o F_c by grid permutation (exact; requires 4 | N).
inline ScalarField compose_with_quarter_turn(const ScalarField& f, QuarterTurn t) {
    const Grid& g = f.grid();
    if (g.n % 4 != 0) throw std::invalid_argument("quarter turn needs 4 | N");
    const int q = ((t.quarters % 4) + 4) % 4;
    auto mod = [&g](int v) { return ((v % g.n) + g.n) % g.n; };
    ScalarField out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                // target point F_c(x_i, y_j, z_k) has integer lattice image
                int ti = 0, tj = 0;
                switch (q) {
                    case 0: ti = i; tj = j; break;
                    case 1: ti = mod(-j); tj = i; break;           // (-y, x)
                    case 2: ti = mod(-i); tj = mod(-j); break;     // (-x, -y)
                    case 3: ti = j; tj = mod(-i); break;           // (y, -x)
                }
                out.at(i, j, k) = f(ti, tj, mod(k + q * g.n / 4));
            }
    return out;
}

// Pullback of a coordinate one-form under F_c: (F* psi)_j = psi_i(F(x)) R_ij
// with R the constant xy-rotation.
inline CoordOneForm pullback_quarter_turn(const CoordOneForm& psi, QuarterTurn t) {
    const double c = std::cos(t.angle()), s = std::sin(t.angle());
    std::array<ScalarField, 3> pf{compose_with_quarter_turn(psi.c[0], t),
                                  compose_with_quarter_turn(psi.c[1], t),
                                  compose_with_quarter_turn(psi.c[2], t)};
    // dF/dx columns: dF^x/dx = c, dF^y/dx = s; dF^x/dy = -s, dF^y/dy = c.
    return CoordOneForm(pf[0] * c + pf[1] * s, pf[0] * (-s) + pf[1] * c, pf[2]);
}

}  // namespace ctlab
