#pragma once

// Hodge theory for the Rumin complex: harmonic projectors H_Q, Green
// operators G_Q, and the orthogonal decomposition, via dense eigensolves at
// small N and matrix-free deflated conjugate gradients at working N.
//
// At CG sizes the harmonic bases are built from closed representatives:
// the constants in degrees 0 and 3, and in degree 1 the forms
// pi_Q(dx), pi_Q(dy), pi_Q(dz) (D_Q-closed by construction) corrected by a
// 0-form potential so they are also delta_Q-closed; degree 2 is the star
// image of degree 1. The dense null space at N = 8 validates both the
// dimensions and the construction.

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlab/rumin.hpp"

namespace ctlab {

struct SolverConfig {
    bool dense = false;
    double tol = 1e-10;
    int max_iterations = 5000;
    double null_threshold = 1e-8;  // relative eigenvalue cutoff for the dense kernel
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

class CGError : public std::runtime_error {
  public:
    CGError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

class HodgeSetup {
  public:
    HodgeSetup(const RuminComplex& rc, int degree, SolverConfig cfg)
        : rc_(&rc), degree_(degree), cfg_(cfg) {
        if (cfg_.dense) {
            if (rc.grid().n > 12)
                throw std::invalid_argument("HodgeSetup: dense path requires N <= 12");
            build_dense();
        } else {
            build_cg_basis();
        }
    }

    int degree() const { return degree_; }
    const SolverConfig& config() const { return cfg_; }
    const std::vector<RuminForm>& harmonic_basis() const { return harmonic_; }
    const SolveStats& last_solve() const { return last_; }

    // L^2-orthogonal projection onto the harmonic space.
    RuminForm H_Q(const RuminForm& w) const {
        RuminForm out(degree_, w.grid());
        for (const auto& h : harmonic_) out += rumin_inner(h, w) * h;
        return out;
    }

    // Green operator: solve Delta u = (Id - H_Q) w with u orthogonal to the
    // harmonic space.
    RuminForm G_Q(const RuminForm& w, const RuminForm* initial_guess = nullptr) const {
        if (cfg_.dense) return dense_green(w);
        return cg_green(w, initial_guess);
    }

    struct Decomposition {
        RuminForm harmonic, exact, coexact;
    };

    Decomposition hodge_decompose(const RuminForm& w) const {
        const RuminComplex& R = *rc_;
        RuminForm harm = H_Q(w);
        switch (degree_) {
            case 0: {
                RuminForm co = G_Q(2.0 * delta_d(w));
                return {harm, RuminForm(0, w.grid()), co};
            }
            case 1: {
                RuminForm dd = R.d_Q0(R.delta_Q(w));
                dd = R.d_Q0(R.delta_Q(dd));
                RuminForm ex = G_Q(dd);
                RuminForm co = G_Q(R.D_Q_star(R.D_Q(w)));
                return {harm, ex, co};
            }
            case 2: {
                RuminForm ex = G_Q(R.D_Q(R.D_Q_star(w)));
                RuminForm sd = R.delta_Q(R.d_Q2(w));
                sd = R.delta_Q(R.d_Q2(sd));
                RuminForm co = G_Q(sd);
                return {harm, ex, co};
            }
            case 3: {
                RuminForm ex = G_Q(R.d_Q2(R.delta_Q(w)));
                return {harm, ex, RuminForm(3, w.grid())};
            }
        }
        throw std::invalid_argument("hodge_decompose: bad degree");
    }

  private:
    RuminForm apply_laplacian(const RuminForm& w) const { return rc_->laplacian(w); }

    RuminForm delta_d(const RuminForm& f) const { return rc_->delta_Q(rc_->d_Q0(f)); }

    // --- dense path ------------------------------------------------------
    //
    // The dense oracle works in the resolved band |k_i| <= N/2 - 1, in the
    // real Fourier basis {1, cos(k.x), sin(k.x)} (L^2-orthonormalized), one
    // copy per form component. Assembling Delta there keeps the Nyquist
    // planes -- which the spectral operators treat as unresolved -- out of
    // the spectrum of the oracle.

    void build_dense() {
        const Grid& g = rc_->grid();
        const int bmax = g.n / 2 - 1;
        const double volume = two_pi * two_pi * two_pi;
        std::vector<ScalarField> scal;
        scal.push_back(ScalarField(g, 1.0 / std::sqrt(volume)));
        const double cnorm = std::sqrt(2.0 / volume);
        for (int kx = -bmax; kx <= bmax; ++kx)
            for (int ky = -bmax; ky <= bmax; ++ky)
                for (int kz = -bmax; kz <= bmax; ++kz) {
                    const bool lead = kx > 0 || (kx == 0 && ky > 0) ||
                                      (kx == 0 && ky == 0 && kz > 0);
                    if (!lead) continue;
                    scal.push_back(ScalarField::sample(g, [&](double x, double y, double z) {
                        return cnorm * std::cos(kx * x + ky * y + kz * z);
                    }));
                    scal.push_back(ScalarField::sample(g, [&](double x, double y, double z) {
                        return cnorm * std::sin(kx * x + ky * y + kz * z);
                    }));
                }
        const int ncomp = RuminForm::component_count(degree_);
        for (int c = 0; c < ncomp; ++c)
            for (const auto& phi : scal) {
                RuminForm b(degree_, g);
                b.comp(c) = phi;
                basis_.push_back(std::move(b));
            }
        const Eigen::Index dim = static_cast<Eigen::Index>(basis_.size());
        Eigen::MatrixXd a(dim, dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const RuminForm im = apply_laplacian(basis_[static_cast<std::size_t>(j)]);
            for (Eigen::Index i = 0; i < dim; ++i)
                a(i, j) = rumin_inner(basis_[static_cast<std::size_t>(i)], im);
        }
        a = 0.5 * (a + a.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        eigvals_ = es.eigenvalues();
        eigvecs_ = es.eigenvectors();
        const double lmax = std::max(1.0, eigvals_.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < eigvals_.size(); ++i)
            if (std::abs(eigvals_[i]) <= cfg_.null_threshold * lmax)
                harmonic_.push_back(from_coeffs(eigvecs_.col(i)));
    }

    Eigen::VectorXd to_coeffs(const RuminForm& w) const {
        Eigen::VectorXd v(static_cast<Eigen::Index>(basis_.size()));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            v[static_cast<Eigen::Index>(i)] = rumin_inner(basis_[i], w);
        return v;
    }

    RuminForm from_coeffs(const Eigen::VectorXd& v) const {
        RuminForm w(degree_, rc_->grid());
        for (std::size_t i = 0; i < basis_.size(); ++i)
            w += v[static_cast<Eigen::Index>(i)] * basis_[i];
        return w;
    }

    RuminForm dense_green(const RuminForm& w) const {
        const double lmax = std::max(1.0, eigvals_.cwiseAbs().maxCoeff());
        Eigen::VectorXd coef = eigvecs_.transpose() * to_coeffs(w);
        for (Eigen::Index i = 0; i < eigvals_.size(); ++i)
            coef[i] = (std::abs(eigvals_[i]) <= cfg_.null_threshold * lmax)
                          ? 0.0
                          : coef[i] / eigvals_[i];
        return from_coeffs(eigvecs_ * coef);
    }

    // --- CG path ---------------------------------------------------------

    void build_cg_basis() {
        const RuminComplex& R = *rc_;
        const Grid& g = rc_->grid();
        std::vector<RuminForm> raw;
        if (degree_ == 0) {
            raw.emplace_back(0, g);
            raw.back().comp(0) = ScalarField(g, 1.0);
        } else if (degree_ == 3) {
            raw.emplace_back(3, g);
            raw.back().comp(0) = ScalarField(g, 1.0);
        } else {
            // Degree-1 closed representatives pi_Q(dx), pi_Q(dy), pi_Q(dz),
            // made coexact-free by a 0-form potential; degree 2 by star.
            for (int axis = 0; axis < 3; ++axis) {
                CoordOneForm beta(g);
                beta.c[axis] = ScalarField(g, 1.0);
                RuminForm alpha = R.pi_Q(beta);
                RuminForm rhs = R.delta_Q(alpha);            // 0-form
                RuminForm u = solve_zero_form(rhs);          // delta_Q d_Q0 u = rhs
                RuminForm h = alpha - R.d_Q0(u);
                raw.push_back(degree_ == 1 ? h : R.star(h));
            }
        }
        // L^2 Gram-Schmidt.
        for (auto& v : raw) {
            for (const auto& h : harmonic_) v -= rumin_inner(h, v) * h;
            const double nrm = rumin_norm(v);
            if (nrm < 1e-8) throw std::runtime_error("harmonic basis: rank deficiency");
            v *= 1.0 / nrm;
            harmonic_.push_back(v);
        }
        // Kernel-quality invariant.
        for (const auto& h : harmonic_) {
            const double res = rumin_norm(apply_laplacian(h));
            if (res > 10.0 * cfg_.tol)
                throw std::runtime_error("harmonic basis: Delta residual " + std::to_string(res));
        }
    }

    // CG for delta_Q d_Q0 u = rhs on mean-zero 0-forms (used by the basis
    // construction; second order, well conditioned).
    RuminForm solve_zero_form(const RuminForm& rhs) const {
        const Grid& g = rc_->grid();
        RuminForm mean(0, g);
        mean.comp(0) = ScalarField(g, 1.0 / std::sqrt(integrate(ScalarField(g, 1.0))));
        auto project = [&](RuminForm& w) { w -= rumin_inner(mean, w) * mean; };
        RuminForm b = rhs;
        project(b);
        RuminForm x(0, g), r = b, p = r;
        const double bnorm = rumin_norm(b);
        if (bnorm == 0.0) return x;
        double rr = rumin_inner(r, r);
        for (int it = 0; it < cfg_.max_iterations; ++it) {
            RuminForm ap = delta_d(p);
            project(ap);
            const double alpha = rr / rumin_inner(p, ap);
            x += alpha * p;
            r -= alpha * ap;
            const double rr_new = rumin_inner(r, r);
            if (std::sqrt(rr_new) <= 1e-13 * bnorm) return x;
            p = r + (rr_new / rr) * p;
            rr = rr_new;
        }
        throw CGError("harmonic basis potential solve failed", rumin_norm(r) / bnorm);
    }

    // SPD Fourier-diagonal preconditioner 1/(1 + |k|^2)^p matching the
    // coordinate order of the Laplacian (2 at the ends, 4 in the middle).
    RuminForm precondition(const RuminForm& v) const {
        const Grid& g = v.grid();
        const int p = (degree_ == 1 || degree_ == 2) ? 2 : 1;
        RuminForm out(degree_, g);
        for (int c = 0; c < v.components(); ++c) {
            auto s = to_spectrum(v.comp(c));
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    for (int k = 0; k < g.n; ++k) {
                        const double k2 = 1.0 + double(g.freq(i)) * g.freq(i) +
                                          double(g.freq(j)) * g.freq(j) +
                                          double(g.freq(k)) * g.freq(k);
                        s[g.index(i, j, k)] /= (p == 2) ? k2 * k2 : k2;
                    }
            out.comp(c) = from_spectrum(g, std::move(s));
        }
        return out;
    }

    RuminForm cg_green(const RuminForm& w, const RuminForm* x0) const {
        auto deflate = [&](RuminForm& v) {
            for (const auto& h : harmonic_) v -= rumin_inner(h, v) * h;
        };
        RuminForm b = w;
        deflate(b);
        const double bnorm = rumin_norm(b);
        RuminForm x(degree_, w.grid());
        last_ = SolveStats{};
        if (bnorm == 0.0) return x;
        if (x0 != nullptr) {
            x = *x0;
            deflate(x);
        }
        RuminForm r = b - apply_laplacian(x);
        deflate(r);
        RuminForm z = precondition(r);
        deflate(z);
        RuminForm p = z;
        double rz = rumin_inner(r, z);
        for (int it = 1; it <= cfg_.max_iterations; ++it) {
            RuminForm ap = apply_laplacian(p);
            deflate(ap);
            const double alpha = rz / rumin_inner(p, ap);
            x += alpha * p;
            r -= alpha * ap;
            const double rnorm = rumin_norm(r);
            if (rnorm <= cfg_.tol * bnorm) {
                last_ = {it, rnorm / bnorm, true};
                return x;
            }
            z = precondition(r);
            deflate(z);
            const double rz_new = rumin_inner(r, z);
            p = z + (rz_new / rz) * p;
            rz = rz_new;
        }
        last_ = {cfg_.max_iterations, rumin_norm(r) / bnorm, false};
        throw CGError("G_Q conjugate gradient did not converge", rumin_norm(r) / bnorm);
    }

    const RuminComplex* rc_;
    int degree_;
    SolverConfig cfg_;
    std::vector<RuminForm> harmonic_;
    std::vector<RuminForm> basis_;  // dense path only
    Eigen::VectorXd eigvals_;
    Eigen::MatrixXd eigvecs_;
    mutable SolveStats last_;
};

// All four degrees, built once and shared read-only.
struct HodgeStack {
    std::vector<HodgeSetup> by_degree;

    HodgeStack(const RuminComplex& rc, SolverConfig cfg) {
        by_degree.reserve(4);
        for (int k = 0; k < 4; ++k) by_degree.emplace_back(rc, k, cfg);
    }
    const HodgeSetup& operator[](int k) const { return by_degree.at(k); }
};

// Commutation checks of the Hodge theory: P H_Q = H_Q P = 0 for
// P in {d_Q, delta_Q, D_Q, D_Q*}, and the middle-degree relation
// d_Q G_Q f = (1/2) G_Q (d_Q delta_Q d_Q) f on 0-forms.
struct CommutationReport {
    double max_p_hq = 0.0;      // sup over checks of ||P H_Q w|| / ||w||
    double max_hq_p = 0.0;      // sup over checks of ||H_Q P w|| / ||w||
    double green_relation = 0.0;  // relative defect of the k = 0 relation
};

inline CommutationReport verify_commutations(const RuminComplex& R, const HodgeStack& H,
                                             std::uint64_t seed, int band, int n_samples) {
    CommutationReport rep;
    const Grid& g = R.grid();
    for (int i = 0; i < n_samples; ++i) {
        RuminForm f(0, g);
        f.comp(0) = random_band_limited(g, seed + 10 * i, band, 1.0);
        RuminForm a(1, g);
        a.comp(0) = random_band_limited(g, seed + 10 * i + 1, band, 1.0);
        a.comp(1) = random_band_limited(g, seed + 10 * i + 2, band, 1.0);
        RuminForm b(2, g);
        b.comp(0) = random_band_limited(g, seed + 10 * i + 3, band, 1.0);
        b.comp(1) = random_band_limited(g, seed + 10 * i + 4, band, 1.0);
        RuminForm t(3, g);
        t.comp(0) = random_band_limited(g, seed + 10 * i + 5, band, 1.0);

        // P H_Q = 0
        rep.max_p_hq = std::max({rep.max_p_hq,
                                 rumin_norm(R.d_Q0(H[0].H_Q(f))) / rumin_norm(f),
                                 rumin_norm(R.D_Q(H[1].H_Q(a))) / rumin_norm(a),
                                 rumin_norm(R.delta_Q(H[1].H_Q(a))) / rumin_norm(a),
                                 rumin_norm(R.d_Q2(H[2].H_Q(b))) / rumin_norm(b),
                                 rumin_norm(R.D_Q_star(H[2].H_Q(b))) / rumin_norm(b),
                                 rumin_norm(R.delta_Q(H[3].H_Q(t))) / rumin_norm(t)});
        // H_Q P = 0
        rep.max_hq_p = std::max({rep.max_hq_p,
                                 rumin_norm(H[1].H_Q(R.d_Q0(f))) / rumin_norm(f),
                                 rumin_norm(H[2].H_Q(R.D_Q(a))) / rumin_norm(a),
                                 rumin_norm(H[0].H_Q(R.delta_Q(a))) / rumin_norm(a),
                                 rumin_norm(H[3].H_Q(R.d_Q2(b))) / rumin_norm(b),
                                 rumin_norm(H[1].H_Q(R.D_Q_star(b))) / rumin_norm(b),
                                 rumin_norm(H[2].H_Q(R.delta_Q(t))) / rumin_norm(t)});
        // d_Q G_Q f = (1/2) G_Q (d_Q delta_Q d_Q) f on 0-forms.
        RuminForm lhs = R.d_Q0(H[0].G_Q(f));
        RuminForm rhs = 0.5 * H[1].G_Q(R.d_Q0(R.delta_Q(R.d_Q0(f))));
        const double denom = std::max(rumin_norm(lhs), 1e-300);
        rep.green_relation = std::max(rep.green_relation, rumin_norm(lhs - rhs) / denom);
    }
    return rep;
}

}  // namespace ctlab
