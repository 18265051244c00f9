#pragma once

// Generating functions, contact vector fields, the map Phi and its
// linearization at the identity, the frozen-Jacobian solver producing
// contact diffeomorphisms, and the scaling experiments built on it.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctlab/contact_model.hpp"
#include "ctlab/flowmap.hpp"
#include "ctlab/folland_stein.hpp"
#include "ctlab/hodge.hpp"
#include "ctlab/rumin.hpp"

namespace ctlab {

// Shared read-only context for the solver layer.
struct ContactLab {
    const ContactModel* model;
    const RuminComplex* rumin;
    const HodgeStack* hodge;
    GeodesicConfig geo{};

    ContactLab(const ContactModel& m, const RuminComplex& r, const HodgeStack& h)
        : model(&m), rumin(&r), hodge(&h) {}
};

struct GeneratingFunction {
    ScalarField g;
    double smallness = 0.1;

    explicit GeneratingFunction(ScalarField f, double radius = 0.1)
        : g(std::move(f)), smallness(radius) {
        if (g.max_abs() > smallness)
            throw std::invalid_argument("GeneratingFunction: sup|g| exceeds smallness radius");
    }
};

struct PhiValue {
    ScalarField g;      // 0-form component
    ScalarField alpha;  // mean-zero 0-form (range of delta_Q)
    RuminForm omega;    // degree-1 form in ker(delta_Q)
};

// X_g = g T - (d_Q g)^sharp; sharp(p eps1 + q eps2) = q e1 - p e2.
inline FrameVectorField contact_field_from_g(const ContactLab& lab, const ScalarField& g) {
    const ContactModel& m = *lab.model;
    return FrameVectorField{g, -1.0 * m.apply_horizontal(g, 2), m.apply_horizontal(g, 1)};
}

// X -| d_eta for X = X0 T + a e1 + b e2: d_eta = eps1 ^ eps2, so the
// contraction is a eps2 - b eps1.
inline RuminForm interior_d_eta(const FrameVectorField& x) {
    return RuminForm(1, {-1.0 * x.f2, x.f1});
}

struct ContactFieldResiduals {
    double lemma_a, lemma_b, lemma_c;
};

// Residuals of the three equivalent characterizations of a contact field:
// (a) X0 = H_Q(X0) - 2 G_Q delta_Q(X -| d_eta); (b) H_Q(X -| d_eta) = 0;
// (c) D_Q(X -| d_eta) = 0.
inline ContactFieldResiduals check_contact_field(const ContactLab& lab,
                                                 const FrameVectorField& x) {
    const RuminComplex& R = *lab.rumin;
    const HodgeStack& H = *lab.hodge;
    const RuminForm iota = interior_d_eta(x);
    const RuminForm x0(0, {x.f0});
    const RuminForm recon = H[0].H_Q(x0) - 2.0 * H[0].G_Q(R.delta_Q(iota));
    return {rumin_norm(x0 - recon), rumin_norm(H[1].H_Q(iota)), rumin_norm(R.D_Q(iota))};
}

// Warm-start storage for the Green solves inside Phi across Newton steps.
struct PhiWorkspace {
    bool valid = false;
    RuminForm g_part, alpha_part, omega_part;

    explicit PhiWorkspace(const Grid& gr)
        : g_part(0, gr), alpha_part(0, gr), omega_part(1, gr) {}
};

// Phi(X) = (g_X, alpha_X, omega_X) with n + 1 = 2:
//   g_X     = -2 G_Q delta_Q (X_H -| d_eta) + H_Q(X0)
//   alpha_X =  2 G_Q delta_Q (pi_Q F_X* eta)
//   omega_X =  G_Q D_Q* D_Q (pi_Q F_X* eta) + H_Q(pi_Q F_X* eta)
// Also returns the pulled-back horizontal form beta = pi_Q F_X* eta, whose
// L^2 norm is the contact defect of F_X.
inline PhiValue phi(const ContactLab& lab, const FrameVectorField& x,
                    RuminForm* beta_out = nullptr, PhiWorkspace* ws = nullptr) {
    const ContactModel& m = *lab.model;
    const RuminComplex& R = *lab.rumin;
    const HodgeStack& H = *lab.hodge;

    const RuminForm iota = interior_d_eta(x);
    const RuminForm x0(0, {x.f0});
    RuminForm gsol = H[0].G_Q(R.delta_Q(iota), ws && ws->valid ? &ws->g_part : nullptr);
    ScalarField g = -2.0 * gsol.comp(0) + H[0].H_Q(x0).comp(0);

    const GridMap f = flow_from_field(m, x, lab.geo);
    const RuminForm beta = R.pi_Q(pullback_eta(f));
    if (beta_out) *beta_out = beta;

    RuminForm asol = H[0].G_Q(R.delta_Q(beta), ws && ws->valid ? &ws->alpha_part : nullptr);
    ScalarField alpha = 2.0 * asol.comp(0);
    RuminForm osol =
        H[1].G_Q(R.D_Q_star(R.D_Q(beta)), ws && ws->valid ? &ws->omega_part : nullptr);
    RuminForm omega = osol + H[1].H_Q(beta);

    if (ws) {
        ws->g_part = std::move(gsol);
        ws->alpha_part = std::move(asol);
        ws->omega_part = std::move(osol);
        ws->valid = true;
    }
    return PhiValue{std::move(g), std::move(alpha), std::move(omega)};
}

// Inverse of the linearization of Phi at X = 0:
// (g, alpha, omega) -> (g + alpha) T + (-d_Q g + omega)^sharp.
inline FrameVectorField dphi0_inverse(const ContactLab& lab, const PhiValue& v) {
    const RuminComplex& R = *lab.rumin;
    RuminForm w = R.d_Q0(RuminForm(0, {v.g})) * -1.0 + v.omega;
    return FrameVectorField{v.g + v.alpha, w.comp(1), -1.0 * w.comp(0)};
}

struct SolveReport {
    std::vector<double> defect_history;  // L^2 contact defect per iteration
    int iterations = 0;
    bool converged = false;
    double final_defect = 0.0;
};

// Frozen-Jacobian Newton iteration for Psi: starting from X_g, drive the
// (alpha, omega) components of Phi to zero while freezing the target
// g-component at its initial value.
inline FrameVectorField solve_psi(const ContactLab& lab, const GeneratingFunction& gen,
                                  SolveReport& report, double tol = 1e-10,
                                  int max_iter = 30) {
    const Grid& gr = lab.model->grid();
    FrameVectorField x = contact_field_from_g(lab, gen.g);
    PhiWorkspace ws(gr);
    report = SolveReport{};
    bool have_target = false;
    ScalarField gstar_field(gr);
    for (int it = 0; it <= max_iter; ++it) {
        RuminForm beta(1, gr);
        PhiValue v = phi(lab, x, &beta, &ws);
        const double defect = rumin_norm(beta);
        report.defect_history.push_back(defect);
        report.final_defect = defect;
        report.iterations = it;
        if (!std::isfinite(defect)) break;
        if (defect <= tol) {
            report.converged = true;
            break;
        }
        if (!have_target) {
            gstar_field = v.g;
            have_target = true;
        }
        PhiValue r{v.g - gstar_field, std::move(v.alpha), std::move(v.omega)};
        x -= dphi0_inverse(lab, r);
    }
    return x;
}

namespace detail {

// Least-squares slope of log(y) against log(t).
inline double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const int n = static_cast<int>(t.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(t[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

struct ScalingRow {
    double t;
    std::vector<double> residual_by_s;  // ||Psi(X_tg) - X_tg||_s
    std::vector<double> xnorm_by_s;     // ||X_tg||_s
};

struct ScalingReport {
    std::vector<int> s_list;
    std::vector<ScalingRow> rows;
    std::vector<double> slope_by_s;
    bool all_converged = true;
};

// Residual scaling ||Psi(X_tg) - X_tg||_s over a geometric t-sweep; the
// least-squares slope in log-log should be 2.
inline ScalingReport quadratic_scaling_experiment(const ContactLab& lab, const ScalarField& g,
                                                  const std::vector<int>& s_list,
                                                  const std::vector<double>& t_list,
                                                  double tol = 1e-10) {
    ScalingReport rep;
    rep.s_list = s_list;
    for (double t : t_list) {
        GeneratingFunction gen(g * t, 0.2);
        SolveReport sr;
        FrameVectorField x0 = contact_field_from_g(lab, gen.g);
        FrameVectorField x = solve_psi(lab, gen, sr, tol);
        rep.all_converged = rep.all_converged && sr.converged;
        ScalingRow row;
        row.t = t;
        const FrameVectorField diff = x - x0;
        for (int s : s_list) {
            row.residual_by_s.push_back(fs_norm(*lab.model, diff, s));
            row.xnorm_by_s.push_back(fs_norm(*lab.model, x0, s));
        }
        rep.rows.push_back(std::move(row));
    }
    std::vector<double> ts;
    for (const auto& r : rep.rows) ts.push_back(r.t);
    for (std::size_t si = 0; si < s_list.size(); ++si) {
        std::vector<double> ys;
        for (const auto& r : rep.rows) ys.push_back(r.residual_by_s[si]);
        rep.slope_by_s.push_back(detail::loglog_slope(ts, ys));
    }
    return rep;
}

struct DifferenceRow {
    double t, lhs, rhs, ratio;
};

// Difference estimate: LHS = ||(Psi(X2) - X2) - (Psi(X1) - X1)||_s against
// RHS = ||X2-X1||_{s-1}(||X2||_s + ||X1||_s) + ||X2-X1||_s(||X2||_{s-1} + ||X1||_{s-1}).
inline std::vector<DifferenceRow> difference_scaling_experiment(
    const ContactLab& lab, const ScalarField& g1, const ScalarField& g2, int s,
    const std::vector<double>& t_list, double tol = 1e-10) {
    const ContactModel& m = *lab.model;
    std::vector<DifferenceRow> rows;
    for (double t : t_list) {
        SolveReport r1, r2;
        FrameVectorField x1 = contact_field_from_g(lab, g1 * t);
        FrameVectorField x2 = contact_field_from_g(lab, g2 * t);
        FrameVectorField p1 = solve_psi(lab, GeneratingFunction(g1 * t, 0.2), r1, tol);
        FrameVectorField p2 = solve_psi(lab, GeneratingFunction(g2 * t, 0.2), r2, tol);
        if (!r1.converged || !r2.converged)
            throw std::runtime_error("difference_scaling_experiment: solver non-convergence");
        const double lhs = fs_norm(m, (p2 - x2) - (p1 - x1), s);
        const FrameVectorField dx = x2 - x1;
        const double rhs = fs_norm(m, dx, s - 1) * (fs_norm(m, x2, s) + fs_norm(m, x1, s)) +
                           fs_norm(m, dx, s) * (fs_norm(m, x2, s - 1) + fs_norm(m, x1, s - 1));
        rows.push_back({t, lhs, rhs, rhs > 0 ? lhs / rhs : 0.0});
    }
    return rows;
}

struct CompositionDerivativeReport {
    std::vector<double> t_list, error;
    double slope = 0.0;
};

// First-order derivative of composition: along the solved contact path
// t -> F(th), the quotient (u o F - u)/t converges to X_h -| du.
inline CompositionDerivativeReport composition_derivative_check(
    const ContactLab& lab, const ScalarField& u, const ScalarField& h,
    const std::vector<double>& t_list, double tol = 1e-10) {
    const ContactModel& m = *lab.model;
    CompositionDerivativeReport rep;
    rep.t_list = t_list;
    const FrameVectorField xh = contact_field_from_g(lab, h);
    const auto xc = m.vector_to_coords(xh);
    const ScalarField target = interior(xc, exterior_derivative(u));
    for (double t : t_list) {
        SolveReport sr;
        FrameVectorField x = solve_psi(lab, GeneratingFunction(h * t, 0.2), sr, tol);
        if (!sr.converged)
            throw std::runtime_error("composition_derivative_check: solver non-convergence");
        const GridMap f = flow_from_field(m, x, lab.geo);
        const ScalarField quot = (pullback_scalar(f, u) - u) * (1.0 / t);
        rep.error.push_back(l2_norm(quot - target));
    }
    rep.slope = detail::loglog_slope(rep.t_list, rep.error);
    return rep;
}

struct GroupReport {
    double defect_f1 = 0.0, defect_f2 = 0.0;
    double defect_composition = 0.0;   // pi_Q (F2 o F1)* eta
    double defect_inverse = 0.0;       // pi_Q (F1^-1)* eta
    double defect_symmetry_mix = 0.0;  // pi_Q (F1 o F_c)* eta via exact symmetry
    double roundtrip_sup = 0.0;        // sup |F1 o F1^-1 - id|
};

// Group-operation witnesses: composition and inversion of solved contact
// maps stay contact, and mixing in an exact quarter-turn symmetry preserves
// the defect budget.
inline GroupReport group_closure_experiment(const ContactLab& lab, const GeneratingFunction& g1,
                                            const GeneratingFunction& g2, double tol = 1e-10) {
    const ContactModel& m = *lab.model;
    const RuminComplex& R = *lab.rumin;
    GroupReport rep;
    SolveReport r1, r2;
    const FrameVectorField x1 = solve_psi(lab, g1, r1, tol);
    const FrameVectorField x2 = solve_psi(lab, g2, r2, tol);
    if (!r1.converged || !r2.converged)
        throw std::runtime_error("group_closure_experiment: solver non-convergence");
    rep.defect_f1 = r1.final_defect;
    rep.defect_f2 = r2.final_defect;

    const GridMap f1 = flow_from_field(m, x1, lab.geo);
    const GridMap f2 = flow_from_field(m, x2, lab.geo);

    const GridMap f21 = compose(f1, f2);  // F2 o F1
    rep.defect_composition = rumin_norm(R.pi_Q(pullback_eta(f21)));

    const GridMap f1inv = invert(f1);
    rep.defect_inverse = rumin_norm(R.pi_Q(pullback_eta(f1inv)));

    const GridMap round = compose(f1inv, f1);  // F1 o F1^-1
    rep.roundtrip_sup = round.max_displacement();

    // (F1 o F_c)* eta = F_c* (F1* eta): exact-permutation pullback of the
    // numerically computed one-form.
    const CoordOneForm f1eta = pullback_eta(f1);
    rep.defect_symmetry_mix =
        rumin_norm(R.pi_Q(pullback_quarter_turn(f1eta, QuarterTurn{1})));
    return rep;
}

}  // namespace ctlab
