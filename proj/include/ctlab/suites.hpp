#pragma once

// Batch experiment suites: configuration parsing, one suite per named
// experiment, report emission. Each suite is deterministic given the seed
// and records numerical failures as failing checks instead of crashing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlab/contact_diffeo.hpp"
#include "ctlab/contact_model.hpp"
#include "ctlab/flowmap.hpp"
#include "ctlab/folland_stein.hpp"
#include "ctlab/grid.hpp"
#include "ctlab/hodge.hpp"
#include "ctlab/report.hpp"
#include "ctlab/rumin.hpp"

namespace ctlab {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
    int grid = 16;
    int band = 3;
    std::uint64_t seed = 1;
    int s_max = 4;
    double tol_spectral = 1e-10;
    double tol_solver = 1e-10;
    double j_eps = 0.3;       // anisotropy parameter for the exp-map suite
    double smallness = 0.1;   // generating-function radius
    int jobs = 1;
    std::string out_dir = ".";

    void validate() const {
        if (grid < 8 || (grid & (grid - 1)) != 0)
            throw ConfigError("grid must be a power of two >= 8");
        if (band < 1 || band >= grid / 2) throw ConfigError("band must satisfy 1 <= band < grid/2");
        if (s_max < 1 || s_max > fs_s_max) throw ConfigError("s_max out of range");
        if (tol_spectral <= 0 || tol_solver <= 0) throw ConfigError("tolerances must be positive");
        if (smallness <= 0) throw ConfigError("smallness must be positive");
        if (jobs < 1) throw ConfigError("jobs must be >= 1");
    }

    std::vector<std::pair<std::string, std::string>> echo() const {
        return {{"grid", std::to_string(grid)},
                {"band", std::to_string(band)},
                {"seed", std::to_string(seed)},
                {"s_max", std::to_string(s_max)},
                {"tol_spectral", format_sig(tol_spectral)},
                {"tol_solver", format_sig(tol_solver)},
                {"j_eps", format_sig(j_eps)},
                {"smallness", format_sig(smallness)},
                {"jobs", std::to_string(jobs)}};
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

// Flat key=value file; '#' starts a comment; unknown keys are errors.
inline void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                              const std::string& value) {
    try {
        if (key == "grid") cfg.grid = std::stoi(value);
        else if (key == "band") cfg.band = std::stoi(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "s_max") cfg.s_max = std::stoi(value);
        else if (key == "tol_spectral") cfg.tol_spectral = std::stod(value);
        else if (key == "tol_solver") cfg.tol_solver = std::stod(value);
        else if (key == "j_eps") cfg.j_eps = std::stod(value);
        else if (key == "smallness") cfg.smallness = std::stod(value);
        else if (key == "jobs") cfg.jobs = std::stoi(value);
        else if (key == "out") cfg.out_dir = value;
        else throw ConfigError("unknown config key: " + key);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad value for config key " + key + ": " + value);
    }
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_config_line(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return cfg;
}

// ---- shared fixtures ----------------------------------------------------

namespace detail {

// The model, complex and Hodge stack for one grid size, wired into a lab.
struct Bundle {
    Grid grid;
    ContactModel model;
    RuminComplex rumin;
    HodgeStack hodge;
    ContactLab lab;

    Bundle(int n, JChoice j, SolverConfig sc)
        : grid{n}, model(grid, j), rumin(model), hodge(rumin, sc), lab(model, rumin, hodge) {}
};

inline SolverConfig cg_config(const ExperimentConfig& cfg) {
    SolverConfig sc;
    sc.dense = false;
    sc.tol = cfg.tol_solver;
    return sc;
}

inline RuminForm random_rumin(const Grid& g, int degree, std::uint64_t seed, int band,
                              double amp = 1.0) {
    std::vector<ScalarField> c;
    const int nc = (degree == 0 || degree == 3) ? 1 : 2;
    for (int i = 0; i < nc; ++i) c.push_back(random_band_limited(g, seed * 4 + i, band, amp));
    return RuminForm(degree, std::move(c));
}

inline double fs_norm_form(const ContactModel& m, const RuminForm& w, int s) {
    double acc = 0.0;
    for (int i = 0; i < w.components(); ++i) acc += fs_norm_sq(m, w.comp(i), s);
    return std::sqrt(acc);
}

inline double l2_norm_coord_form(const CoordOneForm& a) {
    return std::sqrt(l2_inner(a.c[0], a.c[0]) + l2_inner(a.c[1], a.c[1]) +
                     l2_inner(a.c[2], a.c[2]));
}


// Zero all modes with |k|_inf above the band (used to compare one analytic
// profile at two band limits).
inline ScalarField truncate_band(const ScalarField& f, int band) {
    const Grid& g = f.grid();
    auto s = to_spectrum(f);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                if (std::abs(g.freq(i)) > band || std::abs(g.freq(j)) > band ||
                    std::abs(g.freq(k)) > band)
                    s[g.index(i, j, k)] = 0.0;
    return from_spectrum(g, std::move(s));
}

// Relative drift between a pair of recorded ratios (criterion: <= 30%).
inline double drift(double a, double b) {
    const double lo = std::min(std::abs(a), std::abs(b));
    const double hi = std::max(std::abs(a), std::abs(b));
    if (lo == 0.0) return hi == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return hi / lo - 1.0;
}

}  // namespace detail

// ---- suites -------------------------------------------------------------

// Criteria 1-3: complex identities, adjointness, Laplacian positivity and
// self-adjointness.
inline void suite_verify_complex(SuiteReport& rep, const ExperimentConfig& cfg) {
    const int n = std::max(cfg.grid, 16);
    detail::Bundle b(n, JChoice::standard(), detail::cg_config(cfg));
    const RuminComplex& R = b.rumin;
    const ContactModel& m = b.model;
    const Grid& g = b.grid;

    // Criterion 1: D_Q d_Q = 0 and d_Q2 D_Q = 0 on 20 random band-4 inputs.
    CsvTable ident{"identities", {"sample", "dd_zero", "d2d_zero"}, {}};
    double worst_dd = 0.0, worst_d2d = 0.0;
    for (int i = 0; i < 20; ++i) {
        ScalarField f = random_band_limited(g, cfg.seed + 100 + i, 4, 1.0);
        RuminForm a = detail::random_rumin(g, 1, cfg.seed + 200 + i, 4);
        const double dd = rumin_norm(R.D_Q(R.d_Q0(RuminForm(0, {f})))) / fs_norm(m, f, 2);
        const double d2d = rumin_norm(R.d_Q2(R.D_Q(a))) / detail::fs_norm_form(m, a, 2);
        worst_dd = std::max(worst_dd, dd);
        worst_d2d = std::max(worst_d2d, d2d);
        ident.rows.push_back({double(i), dd, d2d});
    }
    rep.tables.push_back(std::move(ident));
    rep.check_le("DQ_dQ_zero", worst_dd, 1e-8, "criterion 1");
    rep.check_le("dQ2_DQ_zero", worst_d2d, 1e-8, "criterion 1");

    // Criterion 2: adjointness of (d_Q0, delta_Q), (D_Q, D_Q*), (d_Q2, delta_Q)
    // on 50 random pairs.
    double worst_adj = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t s0 = cfg.seed + 1000 + 6 * i;
        RuminForm f = detail::random_rumin(g, 0, s0, cfg.band);
        RuminForm a = detail::random_rumin(g, 1, s0 + 1, cfg.band);
        RuminForm a2 = detail::random_rumin(g, 1, s0 + 2, cfg.band);
        RuminForm w = detail::random_rumin(g, 2, s0 + 3, cfg.band);
        RuminForm w2 = detail::random_rumin(g, 2, s0 + 4, cfg.band);
        RuminForm t = detail::random_rumin(g, 3, s0 + 5, cfg.band);
        const RuminForm df = R.d_Q0(f), da = R.delta_Q(a);
        const RuminForm Da = R.D_Q(a2), Dw = R.D_Q_star(w);
        const RuminForm dw = R.d_Q2(w2), dt = R.delta_Q(t);
        const double e1 = std::abs(rumin_inner(df, a) - rumin_inner(f, da)) /
                          (rumin_norm(df) * rumin_norm(a) + rumin_norm(f) * rumin_norm(da));
        const double e2 = std::abs(rumin_inner(Da, w) - rumin_inner(a2, Dw)) /
                          (rumin_norm(Da) * rumin_norm(w) + rumin_norm(a2) * rumin_norm(Dw));
        const double e3 = std::abs(rumin_inner(dw, t) - rumin_inner(w2, dt)) /
                          (rumin_norm(dw) * rumin_norm(t) + rumin_norm(w2) * rumin_norm(dt));
        worst_adj = std::max({worst_adj, e1, e2, e3});
    }
    rep.check_le("adjointness", worst_adj, 1e-8, "criterion 2");

    // Criterion 3: Rayleigh quotients of the Laplacians and their
    // self-adjointness defect, all degrees, 20 samples each.
    CsvTable ray{"rayleigh", {"degree", "min_rayleigh", "max_adjoint_defect"}, {}};
    double worst_ray = 1e300, worst_sa = 0.0;
    for (int k = 0; k < 4; ++k) {
        double mn = 1e300, sa = 0.0;
        for (int i = 0; i < 20; ++i) {
            const std::uint64_t s0 = cfg.seed + 2000 + 40 * k + 2 * i;
            RuminForm u = detail::random_rumin(g, k, s0, cfg.band);
            RuminForm v = detail::random_rumin(g, k, s0 + 1, cfg.band);
            const RuminForm Lu = R.laplacian(u), Lv = R.laplacian(v);
            mn = std::min(mn, rumin_inner(Lu, u) / rumin_inner(u, u));
            sa = std::max(sa, std::abs(rumin_inner(Lu, v) - rumin_inner(u, Lv)) /
                                  (rumin_norm(Lu) * rumin_norm(v) +
                                   rumin_norm(u) * rumin_norm(Lv)));
        }
        worst_ray = std::min(worst_ray, mn);
        worst_sa = std::max(worst_sa, sa);
        ray.rows.push_back({double(k), mn, sa});
    }
    rep.tables.push_back(std::move(ray));
    rep.check_ge("laplacian_rayleigh", worst_ray, -1e-10, "criterion 3");
    rep.check_le("laplacian_self_adjoint", worst_sa, 1e-8, "criterion 3");
}

// Criteria 4-6: Hodge reconstruction and orthogonality with the dense
// oracle, dense-vs-CG agreement, commutation relations and the Green
// relation.
inline void suite_verify_hodge(SuiteReport& rep, const ExperimentConfig& cfg) {
    SolverConfig dense_cfg;
    dense_cfg.dense = true;
    detail::Bundle b8(8, JChoice::standard(), dense_cfg);
    detail::Bundle c8(8, JChoice::standard(), detail::cg_config(cfg));

    // Criterion 4: harmonic dimensions (1, 3, 3, 1) at N = 8 dense.
    const int expected_dims[4] = {1, 3, 3, 1};
    for (int k = 0; k < 4; ++k) {
        const double dim = double(b8.hodge[k].harmonic_basis().size());
        rep.check_near("harmonic_dim_deg" + std::to_string(k), dim, expected_dims[k], 0.0,
                       "criterion 4");
    }

    // Criterion 4: reconstruction at N = 8 dense. The exact/coexact
    // formulas build up four operator orders of band growth, so their
    // mutual orthogonality is only resolved with spectral headroom:
    // band-1 inputs at N = 32, same discipline as the Green relation.
    detail::Bundle b32o(32, JChoice::standard(), detail::cg_config(cfg));
    double worst_recon = 0.0, worst_orth = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 5; ++i) {
            RuminForm w = detail::random_rumin(b8.grid, k, cfg.seed + 300 + 10 * k + i, 2);
            const auto d = b8.hodge[k].hodge_decompose(w);
            worst_recon = std::max(worst_recon,
                                   rumin_norm(w - d.harmonic - d.exact - d.coexact) /
                                       rumin_norm(w));
        }
        for (int i = 0; i < 2; ++i) {
            RuminForm w = detail::random_rumin(b32o.grid, k, cfg.seed + 350 + 10 * k + i, 1);
            const auto d = b32o.hodge[k].hodge_decompose(w);
            const double nw = rumin_norm(w);
            const double nh = rumin_norm(d.harmonic), ne = rumin_norm(d.exact),
                         nc = rumin_norm(d.coexact);
            auto pair_err = [&](const RuminForm& a, const RuminForm& b2, double na, double nb) {
                if (na < 1e-10 * nw || nb < 1e-10 * nw) return 0.0;
                return std::abs(rumin_inner(a, b2)) / (na * nb);
            };
            worst_orth = std::max({worst_orth, pair_err(d.harmonic, d.exact, nh, ne),
                                   pair_err(d.harmonic, d.coexact, nh, nc),
                                   pair_err(d.exact, d.coexact, ne, nc)});
        }
    }
    rep.check_le("hodge_reconstruction", worst_recon, 1e-6, "criterion 4");
    rep.check_le("hodge_orthogonality", worst_orth, 1e-8, "criterion 4, N=32 band-1");

    // Criterion 5: dense vs CG Green operator at N = 8, 10 right-hand sides
    // per degree.
    double worst_green = 0.0;
    CsvTable gt{"dense_vs_cg", {"degree", "max_rel_diff"}, {}};
    for (int k = 0; k < 4; ++k) {
        double mx = 0.0;
        for (int i = 0; i < 10; ++i) {
            RuminForm w = detail::random_rumin(b8.grid, k, cfg.seed + 400 + 20 * k + i, 2);
            const RuminForm gd = b8.hodge[k].G_Q(w);
            const RuminForm gc = c8.hodge[k].G_Q(w);
            mx = std::max(mx, rumin_norm(gd - gc) / rumin_norm(gd));
        }
        worst_green = std::max(worst_green, mx);
        gt.rows.push_back({double(k), mx});
    }
    rep.tables.push_back(std::move(gt));
    rep.check_le("dense_vs_cg_green", worst_green, 1e-7, "criterion 5");

    // Criterion 6: commutations P H_Q = H_Q P = 0 at the working grid; the
    // Green relation needs headroom above the band cap, so it runs at
    // N = 32 with band-1 inputs where the truncation tail is resolved.
    const int n = std::max(cfg.grid, 16);
    detail::Bundle b16(n, JChoice::standard(), detail::cg_config(cfg));
    const auto comm = verify_commutations(b16.rumin, b16.hodge, cfg.seed + 500,
                                          std::min(cfg.band, 2), 3);
    rep.check_le("P_HQ_zero", comm.max_p_hq, 1e-8, "criterion 6");
    rep.check_le("HQ_P_zero", comm.max_hq_p, 1e-8, "criterion 6");
    detail::Bundle b32(32, JChoice::standard(), detail::cg_config(cfg));
    const auto comm32 = verify_commutations(b32.rumin, b32.hodge, cfg.seed + 600, 1, 2);
    rep.check_le("green_relation", comm32.green_relation, 1e-5, "criterion 6");
}

// Criterion 7: contact vector fields from generating functions.
inline void suite_contact_field(SuiteReport& rep, const ExperimentConfig& cfg) {
    const int n = std::max(cfg.grid, 16);
    detail::Bundle b(n, JChoice::standard(), detail::cg_config(cfg));
    const ContactModel& m = b.model;
    const RuminComplex& R = b.rumin;

    double worst_lie = 0.0, worst_a = 0.0, worst_b = 0.0, worst_c = 0.0;
    CsvTable t{"residuals", {"sample", "lie_defect", "lemma_a", "lemma_b", "lemma_c"}, {}};
    for (int i = 0; i < 20; ++i) {
        ScalarField g = random_band_limited(b.grid, cfg.seed + 700 + i, 3, 0.05);
        const FrameVectorField x = contact_field_from_g(b.lab, g);
        const double lie =
            rumin_norm(R.pi_Q(lie_derivative(m, x, m.eta()))) / fs_norm(m, g, 2);
        const auto res = check_contact_field(b.lab, x);
        worst_lie = std::max(worst_lie, lie);
        worst_a = std::max(worst_a, res.lemma_a);
        worst_b = std::max(worst_b, res.lemma_b);
        worst_c = std::max(worst_c, res.lemma_c);
        t.rows.push_back({double(i), lie, res.lemma_a, res.lemma_b, res.lemma_c});
    }
    rep.tables.push_back(std::move(t));
    rep.check_le("lie_derivative_defect", worst_lie, 1e-8, "criterion 7 (scaled by ||g||_2)");
    rep.check_le("lemma_char_a", worst_a, 1e-6, "criterion 7");
    rep.check_le("lemma_char_b", worst_b, 1e-6, "criterion 7");
    rep.check_le("lemma_char_c", worst_c, 1e-6, "criterion 7");

    // Trivial control: X = T is a contact field with zero residuals (b), (c).
    const FrameVectorField reeb{ScalarField(b.grid, 1.0), ScalarField(b.grid),
                                ScalarField(b.grid)};
    const auto res_t = check_contact_field(b.lab, reeb);
    rep.check_le("reeb_control", std::max(res_t.lemma_b, res_t.lemma_c), 1e-12,
                 "X = T control");
}

// Criterion 8: the frozen-Jacobian solver on the reference fixture, with
// the exact quarter-turn symmetry as a control.
inline void suite_solve_psi(SuiteReport& rep, const ExperimentConfig& cfg) {
    detail::Bundle b(16, JChoice::standard(), detail::cg_config(cfg));
    ScalarField g = ScalarField::sample(
        b.grid, [](double x, double, double) { return 0.05 * std::sin(x); });

    SolveReport sr;
    solve_psi(b.lab, GeneratingFunction(g, cfg.smallness), sr, 1e-9, 20);
    CsvTable hist{"defect_history", {"iteration", "defect"}, {}};
    for (std::size_t i = 0; i < sr.defect_history.size(); ++i)
        hist.rows.push_back({double(i), sr.defect_history[i]});
    rep.tables.push_back(std::move(hist));
    rep.check_le("solver_defect", sr.final_defect, 1e-9, "criterion 8");
    rep.check_le("solver_iterations", double(sr.iterations), 20, "criterion 8");

    // Contraction once the defect enters the resolved window (1e-5, 1e-3):
    // below that the band-cap truncation floor dominates the rate.
    double worst_rate = 0.0;
    for (std::size_t i = 0; i + 1 < sr.defect_history.size(); ++i) {
        const double d = sr.defect_history[i];
        if (d < 1e-3 && d > 1e-5)
            worst_rate = std::max(worst_rate, sr.defect_history[i + 1] / d);
    }
    rep.check_le("contraction_rate", worst_rate, 0.5, "defect window (1e-5, 1e-3)");

    // The quarter-turn symmetry F_c, c = pi/2, is exactly contact: its
    // pullback of eta projects to zero through the same code path.
    const CoordOneForm feta = pullback_quarter_turn(b.model.eta(), QuarterTurn{1});
    rep.check_le("symmetry_control", rumin_norm(b.rumin.pi_Q(feta)), 1e-10, "criterion 8");
}

// Criteria 9-10 (and the criterion-15 frequency sweep): quadratic residual
// scaling and the two-term difference estimate.
inline void suite_quadratic_scaling(SuiteReport& rep, const ExperimentConfig& cfg) {
    detail::Bundle b(16, JChoice::standard(), detail::cg_config(cfg));
    const ContactModel& m = b.model;
    ScalarField shape = ScalarField::sample(
        b.grid, [](double x, double, double) { return std::sin(x); });

    // Criterion 9: slope of ||Psi(X_tg) - X_tg||_s vs t equals 2 for
    // s in {0, 1, 2}, t in 0.08 * {1, 1/2, 1/4, 1/8}.
    const std::vector<int> s_list{0, 1, 2};
    const std::vector<double> t_list{0.08, 0.04, 0.02, 0.01};
    const auto scal = quadratic_scaling_experiment(b.lab, shape, s_list, t_list, cfg.tol_solver);
    CsvTable st{"residual_scaling", {"t", "res_s0", "res_s1", "res_s2"}, {}};
    for (const auto& row : scal.rows)
        st.rows.push_back({row.t, row.residual_by_s[0], row.residual_by_s[1],
                           row.residual_by_s[2]});
    rep.tables.push_back(std::move(st));
    if (!scal.all_converged) rep.record_failure("quadratic_slope", "solver non-convergence");
    for (std::size_t si = 0; si < s_list.size(); ++si)
        rep.check_near("quadratic_slope_s" + std::to_string(s_list[si]), scal.slope_by_s[si],
                       2.0, 0.1, "criterion 9");

    // Criterion 10: difference-estimate ratio stable within +-30% across
    // three scales (g2 = 2 g1).
    // The solver's defect floor at N = 16 sits near 1e-9; request no more.
    const double psi_tol = std::max(cfg.tol_solver, 1e-9);
    const std::vector<double> dt{0.04, 0.02, 0.01};
    const auto rows = difference_scaling_experiment(b.lab, shape, shape * 2.0, 2, dt, psi_tol);
    CsvTable dtab{"difference_ratio", {"t", "lhs", "rhs", "ratio"}, {}};
    double rmin = 1e300, rmax = 0.0;
    bool finite = true;
    for (const auto& r : rows) {
        dtab.rows.push_back({r.t, r.lhs, r.rhs, r.ratio});
        if (!std::isfinite(r.ratio) || r.ratio <= 0.0) finite = false;
        rmin = std::min(rmin, r.ratio);
        rmax = std::max(rmax, r.ratio);
    }
    rep.tables.push_back(std::move(dtab));
    if (!finite) rep.record_failure("difference_ratio_stability", "non-finite ratio");
    else {
        const double mean = 0.5 * (rmin + rmax);
        rep.check_le("difference_ratio_stability", std::max(rmax - mean, mean - rmin),
                     0.3 * mean, "criterion 10, deviation from mid-range vs 30% of it");
    }

    // Criterion 15 companion: frequency sweep of the mixed-norm ratio
    // ||Psi(X) - X||_s / (||X||_s ||X||_{s-1}) over mode index m at s = 2.
    // The quadratic self-interaction of mode m lands at frequency 2m, which
    // for m = 4 is the N = 16 Nyquist plane; the sweep runs at N = 32 so
    // every interaction stays resolved. Recorded ratios are O(1e-2), so a
    // loose solver tolerance is accurate enough.
    detail::Bundle b32(32, JChoice::standard(), detail::cg_config(cfg));
    const ContactModel& m32 = *b32.lab.model;
    CsvTable sweep{"frequency_sweep", {"m", "ratio"}, {}};
    double smin = 1e300, smax = 0.0;
    bool sweep_ok = true;
    const double t0 = 0.04;
    for (int mm = 1; mm <= 4; ++mm) {
        ScalarField gm = ScalarField::sample(
            b32.grid, [mm](double x, double, double) { return std::sin(mm * x); });
        SolveReport sr;
        const FrameVectorField x0 = contact_field_from_g(b32.lab, gm * t0);
        const FrameVectorField x =
            solve_psi(b32.lab, GeneratingFunction(gm * t0, 0.2), sr, 1e-7);
        if (!sr.converged) sweep_ok = false;
        const double ratio =
            fs_norm(m32, x - x0, 2) / (fs_norm(m32, x0, 2) * fs_norm(m32, x0, 1));
        if (!std::isfinite(ratio)) sweep_ok = false;
        smin = std::min(smin, ratio);
        smax = std::max(smax, ratio);
        sweep.rows.push_back({double(mm), ratio});
    }
    rep.tables.push_back(std::move(sweep));
    if (!sweep_ok) rep.record_failure("mixed_norm_sweep", "non-finite ratio or non-convergence");
    else rep.check_le("mixed_norm_sweep", smax / smin, 3.0, "criterion 15, max/min over m");
}

// Criterion 11: pullback Taylor remainder and the anisotropic exponential
// map against its quadratic coefficient.
inline void suite_exp_taylor(SuiteReport& rep, const ExperimentConfig& cfg) {
    // Flat-metric Quad_eta slope: the remainder of F_tX^* eta past the Lie
    // derivative term is quadratic in t.
    detail::Bundle b(16, JChoice::standard(), detail::cg_config(cfg));
    const ContactModel& m = b.model;
    ScalarField g = random_band_limited(b.grid, cfg.seed + 800, 2, 0.1);
    const FrameVectorField x = contact_field_from_g(b.lab, g);
    const std::vector<double> ts{1.0, 0.5, 0.25, 0.125};
    std::vector<double> quad_norm, proj_norm;
    CsvTable qt{"quad_remainder", {"t", "quad_l2", "quad_piq_fs1"}, {}};
    for (double t : ts) {
        const FrameVectorField xt = t * x;
        const CoordOneForm q = quad_remainder(m, xt, m.eta(), b.lab.geo);
        quad_norm.push_back(detail::l2_norm_coord_form(q));
        proj_norm.push_back(detail::fs_norm_form(m, b.rumin.pi_Q(q), 1));
        qt.rows.push_back({t, quad_norm.back(), proj_norm.back()});
    }
    rep.tables.push_back(std::move(qt));
    rep.check_near("quad_remainder_slope", detail::loglog_slope(ts, quad_norm), 2.0, 0.1,
                   "criterion 11");
    rep.check_near("quad_projected_slope", detail::loglog_slope(ts, proj_norm), 2.0, 0.2,
                   "pi_Q-projected remainder, FS s=1");

    // Anisotropic exponential map: remainder past the quadratic coefficient
    // B is cubic, and B itself matches exp(x, X) - x - X at small |X|.
    ContactModel ma(Grid{8}, JChoice::aniso(cfg.j_eps));
    GeodesicConfig geo;
    std::mt19937_64 rng(cfg.seed + 900);
    std::uniform_real_distribution<double> upos(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> udir(-1.0, 1.0);
    double worst_b = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::array<double, 3> x0{upos(rng), upos(rng), upos(rng)};
        std::array<double, 3> v{udir(rng), udir(rng), udir(rng)};
        const double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        for (auto& c : v) c *= 0.02 / nv;
        const auto e = exp_map(ma, x0, v, geo);
        const auto bb = exp_quadratic_coeff(ma, x0, v, geo);
        double err = 0.0;
        for (int c = 0; c < 3; ++c)
            err = std::max(err, std::abs(e[c] - x0[c] - v[c] - bb[c]));
        worst_b = std::max(worst_b, err);
    }
    rep.check_le("b_coefficient_consistency", worst_b, 1e-6, "criterion 11, |X| = 0.02");

    // The integral coefficient B(x, X) reproduces the remainder exactly;
    // against the frozen quadratic coefficient B(x, 0) = -Gamma(x)/2 the
    // leftover is cubic in t.
    const std::array<double, 3> x0{1.0, 2.0, 0.7};
    const std::array<double, 3> v{0.09, -0.05, 0.07};
    const auto gam = ma.christoffels_at(x0[2]);
    std::array<double, 3> b0{};
    for (int k = 0; k < 3; ++k) {
        double acc = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) acc += gam[k][a][c] * v[a] * v[c];
        b0[k] = -0.5 * acc;
    }
    std::vector<double> rem;
    for (double t : ts) {
        const auto e = exp_map(ma, x0, scale_vec(v, t), geo);
        double err = 0.0;
        for (int c = 0; c < 3; ++c)
            err = std::max(err, std::abs(e[c] - x0[c] - t * v[c] - t * t * b0[c]));
        rem.push_back(err);
    }
    rep.check_near("exp_remainder_slope", detail::loglog_slope(ts, rem), 3.0, 0.2,
                   "criterion 11, against the frozen coefficient");
}

// Criterion 12: group operations on solved contact maps.
inline void suite_group_ops(SuiteReport& rep, const ExperimentConfig& cfg) {
    // Composition and inversion resample displacement fields whose spectra
    // outgrow the N = 16 band cap (defects ~1e-6 there); at N = 32 the
    // tails are resolved and the criterion budget holds.
    detail::Bundle b(32, JChoice::standard(), detail::cg_config(cfg));
    GeneratingFunction g1(random_band_limited(b.grid, cfg.seed + 1100, 2, 0.02), cfg.smallness);
    GeneratingFunction g2(random_band_limited(b.grid, cfg.seed + 1101, 2, 0.02), cfg.smallness);
    const auto grp = group_closure_experiment(b.lab, g1, g2, 1e-8);
    rep.check_le("defect_f1", grp.defect_f1, 5e-8, "solver fixture");
    rep.check_le("defect_f2", grp.defect_f2, 5e-8, "solver fixture");
    rep.check_le("defect_composition", grp.defect_composition, 1e-7, "criterion 12");
    rep.check_le("defect_inverse", grp.defect_inverse, 1e-7, "criterion 12");
    rep.check_le("roundtrip_sup", grp.roundtrip_sup, 1e-7, "criterion 12");
    rep.check_le("defect_symmetry_mix", grp.defect_symmetry_mix, 2e-7,
                 "quarter-turn composed with solved map");

    // Pullback functoriality (G o F)* = F* o G* on small analytic maps.
    ScalarField u1 = random_band_limited(b.grid, cfg.seed + 1200, 1, 0.01);
    ScalarField u2 = random_band_limited(b.grid, cfg.seed + 1201, 1, 0.01);
    const GridMap f = flow_from_field(b.model, contact_field_from_g(b.lab, u1), b.lab.geo);
    const GridMap h = flow_from_field(b.model, contact_field_from_g(b.lab, u2), b.lab.geo);
    const CoordOneForm lhs = pullback(compose(f, h), b.model.eta());
    const CoordOneForm rhs = pullback(f, pullback(h, b.model.eta()));
    const double rel = detail::l2_norm_coord_form(lhs - rhs) /
                       detail::l2_norm_coord_form(b.model.eta());
    rep.check_le("pullback_functoriality", rel, 1e-8, "criterion 12");
}

// Criterion 13: derivative of composition along the solved contact path.
inline void suite_comp_derivative(SuiteReport& rep, const ExperimentConfig& cfg) {
    detail::Bundle b(16, JChoice::standard(), detail::cg_config(cfg));
    ScalarField u = ScalarField::sample(
        b.grid, [](double x, double, double) { return std::sin(x); });
    ScalarField h = ScalarField::sample(
        b.grid, [](double, double y, double) { return 0.05 * std::sin(y); });
    const std::vector<double> ts{1.0, 0.5, 0.25, 0.125};
    const auto rr = composition_derivative_check(b.lab, u, h, ts, cfg.tol_solver);
    CsvTable t{"difference_quotient", {"t", "error"}, {}};
    for (std::size_t i = 0; i < ts.size(); ++i) t.rows.push_back({ts[i], rr.error[i]});
    rep.tables.push_back(std::move(t));
    rep.check_ge("composition_derivative_slope", rr.slope, 0.9, "criterion 13");
}

// Criteria 14-15: Folland-Stein norm integrity and recorded stability
// ratios.
inline void suite_norms_report(SuiteReport& rep, const ExperimentConfig& cfg) {
    // Criterion 14: refinement invariance of band-limited norms. The random
    // band fixture is grid-independent, so the same seed yields the same
    // trigonometric polynomial on both grids.
    ContactModel m8{Grid{8}}, m16{Grid{16}}, m32{Grid{32}};
    double worst_refine = 0.0;
    {
        ScalarField fa8 = random_band_limited(Grid{8}, cfg.seed + 1300, 2, 1.0);
        ScalarField fa16 = random_band_limited(Grid{16}, cfg.seed + 1300, 2, 1.0);
        worst_refine = std::max(worst_refine,
                                detail::drift(fs_norm(m8, fa8, 1), fs_norm(m16, fa16, 1)));
        ScalarField fb16 = random_band_limited(Grid{16}, cfg.seed + 1301, 3, 1.0);
        ScalarField fb32 = random_band_limited(Grid{32}, cfg.seed + 1301, 3, 1.0);
        for (int s = 0; s <= cfg.s_max; ++s)
            worst_refine = std::max(
                worst_refine, detail::drift(fs_norm(m16, fb16, s), fs_norm(m32, fb32, s)));
    }
    rep.check_le("refinement_invariance", worst_refine, 1e-9, "criterion 14");

    // Criterion 14: isometry invariance under the exact quarter-turn.
    double worst_iso = 0.0;
    {
        ScalarField f = random_band_limited(Grid{16}, cfg.seed + 1302, 3, 1.0);
        ScalarField fc = compose_with_quarter_turn(f, QuarterTurn{1});
        for (int s = 0; s <= cfg.s_max; ++s)
            worst_iso = std::max(worst_iso, detail::drift(fs_norm(m16, f, s),
                                                          fs_norm(m16, fc, s)));
    }
    rep.check_le("isometry_invariance", worst_iso, 1e-8, "criterion 14");

    // Criterion 14: recursive identity
    // ||f||_s^2 = ||f||_0^2 + ||e1 f||_{s-1}^2 + ||e2 f||_{s-1}^2.
    double worst_rec = 0.0;
    for (int i = 0; i < 5; ++i) {
        ScalarField f = random_band_limited(Grid{16}, cfg.seed + 1310 + i, 2, 1.0);
        for (int s = 1; s <= cfg.s_max; ++s) {
            const double lhs = fs_norm_sq(m16, f, s);
            const double rhs = fs_norm_sq(m16, f, 0) +
                               fs_norm_sq(m16, m16.apply_horizontal(f, 1), s - 1) +
                               fs_norm_sq(m16, m16.apply_horizontal(f, 2), s - 1);
            worst_rec = std::max(worst_rec, std::abs(lhs - rhs) / lhs);
        }
    }
    rep.check_le("recursive_identity", worst_rec, 1e-10, "criterion 14");

    // Criterion 15: recorded ratios at two band limits; fail only on
    // non-finite values or >30% drift between the bands. Random-sample max
    // ratios shift systematically with the band (the denominators gain
    // k^3-weighted modes), so the drift checks compare band-truncations of
    // fixed analytic profiles, whose tails are resolved at both bands; the
    // random-sample reports are recorded alongside.
    CsvTable rt{"stability_ratios", {"band", "sobolev", "algebra", "division",
                                     "hypoelliptic", "green_gain", "sobolev_random",
                                     "algebra_random", "division_random"}, {}};
    const int bands[2] = {2, 3};
    double vals[2][5];
    bool finite = true;
    detail::Bundle b16(16, JChoice::standard(), detail::cg_config(cfg));
    std::vector<ScalarField> profiles;
    {
        std::mt19937_64 rng(cfg.seed + 1500);
        std::uniform_real_distribution<double> amp(0.2, 0.5), phase(0.0, 2.0 * std::numbers::pi);
        for (int p = 0; p < 3; ++p) {
            const double a = amp(rng), bb = amp(rng), c = amp(rng);
            const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
            profiles.push_back(ScalarField::sample(
                Grid{16}, [=](double x, double y, double z) {
                    return std::exp(a * std::cos(x + p1) + bb * std::sin(y + p2) +
                                    c * std::cos(z + p3));
                }));
        }
    }
    for (int bi = 0; bi < 2; ++bi) {
        const int band = bands[bi];
        double sob = 0.0, alg = 0.0, div = 0.0;
        for (std::size_t p = 0; p < profiles.size(); ++p) {
            ScalarField f = detail::truncate_band(profiles[p], band);
            ScalarField g2 = detail::truncate_band(profiles[(p + 1) % profiles.size()], band);
            sob = std::max(sob, sup_norm(f) / fs_norm(m16, f, 3));
            alg = std::max(alg, fs_norm(m16, multiply(f, g2), 3) /
                                    (fs_norm(m16, f, 3) * fs_norm(m16, g2, 3)));
            ScalarField inv(Grid{16});
            for (std::size_t q = 0; q < inv.values().size(); ++q)
                inv.values()[q] = 1.0 / f.values()[q];
            div = std::max(div, fs_norm(m16, inv, 3) / std::pow(1.0 + fs_norm(m16, f, 3), 3));
        }
        double hyp = 0.0, grn = 0.0;
        for (int i = 0; i < 5; ++i) {
            ScalarField u = random_band_limited(Grid{16}, cfg.seed + 1430 + i, band, 1.0);
            const RuminForm lu = b16.rumin.laplacian(RuminForm(0, {u}));
            hyp = std::max(hyp, fs_norm(m16, u, 4) /
                                    (fs_norm(m16, lu.comp(0), 2) + fs_norm(m16, u, 0)));
        }
        for (int i = 0; i < 3; ++i) {
            ScalarField u = random_band_limited(Grid{16}, cfg.seed + 1440 + i, band, 1.0);
            const RuminForm gu = b16.hodge[0].G_Q(RuminForm(0, {u}));
            grn = std::max(grn, fs_norm(m16, gu.comp(0), 4) / fs_norm(m16, u, 2));
        }
        const auto sobr = sobolev_ratio_report(m16, 5, band, cfg.seed + 1400);
        const auto algr = algebra_constant_report(m16, 5, band, 3, 3, cfg.seed + 1410);
        const auto divr = division_report(m16, 5, band, 3, cfg.seed + 1420);
        vals[bi][0] = sob;
        vals[bi][1] = alg;
        vals[bi][2] = div;
        vals[bi][3] = hyp;
        vals[bi][4] = grn;
        finite = finite && sobr.all_finite && algr.all_finite && divr.all_finite;
        for (int j = 0; j < 5; ++j) finite = finite && std::isfinite(vals[bi][j]);
        rt.rows.push_back({double(band), vals[bi][0], vals[bi][1], vals[bi][2], vals[bi][3],
                           vals[bi][4], sobr.max_ratio, algr.max_ratio, divr.max_ratio});
    }
    rep.tables.push_back(std::move(rt));
    const char* names[5] = {"sobolev", "algebra", "division", "hypoelliptic", "green_gain"};
    if (!finite) rep.record_failure("stability_ratios", "non-finite ratio");
    for (int j = 0; j < 5; ++j)
        rep.check_le(std::string("ratio_drift_") + names[j],
                     detail::drift(vals[0][j], vals[1][j]), 0.3, "criterion 15");
}

// ---- runner -------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "verify-complex", "verify-hodge", "contact-field",   "solve-psi",
        "quadratic-scaling", "exp-taylor", "group-ops",      "comp-derivative",
        "norms-report"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const ExperimentConfig& cfg) {
    cfg.validate();
    SuiteReport rep;
    rep.suite = name;
    rep.config_echo = cfg.echo();
    const auto start = std::chrono::steady_clock::now();
    try {
        if (name == "verify-complex") suite_verify_complex(rep, cfg);
        else if (name == "verify-hodge") suite_verify_hodge(rep, cfg);
        else if (name == "contact-field") suite_contact_field(rep, cfg);
        else if (name == "solve-psi") suite_solve_psi(rep, cfg);
        else if (name == "quadratic-scaling") suite_quadratic_scaling(rep, cfg);
        else if (name == "exp-taylor") suite_exp_taylor(rep, cfg);
        else if (name == "group-ops") suite_group_ops(rep, cfg);
        else if (name == "comp-derivative") suite_comp_derivative(rep, cfg);
        else if (name == "norms-report") suite_norms_report(rep, cfg);
        else throw ConfigError("unknown suite: " + name);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        rep.record_failure("suite_error", e.what());
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.write(cfg.out_dir);
    return rep;
}

inline std::vector<SuiteReport> run_suites(const std::string& name,
                                           const ExperimentConfig& cfg) {
    std::vector<SuiteReport> out;
    if (name == "all") {
        for (const auto& s : suite_names()) out.push_back(run_suite(s, cfg));
    } else {
        out.push_back(run_suite(name, cfg));
    }
    return out;
}

}  // namespace ctlab
