#pragma once

// Anisotropic Folland-Stein inner products and norms: L^2 sums of iterated
// horizontal derivatives e_{i_1} ... e_{i_t} f over all words of length <= s.
// Reeb derivatives count as contact order 2 via D_A bookkeeping.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctlab/contact_model.hpp"
#include "ctlab/grid.hpp"

namespace ctlab {

inline constexpr int fs_s_max = 6;

// Multi-index over the horizontal frame letters {1, 2}.
struct WordIndex {
    std::vector<int> letters;
    int order() const { return static_cast<int>(letters.size()); }
};

// e1^a1 e2^a2 T^a3 applied in that order; contact order a1 + a2 + 2 a3.
struct DAIndex {
    int a1 = 0, a2 = 0, a3 = 0;
    int contact_order() const { return a1 + a2 + 2 * a3; }
};

inline ScalarField word_derivative(const ContactModel& m, const ScalarField& f,
                                   const WordIndex& w) {
    if (w.order() > fs_s_max) throw std::invalid_argument("word_derivative: |I| > s_max");
    ScalarField out = f;
    // X_I f = X_{i_1} ... X_{i_t} f: the rightmost letter acts first.
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out = m.apply_horizontal(out, *it);
    return out;
}

inline ScalarField da_derivative(const ContactModel& m, const ScalarField& f, const DAIndex& a) {
    ScalarField out = f;
    for (int t = 0; t < a.a3; ++t) out = m.apply_reeb(out);
    for (int t = 0; t < a.a2; ++t) out = m.apply_horizontal(out, 2);
    for (int t = 0; t < a.a1; ++t) out = m.apply_horizontal(out, 1);
    return out;
}

namespace detail {

// All word derivatives of f up to length s, level by level. Level t holds
// 2^t fields, children ordered (e1 w, e2 w).
inline std::vector<std::vector<ScalarField>> derivative_tree(const ContactModel& m,
                                                             const ScalarField& f, int s) {
    std::vector<std::vector<ScalarField>> levels;
    levels.push_back({f});
    for (int t = 1; t <= s; ++t) {
        std::vector<ScalarField> next;
        next.reserve(levels.back().size() * 2);
        for (const auto& g : levels.back()) {
            next.push_back(m.apply_horizontal(g, 1));
            next.push_back(m.apply_horizontal(g, 2));
        }
        levels.push_back(std::move(next));
    }
    return levels;
}

}  // namespace detail

inline double fs_inner(const ContactModel& m, const ScalarField& f, const ScalarField& g,
                       int s) {
    if (s < 0 || s > fs_s_max) throw std::invalid_argument("fs_inner: s out of range");
    const auto tf = detail::derivative_tree(m, f, s);
    const auto tg = detail::derivative_tree(m, g, s);
    double acc = 0.0;
    for (int t = 0; t <= s; ++t)
        for (std::size_t w = 0; w < tf[t].size(); ++w) acc += l2_inner(tf[t][w], tg[t][w]);
    return acc;
}

inline double fs_norm(const ContactModel& m, const ScalarField& f, int s) {
    return std::sqrt(std::max(0.0, fs_inner(m, f, f, s)));
}

inline double fs_norm_sq(const ContactModel& m, const ScalarField& f, int s) {
    return fs_inner(m, f, f, s);
}

// Componentwise norms for multi-component objects (global-frame policy).
inline double fs_norm(const ContactModel& m, const FrameVectorField& x, int s) {
    return std::sqrt(std::max(0.0, fs_norm_sq(m, x.f0, s) + fs_norm_sq(m, x.f1, s) +
                                       fs_norm_sq(m, x.f2, s)));
}

inline double fs_norm(const ContactModel& m, const HorizontalOneForm& a, int s) {
    return std::sqrt(std::max(0.0, fs_norm_sq(m, a.c1, s) + fs_norm_sq(m, a.c2, s)));
}

inline double sup_norm(const ScalarField& f) { return f.max_abs(); }

// --- empirical constant reports ----------------------------------------

struct RatioSample {
    int sample_id = 0;
    int band = 0;
    double ratio = 0.0;
};

struct RatioReport {
    std::vector<RatioSample> samples;
    double max_ratio = 0.0;
    bool all_finite = true;

    void add(int id, int band, double r) {
        samples.push_back({id, band, r});
        if (!std::isfinite(r)) all_finite = false;
        max_ratio = std::max(max_ratio, r);
    }
};

// max over samples of sup|f| / ||f||_3 (Sobolev-type embedding witness).
inline RatioReport sobolev_ratio_report(const ContactModel& m, int n_samples, int band,
                                        std::uint64_t seed, int s = 3) {
    RatioReport rep;
    for (int i = 0; i < n_samples; ++i) {
        ScalarField f = random_band_limited(m.grid(), seed + i, band, 1.0);
        rep.add(i, band, sup_norm(f) / fs_norm(m, f, s));
    }
    return rep;
}

// max over sample pairs of ||fg||_k / (||f||_s ||g||_k).
inline RatioReport algebra_constant_report(const ContactModel& m, int n_samples, int band,
                                           int s, int k, std::uint64_t seed) {
    RatioReport rep;
    for (int i = 0; i < n_samples; ++i) {
        ScalarField f = random_band_limited(m.grid(), seed + 2 * i, band, 1.0);
        ScalarField g = random_band_limited(m.grid(), seed + 2 * i + 1, band, 1.0);
        const double r = fs_norm(m, multiply(f, g), k) / (fs_norm(m, f, s) * fs_norm(m, g, k));
        rep.add(i, band, r);
    }
    return rep;
}

// max over samples of ||1/f||_s / (1 + ||f||_s)^s for f = 1 + small field.
inline RatioReport division_report(const ContactModel& m, int n_samples, int band, int s,
                                   std::uint64_t seed) {
    RatioReport rep;
    for (int i = 0; i < n_samples; ++i) {
        ScalarField f = random_band_limited(m.grid(), seed + i, band, 0.4);
        f += ScalarField(m.grid(), 1.0);
        double mn = 1e300;
        for (double v : f.values()) mn = std::min(mn, v);
        if (mn < 0.1) throw std::invalid_argument("division_report: min |f| < 0.1");
        ScalarField inv(m.grid());
        for (std::size_t q = 0; q < inv.values().size(); ++q)
            inv.values()[q] = 1.0 / f.values()[q];
        const double r = fs_norm(m, inv, s) / std::pow(1.0 + fs_norm(m, f, s), s);
        rep.add(i, band, r);
    }
    return rep;
}

}  // namespace ctlab
