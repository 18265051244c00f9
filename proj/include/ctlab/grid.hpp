#pragma once

// Periodic pseudospectral scalar fields on the 3-torus [0,2pi)^3.
// Differentiation and quadrature are exact (to rounding) for band-limited
// data; pointwise products are dealiased by 3/2 zero padding.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlab/fft.hpp"

namespace ctlab {

using fft::cplx;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class Axis { x = 0, y = 1, z = 2 };

struct Grid {
    int n = 0;  // points per axis, power of two, >= 8

    explicit Grid(int n_points) : n(n_points) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 8");
    }

    double spacing() const { return two_pi / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    double coord(int i) const { return two_pi * i / n; }
    // signed frequency of slot i in {-n/2, ..., n/2-1}
    int freq(int i) const { return i < n / 2 ? i : i - n; }
    // slot of signed frequency f
    int slot(int f) const { return f >= 0 ? f : f + n; }

    bool operator==(const Grid& o) const { return n == o.n; }
};

class ScalarField {
  public:
    ScalarField(Grid grid, double fill = 0.0) : grid_(grid), v_(grid.size(), fill) {}
    ScalarField(Grid grid, std::vector<double> values) : grid_(grid), v_(std::move(values)) {
        if (v_.size() != grid_.size()) throw std::invalid_argument("ScalarField: size mismatch");
    }

    template <class F>
    static ScalarField sample(Grid g, F&& f) {
        ScalarField out(g);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k)
                    out.v_[g.index(i, j, k)] = f(g.coord(i), g.coord(j), g.coord(k));
        return out;
    }

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }
    double operator()(int i, int j, int k) const { return v_[grid_.index(i, j, k)]; }
    double& at(int i, int j, int k) { return v_[grid_.index(i, j, k)]; }

    ScalarField& operator+=(const ScalarField& o) {
        for (std::size_t m = 0; m < v_.size(); ++m) v_[m] += o.v_[m];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        for (std::size_t m = 0; m < v_.size(); ++m) v_[m] -= o.v_[m];
        return *this;
    }
    ScalarField& operator*=(double a) {
        for (auto& x : v_) x *= a;
        return *this;
    }
    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, double c) { return a *= c; }
    friend ScalarField operator*(double c, ScalarField a) { return a *= c; }
    friend ScalarField operator-(ScalarField a) { return a *= -1.0; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }
    bool finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

  private:
    Grid grid_;
    std::vector<double> v_;
};

// --- spectral kernel ---------------------------------------------------

inline std::vector<cplx> to_spectrum(const ScalarField& f) {
    std::vector<cplx> s(f.values().begin(), f.values().end());
    fft::forward(f.grid().n, s);
    return s;
}

inline ScalarField from_spectrum(const Grid& g, std::vector<cplx> s) {
    fft::backward(g.n, s);
    ScalarField out(g);
    for (std::size_t m = 0; m < s.size(); ++m) out.values()[m] = s[m].real();
    return out;
}

inline ScalarField partial_derivative(const ScalarField& f, Axis axis) {
    const Grid& g = f.grid();
    auto s = to_spectrum(f);
    const int a = static_cast<int>(axis);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const int fr[3] = {g.freq(i), g.freq(j), g.freq(k)};
                int ka = fr[a];
                if (ka == -g.n / 2) ka = 0;  // Nyquist mode has no consistent derivative
                s[g.index(i, j, k)] *= cplx(0.0, static_cast<double>(ka));
            }
    return from_spectrum(g, s);
}

namespace detail {

// Embed an N-spectrum into an M-grid spectrum (M > N), splitting Nyquist
// slots to preserve conjugate symmetry.
inline std::vector<cplx> pad_spectrum(const Grid& g, const std::vector<cplx>& s, int m) {
    std::vector<cplx> out(static_cast<std::size_t>(m) * m * m, cplx(0.0));
    auto slot_m = [m](int f) { return f >= 0 ? f : f + m; };
    const int half = g.n / 2;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                cplx c = s[g.index(i, j, k)];
                if (c == cplx(0.0)) continue;
                const int f1 = g.freq(i), f2 = g.freq(j), f3 = g.freq(k);
                // Distribute each Nyquist frequency (-N/2) evenly over +-N/2.
                std::array<std::pair<int, double>, 2> e1{{{f1, 1.0}, {0, 0.0}}};
                std::array<std::pair<int, double>, 2> e2{{{f2, 1.0}, {0, 0.0}}};
                std::array<std::pair<int, double>, 2> e3{{{f3, 1.0}, {0, 0.0}}};
                if (f1 == -half) e1 = {{{-half, 0.5}, {half, 0.5}}};
                if (f2 == -half) e2 = {{{-half, 0.5}, {half, 0.5}}};
                if (f3 == -half) e3 = {{{-half, 0.5}, {half, 0.5}}};
                for (auto [a1, w1] : e1)
                    for (auto [a2, w2] : e2)
                        for (auto [a3, w3] : e3) {
                            const double w = w1 * w2 * w3;
                            if (w == 0.0) continue;
                            out[(static_cast<std::size_t>(slot_m(a1)) * m + slot_m(a2)) * m +
                                slot_m(a3)] += w * c;
                        }
            }
    return out;
}

// Restrict an M-grid spectrum back to the N grid, folding +-N/2 into the
// single -N/2 slot.
inline std::vector<cplx> truncate_spectrum(const Grid& g, const std::vector<cplx>& s, int m) {
    std::vector<cplx> out(g.size(), cplx(0.0));
    auto slot_m = [m](int f) { return f >= 0 ? f : f + m; };
    const int half = g.n / 2;
    for (int f1 = -half; f1 <= half; ++f1)
        for (int f2 = -half; f2 <= half; ++f2)
            for (int f3 = -half; f3 <= half; ++f3) {
                const cplx c = s[(static_cast<std::size_t>(slot_m(f1)) * m + slot_m(f2)) * m +
                                 slot_m(f3)];
                const int a1 = (f1 == half) ? -half : f1;
                const int a2 = (f2 == half) ? -half : f2;
                const int a3 = (f3 == half) ? -half : f3;
                out[g.index(g.slot(a1), g.slot(a2), g.slot(a3))] += c;
            }
    return out;
}

}  // namespace detail

// Dealiased pointwise product: zero-pad to 3N/2, multiply, truncate.
inline ScalarField multiply(const ScalarField& f, const ScalarField& g) {
    const Grid& gr = f.grid();
    const int m = 3 * gr.n / 2;
    auto sf = detail::pad_spectrum(gr, to_spectrum(f), m);
    auto sg = detail::pad_spectrum(gr, to_spectrum(g), m);
    fft::backward(m, sf);
    fft::backward(m, sg);
    for (std::size_t q = 0; q < sf.size(); ++q) sf[q] = sf[q].real() * sg[q].real();
    fft::forward(m, sf);
    return from_spectrum(gr, detail::truncate_spectrum(gr, sf, m));
}

namespace detail {

// Multiply a spectrum by cos or sin of one coordinate, as a +-1 mode shift.
// Matches the padded dealiased product bit-for-bit up to rounding: Nyquist
// sources split over +-N/2, out-of-range targets dropped, +N/2 folded back
// into the -N/2 slot.
inline std::vector<cplx> spec_mul_trig(const Grid& g, const std::vector<cplx>& s, Axis axis,
                                       bool is_sin) {
    std::vector<cplx> out(g.size(), cplx(0.0));
    const int half = g.n / 2;
    const int a = static_cast<int>(axis);
    const cplx wplus = is_sin ? cplx(0.0, -0.5) : cplx(0.5, 0.0);
    const cplx wminus = is_sin ? cplx(0.0, 0.5) : cplx(0.5, 0.0);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const cplx c = s[g.index(i, j, k)];
                if (c == cplx(0.0)) continue;
                int fr[3] = {g.freq(i), g.freq(j), g.freq(k)};
                std::array<std::pair<int, double>, 2> split{{{fr[a], 1.0}, {0, 0.0}}};
                if (fr[a] == -half) split = {{{-half, 0.5}, {half, 0.5}}};
                for (auto [fa, w] : split) {
                    if (w == 0.0) continue;
                    for (int dir = -1; dir <= 1; dir += 2) {
                        const int ft = fa + dir;
                        if (ft > half || ft < -half) continue;
                        int tgt[3] = {fr[0], fr[1], fr[2]};
                        tgt[a] = (ft == half) ? -half : ft;
                        const cplx wc = (dir == 1 ? wplus : wminus) * w;
                        out[g.index(g.slot(tgt[0]), g.slot(tgt[1]), g.slot(tgt[2]))] += wc * c;
                    }
                }
            }
    return out;
}

}  // namespace detail

inline ScalarField mul_cos_axis(const ScalarField& f, Axis axis) {
    return from_spectrum(f.grid(), detail::spec_mul_trig(f.grid(), to_spectrum(f), axis, false));
}

inline ScalarField mul_sin_axis(const ScalarField& f, Axis axis) {
    return from_spectrum(f.grid(), detail::spec_mul_trig(f.grid(), to_spectrum(f), axis, true));
}

inline ScalarField mul_cos_z(const ScalarField& f) { return mul_cos_axis(f, Axis::z); }
inline ScalarField mul_sin_z(const ScalarField& f) { return mul_sin_axis(f, Axis::z); }

// Projection onto the resolved band |k_i| <= N/2 - 1: zeroes the Nyquist
// planes. Operator outputs are kept in this subspace so that compositions
// (complex identities, Laplacians, adjoints) act consistently on it.
inline ScalarField band_project(const ScalarField& f) {
    const Grid& g = f.grid();
    auto s = to_spectrum(f);
    const int half = g.n / 2;
    bool touched = false;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                if (g.freq(i) == -half || g.freq(j) == -half || g.freq(k) == -half) {
                    if (s[g.index(i, j, k)] != cplx(0.0)) touched = true;
                    s[g.index(i, j, k)] = 0.0;
                }
    if (!touched) return f;
    return from_spectrum(g, std::move(s));
}

inline double integrate(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.values()) s += x;
    const double h = f.grid().spacing();
    return s * h * h * h;
}

inline double l2_inner(const ScalarField& f, const ScalarField& g) {
    double s = 0.0;
    const auto& a = f.values();
    const auto& b = g.values();
    for (std::size_t m = 0; m < a.size(); ++m) s += a[m] * b[m];
    const double h = f.grid().spacing();
    return s * h * h * h;
}

inline double l2_norm(const ScalarField& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }

// Trigonometric-interpolant evaluation at arbitrary points by direct mode
// summation. O(points x modes); intended for N <= 32.
class OffGridEvaluator {
  public:
    explicit OffGridEvaluator(const ScalarField& f) : g_(f.grid()), s_(to_spectrum(f)) {
        // Drop rounding-level modes to shorten the summation.
        double mx = 0.0;
        for (const auto& c : s_) mx = std::max(mx, std::abs(c));
        const double cut = mx * 1e-17;
        for (int i = 0; i < g_.n; ++i)
            for (int j = 0; j < g_.n; ++j)
                for (int k = 0; k < g_.n; ++k) {
                    const cplx c = s_[g_.index(i, j, k)];
                    if (std::abs(c) > cut)
                        modes_.push_back({g_.freq(i), g_.freq(j), g_.freq(k), c});
                }
    }

    double operator()(double x, double y, double z) const {
        const int half = g_.n / 2;
        std::vector<cplx> px(g_.n), py(g_.n), pz(g_.n);
        for (int f = -half; f < half; ++f) {
            px[f + half] = std::polar(1.0, f * x);
            py[f + half] = std::polar(1.0, f * y);
            pz[f + half] = std::polar(1.0, f * z);
        }
        cplx acc(0.0);
        for (const auto& md : modes_)
            acc += md.c * px[md.f1 + half] * py[md.f2 + half] * pz[md.f3 + half];
        return acc.real();
    }

  private:
    struct Mode {
        int f1, f2, f3;
        cplx c;
    };
    Grid g_;
    std::vector<cplx> s_;
    std::vector<Mode> modes_;
};

inline std::vector<double> eval_offgrid(const ScalarField& f,
                                        const std::vector<std::array<double, 3>>& pts) {
    OffGridEvaluator ev(f);
    std::vector<double> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(ev(p[0], p[1], p[2]));
    return out;
}

// Spectral band of a field: largest |freq| (max over axes) carrying a
// coefficient above `rel` times the peak.
inline int spectral_band(const ScalarField& f, double rel = 1e-12) {
    const Grid& g = f.grid();
    auto s = to_spectrum(f);
    double mx = 0.0;
    for (const auto& c : s) mx = std::max(mx, std::abs(c));
    if (mx == 0.0) return 0;
    int band = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                if (std::abs(s[g.index(i, j, k)]) <= rel * mx) continue;
                const int b = std::max({std::abs(g.freq(i)), std::abs(g.freq(j)),
                                        std::abs(g.freq(k))});
                band = std::max(band, b);
            }
    return band;
}

// Deterministic band-limited random field. The mode loop order is fixed and
// independent of N, so the same seed produces the same function at every
// resolution with n/2 > band. sup |f| <= amplitude by the l1 coefficient
// bound used for the rescaling.
inline ScalarField random_band_limited(const Grid& g, std::uint64_t seed, int band,
                                       double amplitude) {
    if (band >= g.n / 2) throw std::invalid_argument("random_band_limited: band >= n/2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> s(g.size(), cplx(0.0));
    double l1 = 0.0;
    for (int f1 = -band; f1 <= band; ++f1)
        for (int f2 = -band; f2 <= band; ++f2)
            for (int f3 = -band; f3 <= band; ++f3) {
                const bool origin = (f1 == 0 && f2 == 0 && f3 == 0);
                const bool positive =
                    (f1 > 0) || (f1 == 0 && f2 > 0) || (f1 == 0 && f2 == 0 && f3 > 0);
                if (!origin && !positive) continue;
                const double re = gauss(rng);
                const double im = origin ? 0.0 : gauss(rng);
                const cplx c(0.5 * re, 0.5 * im);
                s[g.index(g.slot(f1), g.slot(f2), g.slot(f3))] = c;
                if (!origin) s[g.index(g.slot(-f1), g.slot(-f2), g.slot(-f3))] = std::conj(c);
                l1 += origin ? std::abs(c) : 2.0 * std::abs(c);
            }
    if (l1 == 0.0) l1 = 1.0;
    const double scale = amplitude / l1;
    for (auto& c : s) c *= scale;
    return from_spectrum(g, s);
}

}  // namespace ctlab
