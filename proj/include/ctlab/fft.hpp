#pragma once

// Thin wrapper around FFTW for 3-d complex transforms on N^3 grids.
// Plans are cached per size and guarded by a mutex; execution on
// caller-owned buffers is thread-safe per FFTW's guarantees.

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace ctlab::fft {

using cplx = std::complex<double>;

namespace detail {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

inline PlanPair& plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<cplx> buf(static_cast<std::size_t>(n) * n * n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.forward = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    pp.backward = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!pp.forward || !pp.backward) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, pp).first->second;
}

}  // namespace detail

// values -> Fourier coefficients c_k such that f(x) = sum_k c_k e^{i k.x}.
inline void forward(int n, std::vector<cplx>& data) {
    auto& pp = detail::plans_for(n);
    fftw_execute_dft(pp.forward, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
    const double scale = 1.0 / (static_cast<double>(n) * n * n);
    for (auto& c : data) c *= scale;
}

// Fourier coefficients -> grid values (unnormalized inverse).
inline void backward(int n, std::vector<cplx>& data) {
    auto& pp = detail::plans_for(n);
    fftw_execute_dft(pp.backward, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

}  // namespace ctlab::fft
