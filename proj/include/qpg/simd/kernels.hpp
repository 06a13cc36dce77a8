#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and, where
// the host supports it, a vector variant (AVX2+FMA on x86-64, NEON on
// AArch64). The variant is picked once at first use; QPG_SIMD=scalar|avx2|neon
// forces a choice.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qpg/simd/sellmeier_poles.hpp"

namespace qpg::simd {

using cplx = std::complex<double>;


enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

/// Backends usable on this machine, scalar first.
std::vector<Backend> available_backends();

/// Backend the dispatching entry points below route to.
Backend active_backend();

// Backend-explicit entry points; used by the equivalence tests. Calling a
// backend that is not available throws std::invalid_argument.

/// sum_j conj(a_j) * b_j
cplx dot_conj(Backend be, std::span<const cplx> a, std::span<const cplx> b);

/// sum_j |a_j|^2
double norm_sq(Backend be, std::span<const cplx> a);

/// a_j *= s
void scale(Backend be, std::span<cplx> a, double s);

/// y_j += s * x_j
void axpy(Backend be, cplx s, std::span<const cplx> x, std::span<cplx> y);

/// out_j = amp_j * sinc(x_j) * exp(i x_j)
void sinc_phase_mul(Backend be, std::span<const double> x, std::span<const cplx> amp,
                    std::span<cplx> out);

/// k_j = n(lambda(omega_j)) * omega_j / c for angular frequencies in rad/s.
void sellmeier_wavenumber(Backend be, const SellmeierPoles& poles, std::span<const double> omega,
                          std::span<double> k);

inline cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
    return dot_conj(active_backend(), a, b);
}
inline double norm_sq(std::span<const cplx> a) { return norm_sq(active_backend(), a); }
inline void scale(std::span<cplx> a, double s) { scale(active_backend(), a, s); }
inline void axpy(cplx s, std::span<const cplx> x, std::span<cplx> y) {
    axpy(active_backend(), s, x, y);
}
inline void sinc_phase_mul(std::span<const double> x, std::span<const cplx> amp, std::span<cplx> out) {
    sinc_phase_mul(active_backend(), x, amp, out);
}
inline void sellmeier_wavenumber(const SellmeierPoles& poles, std::span<const double> omega,
                                 std::span<double> k) {
    sellmeier_wavenumber(active_backend(), poles, omega, k);
}

}  // namespace qpg::simd
