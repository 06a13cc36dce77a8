#pragma once

// Raw-pointer kernel table shared by the backend translation units. The
// vector TUs are compiled with ISA flags, so they include nothing beyond this
// header and their intrinsics headers.

#include <cstddef>

#include "qpg/simd/sellmeier_poles.hpp"

namespace qpg::simd::detail {

// 2*pi*c expressed in um*rad/s, and c in m/s.
inline constexpr double kTwoPiCMicron = 6.283185307179586476925286766559 * 299792458.0 * 1e6;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kSincSeriesLimit = 1e-4;

// Complex arrays are interleaved (re, im); n counts complex elements.
struct KernelTable {
    void (*dot_conj)(const double* a, const double* b, std::size_t n, double* out_re_im);
    double (*norm_sq)(const double* a, std::size_t n);
    void (*scale)(double* a, std::size_t n, double s);
    void (*axpy)(double s_re, double s_im, const double* x, double* y, std::size_t n);
    void (*sinc_phase_mul)(const double* x, const double* amp, double* out, std::size_t n);
    void (*sellmeier_wavenumber)(const SellmeierPoles& p, const double* omega, double* k,
                                 std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the backend was not compiled into this binary.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace qpg::simd::detail
