#include <cmath>

#include "kernels_impl.hpp"

namespace qpg::simd::detail {
namespace {

void dot_conj_scalar(const double* a, const double* b, std::size_t n, double* out) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double ar = a[2 * j], ai = a[2 * j + 1];
        const double br = b[2 * j], bi = b[2 * j + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    out[0] = re;
    out[1] = im;
}

double norm_sq_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) acc += a[j] * a[j];
    return acc;
}

void scale_scalar(double* a, std::size_t n, double s) {
    for (std::size_t j = 0; j < 2 * n; ++j) a[j] *= s;
}

void axpy_scalar(double sr, double si, const double* x, double* y, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double xr = x[2 * j], xi = x[2 * j + 1];
        y[2 * j] += sr * xr - si * xi;
        y[2 * j + 1] += sr * xi + si * xr;
    }
}

void sinc_phase_mul_scalar(const double* x, const double* amp, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double v = x[j];
        const double s = std::sin(v);
        const double c = std::cos(v);
        const double sinc = std::abs(v) < kSincSeriesLimit ? 1.0 - v * v / 6.0 : s / v;
        const double pr = sinc * c;
        const double pi = sinc * s;
        const double ar = amp[2 * j], ai = amp[2 * j + 1];
        out[2 * j] = ar * pr - ai * pi;
        out[2 * j + 1] = ar * pi + ai * pr;
    }
}

void sellmeier_wavenumber_scalar(const SellmeierPoles& p, const double* omega, double* k,
                                 std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double lam = kTwoPiCMicron / omega[j];
        const double l2 = lam * lam;
        const double n2 = p.a + p.b1 / (l2 - p.c1) + p.b2 / (l2 - p.c2) - p.d * l2;
        k[j] = std::sqrt(n2) * omega[j] / kSpeedOfLight;
    }
}

}  // namespace

namespace {
constexpr KernelTable kScalarTable{dot_conj_scalar,       norm_sq_scalar,
                                   scale_scalar,          axpy_scalar,
                                   sinc_phase_mul_scalar, sellmeier_wavenumber_scalar};
}

const KernelTable& scalar_table() { return kScalarTable; }

}  // namespace qpg::simd::detail
