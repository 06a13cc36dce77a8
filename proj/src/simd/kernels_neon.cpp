// NEON (AArch64, float64x2) variants. Advanced SIMD is mandatory on AArch64,
// so no runtime probe is needed beyond the architecture check.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace qpg::simd::detail {
namespace {

void dot_conj_neon(const double* a, const double* b, std::size_t n, double* out) {
    float64x2_t re = vdupq_n_f64(0.0);
    float64x2_t im = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const float64x2_t av = vld1q_f64(a + 2 * j);
        const float64x2_t bv = vld1q_f64(b + 2 * j);
        re = vfmaq_f64(re, av, bv);
        im = vfmaq_f64(im, av, vextq_f64(bv, bv, 1));
    }
    out[0] = vgetq_lane_f64(re, 0) + vgetq_lane_f64(re, 1);
    out[1] = vgetq_lane_f64(im, 0) - vgetq_lane_f64(im, 1);
}

double norm_sq_neon(const double* a, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t v0 = vld1q_f64(a + 2 * j);
        const float64x2_t v1 = vld1q_f64(a + 2 * j + 2);
        acc0 = vfmaq_f64(acc0, v0, v0);
        acc1 = vfmaq_f64(acc1, v1, v1);
    }
    if (j < n) {
        const float64x2_t v = vld1q_f64(a + 2 * j);
        acc0 = vfmaq_f64(acc0, v, v);
    }
    return vaddvq_f64(vaddq_f64(acc0, acc1));
}

void scale_neon(double* a, std::size_t n, double s) {
    for (std::size_t j = 0; j < n; ++j) vst1q_f64(a + 2 * j, vmulq_n_f64(vld1q_f64(a + 2 * j), s));
}

void axpy_neon(double sr, double si, const double* x, double* y, std::size_t n) {
    const float64x2_t rot = {-si, si};
    for (std::size_t j = 0; j < n; ++j) {
        const float64x2_t xv = vld1q_f64(x + 2 * j);
        float64x2_t yv = vld1q_f64(y + 2 * j);
        yv = vfmaq_n_f64(yv, xv, sr);
        yv = vfmaq_f64(yv, vextq_f64(xv, xv, 1), rot);
        vst1q_f64(y + 2 * j, yv);
    }
}

constexpr double kReduceLimit = 1e5;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2_1 = 1.57079632673412561417e+00;
constexpr double kPio2_2 = 6.07710050630396597660e-11;
constexpr double kPio2_3 = 2.02226624871116645580e-21;

constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline void sincos_neon(float64x2_t x, float64x2_t& s_out, float64x2_t& c_out) {
    const float64x2_t q = vrndnq_f64(vmulq_n_f64(x, kTwoOverPi));
    float64x2_t r = vfmsq_f64(x, q, vdupq_n_f64(kPio2_1));
    r = vfmsq_f64(r, q, vdupq_n_f64(kPio2_2));
    r = vfmsq_f64(r, q, vdupq_n_f64(kPio2_3));
    const float64x2_t z = vmulq_f64(r, r);

    float64x2_t ps = vdupq_n_f64(S6);
    ps = vfmaq_f64(vdupq_n_f64(S5), ps, z);
    ps = vfmaq_f64(vdupq_n_f64(S4), ps, z);
    ps = vfmaq_f64(vdupq_n_f64(S3), ps, z);
    ps = vfmaq_f64(vdupq_n_f64(S2), ps, z);
    ps = vfmaq_f64(vdupq_n_f64(S1), ps, z);
    const float64x2_t sin_r = vfmaq_f64(r, vmulq_f64(r, z), ps);

    float64x2_t pc = vdupq_n_f64(C6);
    pc = vfmaq_f64(vdupq_n_f64(C5), pc, z);
    pc = vfmaq_f64(vdupq_n_f64(C4), pc, z);
    pc = vfmaq_f64(vdupq_n_f64(C3), pc, z);
    pc = vfmaq_f64(vdupq_n_f64(C2), pc, z);
    pc = vfmaq_f64(vdupq_n_f64(C1), pc, z);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t hz = vmulq_n_f64(z, 0.5);
    const float64x2_t w = vsubq_f64(one, hz);
    const float64x2_t corr = vfmaq_f64(vsubq_f64(vsubq_f64(one, w), hz), vmulq_f64(z, z), pc);
    const float64x2_t cos_r = vaddq_f64(w, corr);

    const int64x2_t qi = vcvtq_s64_f64(q);
    const uint64x2_t swap = vtstq_s64(qi, vdupq_n_s64(1));
    const uint64x2_t neg_s = vtstq_s64(qi, vdupq_n_s64(2));
    const uint64x2_t neg_c = vtstq_s64(vaddq_s64(qi, vdupq_n_s64(1)), vdupq_n_s64(2));
    const uint64x2_t sign_bit = vdupq_n_u64(0x8000000000000000ULL);

    const float64x2_t s = vbslq_f64(swap, cos_r, sin_r);
    const float64x2_t c = vbslq_f64(swap, sin_r, cos_r);
    s_out = vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(s), vandq_u64(neg_s, sign_bit)));
    c_out = vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(c), vandq_u64(neg_c, sign_bit)));
}

void sinc_phase_mul_neon(const double* x, const double* amp, double* out, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t xv = vld1q_f64(x + j);
        const float64x2_t ax = vabsq_f64(xv);
        if (vmaxvq_f64(ax) > kReduceLimit) {
            scalar_table().sinc_phase_mul(x + j, amp + 2 * j, out + 2 * j, 2);
            continue;
        }
        float64x2_t s, c;
        sincos_neon(xv, s, c);
        const uint64x2_t is_small = vcltq_f64(ax, vdupq_n_f64(kSincSeriesLimit));
        const float64x2_t denom = vbslq_f64(is_small, one, xv);
        const float64x2_t series = vfmsq_f64(one, vmulq_f64(xv, xv), vdupq_n_f64(1.0 / 6.0));
        const float64x2_t sinc = vbslq_f64(is_small, series, vdivq_f64(s, denom));
        const float64x2_t pr = vmulq_f64(sinc, c);
        const float64x2_t pi = vmulq_f64(sinc, s);
        for (int lane = 0; lane < 2; ++lane) {
            const float64x2_t p = lane == 0 ? vzip1q_f64(pr, pi) : vzip2q_f64(pr, pi);
            const float64x2_t a = vld1q_f64(amp + 2 * (j + lane));
            // (ar + i ai)(pr + i pi)
            float64x2_t o = vmulq_n_f64(p, vgetq_lane_f64(a, 0));
            const float64x2_t rot = {-vgetq_lane_f64(a, 1), vgetq_lane_f64(a, 1)};
            o = vfmaq_f64(o, vextq_f64(p, p, 1), rot);
            vst1q_f64(out + 2 * (j + lane), o);
        }
    }
    if (j < n) scalar_table().sinc_phase_mul(x + j, amp + 2 * j, out + 2 * j, n - j);
}

void sellmeier_wavenumber_neon(const SellmeierPoles& p, const double* omega, double* k,
                               std::size_t n) {
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t w = vld1q_f64(omega + j);
        const float64x2_t lam = vdivq_f64(vdupq_n_f64(kTwoPiCMicron), w);
        const float64x2_t l2 = vmulq_f64(lam, lam);
        float64x2_t n2 = vaddq_f64(vdupq_n_f64(p.a), vdivq_f64(vdupq_n_f64(p.b1), vsubq_f64(l2, vdupq_n_f64(p.c1))));
        n2 = vaddq_f64(n2, vdivq_f64(vdupq_n_f64(p.b2), vsubq_f64(l2, vdupq_n_f64(p.c2))));
        n2 = vfmsq_f64(n2, vdupq_n_f64(p.d), l2);
        vst1q_f64(k + j, vmulq_n_f64(vmulq_f64(vsqrtq_f64(n2), w), 1.0 / kSpeedOfLight));
    }
    if (j < n) scalar_table().sellmeier_wavenumber(p, omega + j, k + j, n - j);
}

constexpr KernelTable kNeonTable{dot_conj_neon, norm_sq_neon, scale_neon, axpy_neon,
                                 sinc_phase_mul_neon, sellmeier_wavenumber_neon};

}  // namespace

const KernelTable* neon_table() { return &kNeonTable; }

}  // namespace qpg::simd::detail
