// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached after a
// runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace qpg::simd::detail {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void dot_conj_avx2(const double* a, const double* b, std::size_t n, double* out) {
    __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
    __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d a0 = _mm256_loadu_pd(a + 2 * j);
        const __m256d b0 = _mm256_loadu_pd(b + 2 * j);
        const __m256d a1 = _mm256_loadu_pd(a + 2 * j + 4);
        const __m256d b1 = _mm256_loadu_pd(b + 2 * j + 4);
        re0 = _mm256_fmadd_pd(a0, b0, re0);
        re1 = _mm256_fmadd_pd(a1, b1, re1);
        im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
        im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
    }
    // im lanes hold (ar*bi, ai*br) pairs; the imaginary part is their difference.
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double re = hsum(_mm256_add_pd(re0, re1));
    double im = hsum(_mm256_mul_pd(_mm256_add_pd(im0, im1), sign));
    if (j < n) {
        double tail[2];
        scalar_table().dot_conj(a + 2 * j, b + 2 * j, n - j, tail);
        re += tail[0];
        im += tail[1];
    }
    out[0] = re;
    out[1] = im;
}

double norm_sq_avx2(const double* a, std::size_t n) {
    const std::size_t m = 2 * n;
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= m; j += 8) {
        const __m256d v0 = _mm256_loadu_pd(a + j);
        const __m256d v1 = _mm256_loadu_pd(a + j + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; j < m; ++j) acc += a[j] * a[j];
    return acc;
}

void scale_avx2(double* a, std::size_t n, double s) {
    const std::size_t m = 2 * n;
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) _mm256_storeu_pd(a + j, _mm256_mul_pd(_mm256_loadu_pd(a + j), vs));
    for (; j < m; ++j) a[j] *= s;
}

void axpy_avx2(double sr, double si, const double* x, double* y, std::size_t n) {
    const __m256d vr = _mm256_set1_pd(sr);
    const __m256d vi = _mm256_set1_pd(si);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * j);
        const __m256d t = _mm256_fmaddsub_pd(vr, xv, _mm256_mul_pd(vi, _mm256_permute_pd(xv, 0b0101)));
        _mm256_storeu_pd(y + 2 * j, _mm256_add_pd(_mm256_loadu_pd(y + 2 * j), t));
    }
    if (j < n) scalar_table().axpy(sr, si, x + 2 * j, y + 2 * j, n - j);
}

// Cody-Waite reduction by pi/2 in three parts, then the fdlibm minimax
// polynomials on [-pi/4, pi/4]. Valid for |x| <= kReduceLimit.
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

inline void sincos_avx2(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2_1), x);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2_2), r);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2_3), r);

    const __m256d z = _mm256_mul_pd(r, r);

    __m256d ps = _mm256_set1_pd(S6);
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(S5));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(S4));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(S3));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(S2));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(S1));
    const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

    __m256d pc = _mm256_set1_pd(C6);
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(C5));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(C4));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(C3));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(C2));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(C1));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d hz = _mm256_mul_pd(_mm256_set1_pd(0.5), z);
    const __m256d w = _mm256_sub_pd(one, hz);
    const __m256d corr = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, _mm256_sub_pd(_mm256_sub_pd(one, w), hz));
    const __m256d cos_r = _mm256_add_pd(w, corr);

    const __m128i qi = _mm256_cvtpd_epi32(q);
    const __m256i q64 = _mm256_cvtepi32_epi64(qi);
    const __m256i one_i = _mm256_set1_epi64x(1);
    const __m256i two_i = _mm256_set1_epi64x(2);
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, one_i), one_i));
    const __m256d neg_s = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, two_i), two_i));
    const __m256d neg_c = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q64, one_i), two_i), two_i));
    const __m256d sign_bit = _mm256_set1_pd(-0.0);

    const __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
    const __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
    s_out = _mm256_xor_pd(s, _mm256_and_pd(neg_s, sign_bit));
    c_out = _mm256_xor_pd(c, _mm256_and_pd(neg_c, sign_bit));
}

void sinc_phase_mul_avx2(const double* x, const double* amp, double* out, std::size_t n) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d small = _mm256_set1_pd(kSincSeriesLimit);
    const __m256d limit = _mm256_set1_pd(kReduceLimit);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d sixth = _mm256_set1_pd(1.0 / 6.0);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d xv = _mm256_loadu_pd(x + j);
        const __m256d ax = _mm256_and_pd(xv, abs_mask);
        if (_mm256_movemask_pd(_mm256_cmp_pd(ax, limit, _CMP_GT_OQ)) != 0) {
            scalar_table().sinc_phase_mul(x + j, amp + 2 * j, out + 2 * j, 4);
            continue;
        }
        __m256d s, c;
        sincos_avx2(xv, s, c);
        const __m256d is_small = _mm256_cmp_pd(ax, small, _CMP_LT_OQ);
        const __m256d denom = _mm256_blendv_pd(xv, one, is_small);
        const __m256d series = _mm256_fnmadd_pd(_mm256_mul_pd(xv, xv), sixth, one);
        const __m256d sinc = _mm256_blendv_pd(_mm256_div_pd(s, denom), series, is_small);
        const __m256d pr = _mm256_mul_pd(sinc, c);
        const __m256d pi = _mm256_mul_pd(sinc, s);

        const __m256d lo_pairs = _mm256_unpacklo_pd(pr, pi);  // pr0 pi0 pr2 pi2
        const __m256d hi_pairs = _mm256_unpackhi_pd(pr, pi);  // pr1 pi1 pr3 pi3
        const __m256d p01 = _mm256_permute2f128_pd(lo_pairs, hi_pairs, 0x20);
        const __m256d p23 = _mm256_permute2f128_pd(lo_pairs, hi_pairs, 0x31);

        const __m256d a01 = _mm256_loadu_pd(amp + 2 * j);
        const __m256d a23 = _mm256_loadu_pd(amp + 2 * j + 4);
        const __m256d o01 = _mm256_fmaddsub_pd(
            _mm256_movedup_pd(a01), p01,
            _mm256_mul_pd(_mm256_permute_pd(a01, 0b1111), _mm256_permute_pd(p01, 0b0101)));
        const __m256d o23 = _mm256_fmaddsub_pd(
            _mm256_movedup_pd(a23), p23,
            _mm256_mul_pd(_mm256_permute_pd(a23, 0b1111), _mm256_permute_pd(p23, 0b0101)));
        _mm256_storeu_pd(out + 2 * j, o01);
        _mm256_storeu_pd(out + 2 * j + 4, o23);
    }
    if (j < n) scalar_table().sinc_phase_mul(x + j, amp + 2 * j, out + 2 * j, n - j);
}

void sellmeier_wavenumber_avx2(const SellmeierPoles& p, const double* omega, double* k,
                               std::size_t n) {
    const __m256d two_pi_c = _mm256_set1_pd(kTwoPiCMicron);
    const __m256d inv_c = _mm256_set1_pd(1.0 / kSpeedOfLight);
    const __m256d a = _mm256_set1_pd(p.a), d = _mm256_set1_pd(p.d);
    const __m256d b1 = _mm256_set1_pd(p.b1), c1 = _mm256_set1_pd(p.c1);
    const __m256d b2 = _mm256_set1_pd(p.b2), c2 = _mm256_set1_pd(p.c2);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d w = _mm256_loadu_pd(omega + j);
        const __m256d lam = _mm256_div_pd(two_pi_c, w);
        const __m256d l2 = _mm256_mul_pd(lam, lam);
        __m256d n2 = _mm256_add_pd(a, _mm256_div_pd(b1, _mm256_sub_pd(l2, c1)));
        n2 = _mm256_add_pd(n2, _mm256_div_pd(b2, _mm256_sub_pd(l2, c2)));
        n2 = _mm256_fnmadd_pd(d, l2, n2);
        _mm256_storeu_pd(k + j, _mm256_mul_pd(_mm256_mul_pd(_mm256_sqrt_pd(n2), w), inv_c));
    }
    if (j < n) scalar_table().sellmeier_wavenumber(p, omega + j, k + j, n - j);
}

}  // namespace

namespace {
constexpr KernelTable kAvx2Table{dot_conj_avx2, norm_sq_avx2, scale_avx2, axpy_avx2,
                                 sinc_phase_mul_avx2, sellmeier_wavenumber_avx2};
}

const KernelTable* avx2_table() { return &kAvx2Table; }

}  // namespace qpg::simd::detail
