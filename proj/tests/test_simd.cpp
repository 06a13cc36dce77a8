#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpg/dispersion.hpp"
#include "qpg/simd/kernels.hpp"
#include "qpg/units.hpp"
#include "support.hpp"

using namespace qpg;
using simd::Backend;

namespace {

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 33, 1001};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("scalar backend is always available and listed first") {
    const auto avail = simd::available_backends();
    REQUIRE_FALSE(avail.empty());
    CHECK(avail.front() == Backend::Scalar);
    CHECK(std::find(avail.begin(), avail.end(), simd::active_backend()) != avail.end());
}

TEST_CASE("reductions agree with the scalar reference") {
    std::mt19937_64 rng(11);
    for (Backend be : simd::available_backends()) {
        CAPTURE(simd::backend_name(be));
        for (std::size_t n : kLengths) {
            CAPTURE(n);
            const auto a = testing::random_complex(n, rng);
            const auto b = testing::random_complex(n, rng);
            const cplx ref = simd::dot_conj(Backend::Scalar, a, b);
            const cplx got = simd::dot_conj(be, a, b);
            CHECK(std::abs(got - ref) <= 1e-12 * (1.0 + std::sqrt(static_cast<double>(n))));
            CHECK(rel(simd::norm_sq(be, a), simd::norm_sq(Backend::Scalar, a)) < 1e-13);
        }
    }
}

TEST_CASE("scale and axpy agree with the scalar reference") {
    std::mt19937_64 rng(12);
    for (Backend be : simd::available_backends()) {
        CAPTURE(simd::backend_name(be));
        for (std::size_t n : kLengths) {
            const auto x = testing::random_complex(n, rng);
            auto y_ref = testing::random_complex(n, rng);
            auto y = y_ref;
            simd::axpy(Backend::Scalar, {0.3, -1.7}, x, y_ref);
            simd::axpy(be, {0.3, -1.7}, x, y);
            auto s_ref = x, s = x;
            simd::scale(Backend::Scalar, s_ref, -2.5);
            simd::scale(be, s, -2.5);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(y[i] - y_ref[i]) < 1e-14 * (1.0 + std::abs(y_ref[i])));
                CHECK(s[i] == s_ref[i]);
            }
        }
    }
}

TEST_CASE("sinc phase multiply matches std::sin/std::cos") {
    std::mt19937_64 rng(13);
    std::vector<double> x = testing::random_real(997, rng, -60.0, 60.0);
    for (double v : {0.0, -0.0, 1e-9, -3e-5, 9.99e-5, 1.0001e-4, std::numbers::pi, -std::numbers::pi / 2, 1e3,
                     -7.5e4, 2e5, -1e7, 3.3e9}) {
        x.push_back(v);
    }
    const auto amp = testing::random_complex(x.size(), rng);
    for (Backend be : simd::available_backends()) {
        CAPTURE(simd::backend_name(be));
        std::vector<cplx> out(x.size());
        simd::sinc_phase_mul(be, x, amp, out);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CAPTURE(x[i]);
            const double s = x[i] == 0.0 ? 1.0 : std::sin(x[i]) / x[i];
            const cplx ref = amp[i] * s * cplx{std::cos(x[i]), std::sin(x[i])};
            CHECK(std::abs(out[i] - ref) < 2e-15 * (1.0 + std::abs(amp[i])));
        }
    }
}

TEST_CASE("vectorised Sellmeier wavenumber agrees with the index model") {
    const SellmeierModel model;
    std::mt19937_64 rng(14);
    const double lo = wavelength_to_omega(1990.0), hi = wavelength_to_omega(410.0);
    const auto omega = testing::random_real(515, rng, lo, hi);
    for (Axis axis : {Axis::Extraordinary, Axis::Ordinary}) {
        const auto poles = model.poles(175.0, axis);
        std::vector<double> ref(omega.size());
        simd::sellmeier_wavenumber(Backend::Scalar, poles, omega, ref);
        for (std::size_t i = 0; i < omega.size(); i += 37) {
            const double lam_um = omega_to_wavelength(omega[i]) * 1e-3;
            const double k = refractive_index(lam_um, 175.0, axis) * omega[i] / kSpeedOfLight;
            CHECK(rel(ref[i], k) < 1e-13);
        }
        for (Backend be : simd::available_backends()) {
            CAPTURE(simd::backend_name(be));
            std::vector<double> k(omega.size());
            simd::sellmeier_wavenumber(be, poles, omega, k);
            for (std::size_t i = 0; i < k.size(); ++i) CHECK(rel(k[i], ref[i]) < 1e-14);
        }
    }
}

TEST_CASE("mismatched lengths are rejected") {
    std::vector<cplx> a(4), b(5);
    std::vector<double> x(4);
    CHECK_THROWS_AS(simd::dot_conj(Backend::Scalar, a, b), std::invalid_argument);
    CHECK_THROWS_AS(simd::axpy(Backend::Scalar, 1.0, a, b), std::invalid_argument);
    CHECK_THROWS_AS(simd::sinc_phase_mul(Backend::Scalar, x, a, b), std::invalid_argument);
}
