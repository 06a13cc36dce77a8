#include <doctest.h>

#include <cmath>

#include "qpg/dispersion.hpp"
#include "qpg/error.hpp"
#include "qpg/units.hpp"

using namespace qpg;
using doctest::Approx;

namespace {

PhasematchingSpec nominal(Polarization pol = {}) {
    PhasematchingSpec s;
    s.length = 50e-3;
    s.poling_period = 4.2e-6;
    s.temperature = 175.0;
    s.polarization = pol;
    return s;
}

const double kIn = wavelength_to_omega(1550.0);
const double kOut = wavelength_to_omega(sum_frequency(1550.0, 870.0));

// first x > 0 with sinc^2(x) = 1/2, by bisection
double sinc_half_point() {
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double s = std::sin(mid) / mid;
        (s * s > 0.5 ? lo : hi) = mid;
    }
    return lo;
}

// FWHM in dk of |Phi|^2 found by scanning the amplitude function
double phasematch_fwhm(double length) {
    auto half = [length](double dk) { return std::norm(phasematching_amplitude(dk, length)) - 0.5; };
    double lo = 0.0, hi = 4.0 / length;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (half(mid) > 0 ? lo : hi) = mid;
    }
    return 2.0 * lo;
}

}  // namespace

TEST_CASE("extraordinary index against the series evaluated at high precision") {
    CHECK(refractive_index(1.55, 24.5) == Approx(2.1378613831803726).epsilon(1e-13));
    CHECK(refractive_index(1.55, 175.0) == Approx(2.1449114568943312).epsilon(1e-13));
    CHECK(SellmeierModel::temperature_parameter(24.5) == 0.0);
}

TEST_CASE("ordinary index against the series evaluated at high precision") {
    CHECK(refractive_index(1.55, 24.5, Axis::Ordinary) == Approx(2.2112362180939171).epsilon(1e-13));
    CHECK(refractive_index(1.55, 175.0, Axis::Ordinary) == Approx(2.2120133957368279).epsilon(1e-13));
}

TEST_CASE("index is physical and decreasing in the near infrared") {
    for (Axis axis : {Axis::Extraordinary, Axis::Ordinary}) {
        for (double t : {20.0, 24.5, 100.0, 175.0, 250.0}) {
            for (double lam = 0.4; lam <= 2.0; lam += 0.01) {
                const double n = refractive_index(lam, t, axis);
                CHECK(n > 1.5);
                CHECK(n < 3.0);
            }
            double prev = refractive_index(0.9, t, axis);
            for (double lam = 0.905; lam <= 1.6; lam += 0.005) {
                const double n = refractive_index(lam, t, axis);
                CHECK(n < prev);
                prev = n;
            }
        }
    }
}

TEST_CASE("out-of-range arguments are domain errors") {
    CHECK_THROWS_AS(refractive_index(0.39, 100.0), DomainError);
    CHECK_THROWS_AS(refractive_index(2.01, 100.0), DomainError);
    CHECK_THROWS_AS(refractive_index(1.0, 19.0), DomainError);
    CHECK_THROWS_AS(refractive_index(1.0, 251.0), DomainError);
}

TEST_CASE("group index") {
    // central difference of the high-precision series with the same 1e-4 um step
    CHECK(group_index(1.55, 175.0) == Approx(2.1903823525021425).epsilon(1e-10));
    CHECK(group_index(0.87, 175.0) == Approx(2.2557395177734750).epsilon(1e-10));
    CHECK(group_index(1.55, 175.0, Axis::Ordinary) == Approx(2.2650267827931265).epsilon(1e-10));
    for (double lam : {0.6, 0.87, 1.2, 1.55, 1.9}) {
        CHECK(group_index(lam, 175.0) >= refractive_index(lam, 175.0));
        CHECK(std::abs(group_index(lam, 175.0, Axis::Extraordinary, 5e-5) - group_index(lam, 175.0)) < 1e-7);
    }
}

TEST_CASE("polarization text") {
    CHECK(Polarization::parse("oeo") == Polarization{});
    CHECK(Polarization::parse("eee").str() == "eee");
    CHECK(Polarization{}.str() == "oeo");
    CHECK_THROWS_AS(Polarization::parse("ee"), Error);
    CHECK_THROWS_AS(Polarization::parse("oxo"), Error);
}

TEST_CASE("spec validation") {
    auto s = nominal();
    CHECK_NOTHROW(s.validate());
    s.qpm_order = 2;
    CHECK_THROWS_AS(s.validate(), Error);
    s = nominal();
    s.length = 0.0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = nominal();
    s.poling_period = -1.0;
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("offset calibration") {
    auto s = nominal();
    const double offset = calibrate_offset(1550.0, 870.0, s);
    CHECK(offset == Approx(94496.082587760644).epsilon(1e-9));
    CHECK(std::abs(offset) < 0.1 * s.grating_wavenumber());

    s.delta_k_offset = offset;
    CHECK(std::abs(phase_mismatch(kIn, kOut, s)) < 1e-6);

    // only wavelengths and spec matter
    auto shifted = s;
    shifted.delta_k_offset = 123.0;
    CHECK(calibrate_offset(1550.0, 870.0, shifted) == offset);

    // all-extraordinary needs a far larger correction at 4.2 um
    CHECK(calibrate_offset(1550.0, 870.0, nominal(Polarization::parse("eee"))) ==
          Approx(717633.27946437744).epsilon(1e-9));
}

TEST_CASE("calibration modes") {
    const auto base = nominal();
    const auto none = calibrate(base, 1550.0, 870.0, Calibration::None);
    CHECK(none.delta_k_offset == base.delta_k_offset);
    CHECK(none.input_group_index_shift == 0.0);

    const auto off = calibrate(base, 1550.0, 870.0, Calibration::Offset);
    CHECK(std::abs(phase_mismatch(kIn, kOut, off)) < 1e-6);
    CHECK(off.input_group_index_shift == 0.0);

    const auto hor = calibrate(base, 1550.0, 870.0, Calibration::Horizontal);
    CHECK(std::abs(phase_mismatch(kIn, kOut, hor)) < 1e-6);
    CHECK(hor.input_group_index_shift ==
          Approx(group_index(0.87, 175.0, Axis::Extraordinary) - group_index(1.55, 175.0, Axis::Ordinary)));
    CHECK(std::abs(ridge_angle_deg(hor, 1550.0, 870.0)) < 1e-3);
    CHECK(std::abs(ridge_angle_deg(off, 1550.0, 870.0)) > 0.01);

    CHECK(parse_calibration("true") == Calibration::Offset);
    CHECK(parse_calibration("false") == Calibration::None);
    CHECK(parse_calibration("horizontal") == Calibration::Horizontal);
    CHECK(calibration_name(Calibration::Horizontal) == "horizontal");
    CHECK_THROWS_AS(parse_calibration("sideways"), Error);
}

TEST_CASE("mismatch structure") {
    auto s = calibrate(nominal(), 1550.0, 870.0, Calibration::Offset);
    auto s3 = s;
    s3.qpm_order = 3;
    s3.poling_period = s.poling_period;
    const double d1 = phase_mismatch(kIn, kOut, s);
    const double d3 = phase_mismatch(kIn, kOut, s3);
    CHECK(d3 - d1 == Approx(-2.0 * 2.0 * kPi / s.poling_period).epsilon(1e-9));

    // monotone and continuous along w_out near the nominal point
    const double step = 1e9;
    double prev = phase_mismatch(kIn, kOut - 200 * step, s);
    for (int j = -199; j <= 200; ++j) {
        const double d = phase_mismatch(kIn, kOut + j * step, s);
        CHECK(d > prev);
        CHECK(d - prev < 1e3);
        prev = d;
    }

    // gate outside the Sellmeier range
    CHECK_THROWS_AS(phase_mismatch(kIn, kIn * 1.1, s), DomainError);
}

TEST_CASE("wavenumber is positive and increasing") {
    const auto s = nominal();
    for (Axis axis : {Axis::Ordinary, Axis::Extraordinary}) {
        double prev = 0.0;
        for (double nm = 1990.0; nm >= 410.0; nm -= 10.0) {
            const double k = wavenumber(wavelength_to_omega(nm), s, axis);
            CHECK(k > prev);
            prev = k;
        }
    }
}

TEST_CASE("phasematching amplitude") {
    const double L = 0.05;
    CHECK(phasematching_amplitude(0.0, L) == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(phasematching_amplitude(2.0 * kPi / L, L)) < 1e-15);
    CHECK(std::abs(phasematching_amplitude(kPi / L, L)) == Approx(2.0 / kPi).epsilon(1e-14));
    const auto p = phasematching_amplitude(1.3, 1.0);
    CHECK(std::arg(p) == Approx(0.65).epsilon(1e-14));
    CHECK(std::abs(p) == Approx(std::sin(0.65) / 0.65).epsilon(1e-14));

    for (double dk = -2000.0; dk <= 2000.0; dk += 3.7) CHECK(std::abs(phasematching_amplitude(dk, L)) <= 1.0);

    const double x_half = sinc_half_point();
    CHECK(x_half == Approx(1.39156).epsilon(1e-5));
    CHECK(phasematch_fwhm(L) == Approx(2.0 * 2.7831 / L).epsilon(0.01));
    CHECK(phasematch_fwhm(2 * L) == Approx(phasematch_fwhm(L) / 2).epsilon(1e-9));
}
