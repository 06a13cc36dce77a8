#include <doctest.h>

#include <cmath>

#include "qpg/error.hpp"
#include "qpg/pulses.hpp"
#include "qpg/units.hpp"
#include "support.hpp"

using namespace qpg;
using doctest::Approx;

namespace {

template <class F>
std::string error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "none";
}

}  // namespace

TEST_CASE("wavelength and angular frequency") {
    // 2 pi c / lambda, evaluated at 40 digits
    CHECK(wavelength_to_omega(1550.0) == Approx(1215259075683131.1).epsilon(1e-15));
    CHECK(wavelength_to_omega(870.0) == Approx(2165116744033164.7).epsilon(1e-15));
    for (double nm : {400.0, 557.23, 870.0, 1550.0, 2000.0}) {
        CHECK(std::abs(omega_to_wavelength(wavelength_to_omega(nm)) - nm) <= 4 * std::numeric_limits<double>::epsilon() * nm);
    }
    CHECK(error_code([] { wavelength_to_omega(0.0); }) == "non_positive");
    CHECK(error_code([] { wavelength_to_omega(-5.0); }) == "non_positive");
    CHECK(error_code([] { omega_to_wavelength(0.0); }) == "non_positive");
}

TEST_CASE("sum frequency") {
    CHECK(sum_frequency(1550.0, 870.0) == Approx(557.2314049586777).epsilon(1e-14));
    CHECK(sum_frequency(1234.5, 1234.5) == Approx(1234.5 / 2));
    CHECK(sum_frequency(1000.0, 1e6) == Approx(999.000999000999).epsilon(1e-14));
    CHECK(error_code([] { sum_frequency(0.0, 870.0); }) == "non_positive");
    CHECK(error_code([] { sum_frequency(1550.0, -1.0); }) == "non_positive");
}

TEST_CASE("fwhm to sigma") {
    const double dw = wavelength_fwhm_to_omega(870.0, 0.635);
    CHECK(dw == Approx(1580286359150.6432).epsilon(1e-13));
    CHECK(fwhm_to_sigma(dw) == Approx(949058679137.69463).epsilon(1e-13));

    const double sigma = fwhm_to_sigma(2.0 * std::sqrt(std::log(2.0)));
    CHECK(sigma == Approx(1.0).epsilon(1e-15));
    // half intensity at +-sqrt(ln 2) sigma
    const double x = std::sqrt(std::log(2.0)) * sigma;
    CHECK(std::exp(-x * x / (sigma * sigma)) == Approx(0.5).epsilon(1e-14));

    CHECK(fwhm_to_sigma(2.0 * dw) == Approx(2.0 * fwhm_to_sigma(dw)).epsilon(1e-15));
    CHECK(error_code([] { fwhm_to_sigma(0.0); }) == "non_positive");
}

TEST_CASE("frequency grid") {
    CHECK(error_code([] { FrequencyGrid(1.0, 1.0, 15); }) == "grid_too_small");
    const FrequencyGrid g(10.0, 4.0, 17);
    CHECK(g.size() == 17);
    CHECK(g.front() == Approx(8.0));
    CHECK(g.back() == Approx(12.0));
    CHECK(g[8] == 10.0);
    const auto s = g.samples();
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s[i] > s[i - 1]);
        CHECK(s[i] - s[i - 1] == Approx(g.spacing()).epsilon(1e-14));
    }
}

TEST_CASE("Hermite modes are orthonormal") {
    const auto g = testing::unit_grid();
    std::vector<SpectralAmplitude> u;
    for (int k = 0; k <= 10; ++k) u.push_back(hermite_mode({k, 0.0, 1.0}, g));
    for (int k = 0; k <= 10; ++k) {
        for (int l = 0; l <= 10; ++l) {
            CAPTURE(k);
            CAPTURE(l);
            const cplx o = overlap(u[static_cast<std::size_t>(k)], u[static_cast<std::size_t>(l)]);
            CHECK(std::abs(o - (k == l ? 1.0 : 0.0)) < 1e-8);
            if ((k + l) % 2 == 1) CHECK(std::abs(o) < 1e-12);
        }
    }
}

TEST_CASE("Hermite mode values") {
    const FrequencyGrid g(5.0, 30.0, 1001);  // odd count: the centre is a sample
    const auto u1 = hermite_mode({1, 5.0, 2.0}, g);
    CHECK(std::abs(u1.values[500]) < 1e-15);

    const auto u0 = hermite_mode({0, 5.0, 2.0}, g);
    std::size_t peak = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::abs(u0.values[i]) > std::abs(u0.values[peak])) peak = i;
    }
    CHECK(peak == 500);
    // (pi sigma^2)^(-1/4); the quadrature norm of the sampled Gaussian is 1 to ~1e-15 here
    CHECK(u0.values[500].real() == Approx(std::pow(kPi * 4.0, -0.25)).epsilon(1e-12));
    CHECK(u0.norm() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("insufficient coverage raises a truncation error") {
    const FrequencyGrid g(0.0, 8.0, 401);  // +-4 widths
    try {
        hermite_mode({0, 0.0, 1.0}, g);
        FAIL("expected truncation");
    } catch (const TruncationError& e) {
        CHECK(e.code() == "truncation");
        // mass of |u0|^2 beyond +-4: erfc(4)
        CHECK(e.lost_norm == Approx(std::erfc(4.0)).epsilon(0.05));
    }
    CHECK_NOTHROW(hermite_mode({0, 0.0, 1.0}, FrequencyGrid(0.0, 12.0, 401)));
    CHECK(error_code([] { hermite_mode({10, 0.0, 1.0}, FrequencyGrid(0.0, 12.0, 401)); }) == "truncation");
    CHECK(error_code([] { hermite_mode({21, 0.0, 1.0}, testing::unit_grid()); }) == "bad_order");
    CHECK(error_code([] { hermite_mode({0, 0.0, 0.0}, testing::unit_grid()); }) == "bad_width");
}

TEST_CASE("superposition") {
    const auto g = testing::unit_grid();
    const auto u0 = hermite_mode({0, 0.0, 1.0}, g);
    const auto u1 = hermite_mode({1, 0.0, 1.0}, g);
    const std::vector<SpectralAmplitude> both{u0, u1};
    const std::vector<SpectralAmplitude> twice{u0, u0};

    const std::vector<cplx> one{1.0};
    const auto same = superpose(one, std::span(both).first(1));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(same.values[i] - u0.values[i]) < 1e-15);

    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> half{h, h};
    const auto mix = superpose(half, both);
    CHECK(mix.norm() == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(overlap(u0, mix)) == Approx(h).epsilon(1e-9));
    CHECK(std::abs(overlap(u1, mix)) == Approx(h).epsilon(1e-9));

    const std::vector<cplx> ones{1.0, 1.0};
    const auto deg = superpose(ones, twice);
    CHECK(std::abs(overlap(u0, deg)) == Approx(1.0).epsilon(1e-12));

    const std::vector<cplx> zeros{0.0, 0.0};
    CHECK(error_code([&] { superpose(zeros, both); }) == "zero_coefficients");
    CHECK(error_code([&] { superpose(one, both); }) == "length_mismatch");
    const std::vector<cplx> cancel{1.0, -1.0};
    CHECK(error_code([&] { superpose(cancel, twice); }) == "zero_superposition");
    const std::vector<SpectralAmplitude> mixed{u0, hermite_mode({0, 0.0, 1.0}, testing::unit_grid(803))};
    CHECK(error_code([&] { superpose(ones, mixed); }) == "grid_mismatch");
}

TEST_CASE("Gaussian overlaps") {
    const auto g = testing::unit_grid(1601, 40.0);
    const auto a = hermite_mode({0, 0.0, 1.0}, g);
    const auto b = hermite_mode({0, 0.0, 2.0}, g);
    // 2 sqrt(s1 s2) / sqrt(s1^2 + s2^2) -> sqrt(4/5)
    CHECK(std::abs(overlap(a, b)) == Approx(std::sqrt(0.8)).epsilon(1e-12));
    CHECK(std::abs(overlap(a, a)) == Approx(1.0).epsilon(1e-9));
    CHECK(error_code([&] { overlap(a, hermite_mode({0, 0.0, 1.0}, testing::unit_grid())); }) == "grid_mismatch");

    // refinement
    const auto g2 = testing::unit_grid(3201, 40.0);
    const auto o2 = overlap(hermite_mode({0, 0.0, 1.0}, g2), hermite_mode({0, 0.0, 2.0}, g2));
    CHECK(std::abs(o2 - overlap(a, b)) < 1e-8);
}

TEST_CASE("completeness of u0..u20 for a displaced matched Gaussian") {
    const auto g = testing::unit_grid(1201, 36.0);
    const auto probe = hermite_mode({0, 0.5, 1.0}, g);
    double captured = 0.0;
    for (int k = 0; k <= 20; ++k) captured += std::norm(overlap(hermite_mode({k, 0.0, 1.0}, g), probe));
    CHECK(captured >= 1.0 - 1e-6);
    CHECK(captured <= 1.0 + 1e-9);
}

TEST_CASE("spectral amplitude checks its length") {
    const auto g = testing::unit_grid(32);
    CHECK_THROWS_AS(SpectralAmplitude(g, std::vector<cplx>(31)), Error);
}
