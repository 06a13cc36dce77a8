#include <doctest.h>

#include <cmath>

#include "qpg/error.hpp"
#include "qpg/schmidt.hpp"
#include "qpg/transfer.hpp"
#include "qpg/units.hpp"

using namespace qpg;
using doctest::Approx;

namespace {

QpgSetup thin_crystal(std::size_t n = 128) {
    QpgSetup s = preset_engineered();
    s.material.length = 1e-16;  // Phi = 1 to ~1e-11
    s.calibration = Calibration::None;
    s.n_points = n;
    return s;
}

cplx interpolate(const SpectralAmplitude& a, double w) {
    const auto& g = a.grid;
    const double pos = (w - g.front()) / g.spacing();
    if (pos < 0.0 || pos > static_cast<double>(g.size() - 1)) return 0.0;
    const auto i = std::min(static_cast<std::size_t>(pos), g.size() - 2);
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * a.values[i] + t * a.values[i + 1];
}

const TransferOptions kNoWindowCheck{true, false};

}  // namespace

TEST_CASE("engineered kernel is normalized, centred and unclipped") {
    const TransferMatrix f = preset_engineered().build();
    CHECK(f.values.rows() == 512);
    CHECK(f.values.cols() == 512);
    CHECK(f.norm() == Approx(1.0).epsilon(1e-9));
    CHECK(f.clipped_fraction < 1e-4);
    CHECK(f.boundary_fraction < 0.05);
    CHECK(std::abs(omega_to_wavelength(f.output_centroid()) - 557.2314) < 0.5);
    CHECK(std::abs(omega_to_wavelength(f.input_centroid()) - 1550.0) < 0.5);
}

TEST_CASE("without phasematching the kernel is the gate along anti-diagonals") {
    const QpgSetup s = thin_crystal();
    const TransferMatrix f = s.build(kNoWindowCheck);
    const SpectralAmplitude alpha = s.gating_pulse();
    // compare shapes after scaling by one reference entry
    std::size_t ri = 64, ro = 0;
    for (std::size_t o = 0; o < 128; ++o) {
        if (std::abs(f.values(ri, o)) > std::abs(f.values(ri, ro))) ro = o;
    }
    const cplx scale = f.values(ri, ro) / interpolate(alpha, f.output_grid[ro] - f.input_grid[ri]);
    double worst = 0.0;
    for (std::size_t i = 0; i < 128; ++i) {
        for (std::size_t o = 0; o < 128; ++o) {
            const cplx expect = scale * interpolate(alpha, f.output_grid[o] - f.input_grid[i]);
            worst = std::max(worst, std::abs(f.values(i, o) - expect));
        }
    }
    CHECK(worst < 1e-9 * std::abs(f.values(ri, ro)));

    const auto d = schmidt_decompose(f, 4);
    CHECK(schmidt_number(d) > 5.0);
}

TEST_CASE("shifting both windows together leaves the kernel unchanged") {
    const QpgSetup s = thin_crystal(64);
    const auto spec = s.calibrated_material();
    const auto gate = s.gating_pulse();
    const auto in = s.input_grid();
    const auto out = s.output_grid();
    const double delta = 3.0 * in.spacing();
    const FrequencyGrid in2(in.center() + delta, in.span(), in.size());
    const FrequencyGrid out2(out.center() + delta, out.span(), out.size());
    const auto a = build_transfer(gate, spec, in, out, kNoWindowCheck);
    const auto b = build_transfer(gate, spec, in2, out2, kNoWindowCheck);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-9 * a.values.cwiseAbs().maxCoeff());
}

TEST_CASE("assembly is independent of the thread count") {
    QpgSetup s = preset_engineered();
    s.n_points = 96;
    TransferOptions one, many;
    one.threads = 1;
    many.threads = 5;
    const auto a = s.build(one);
    const auto b = s.build(many);
    CHECK(a.values == b.values);
    CHECK(a.clipped_fraction == b.clipped_fraction);
}

TEST_CASE("ridge outside the window raises a window error") {
    const QpgSetup s = preset_engineered();
    const double sigma = s.gate_sigma();
    // the ridge crosses a window far narrower than the mode, so every edge row carries mass
    const FrequencyGrid narrow(wavelength_to_omega(1550.0), 2.0 * sigma, 16);
    const auto out = output_grid_for(narrow, s.gate_grid(), 16);
    try {
        build_transfer(s.gating_pulse(), s.calibrated_material(), narrow, out);
        FAIL("expected a window error");
    } catch (const WindowError& e) {
        CHECK(e.code() == "window");
        CHECK(e.boundary_fraction > 0.05);
    }
}

TEST_CASE("output window spans both bands") {
    const FrequencyGrid in(1.0e15, 4.0e12, 64);
    const FrequencyGrid gate(2.0e15, 1.0e12, 32);
    const auto out = output_grid_for(in, gate, 100);
    CHECK(out.center() == Approx(3.0e15));
    CHECK(out.span() == Approx(5.0e12));
    CHECK(out.size() == 100);
}

TEST_CASE("u1 gating leaves a nodal line at the input carrier") {
    QpgSetup s = preset_engineered();
    s.gate_coefficients = {0.0, 1.0};
    s.n_points = 257;  // odd: the carrier is a sample
    const auto f = s.build();
    double peak = 0.0;
    for (Eigen::Index i = 0; i < f.values.rows(); ++i) peak = std::max(peak, f.values.row(i).squaredNorm());
    // sinc tails keep a few percent on the carrier row
    const double centre = f.values.row(128).squaredNorm();
    CHECK(centre < 0.05 * peak);
    CHECK(centre < f.values.row(127).squaredNorm());
    CHECK(centre < f.values.row(129).squaredNorm());
}

TEST_CASE("non-engineered crystal is strongly correlated") {
    const auto d = schmidt_decompose(preset_nonengineered().build(), 8);
    CHECK(d.kappa(0) > 0.2);
    CHECK(d.kappa(1) > 0.2);
    CHECK(schmidt_number(d) > 1.5);

    QpgSetup longer = preset_nonengineered();
    longer.material.length = 50e-3;
    const auto e = schmidt_decompose(longer.build(), 4);
    CHECK(e.kappa(0) * e.kappa(0) > 0.9);
}

TEST_CASE("normalization of a zero kernel fails") {
    const FrequencyGrid g(1.0, 1.0, 16);
    TransferMatrix t{g, g, ComplexMatrix::Zero(16, 16)};
    CHECK_THROWS_AS(t.normalize(), NumericError);
}

TEST_CASE("residual norm") {
    QpgSetup s = preset_engineered();
    s.n_points = 64;
    const auto a = s.build();
    CHECK(residual_norm(a, a) == 0.0);
    TransferMatrix z = a;
    z.values.setZero();
    CHECK(residual_norm(a, z) == Approx(1.0).epsilon(1e-12));
}
