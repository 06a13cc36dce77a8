#include "qpg/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "qpg/error.hpp"
#include "qpg/simd/kernels.hpp"
#include "qpg/units.hpp"

namespace qpg {
namespace {

// Prefix sums of |alpha|^2 dw for the clipped-mass estimate.
std::vector<double> cumulative_mass(const SpectralAmplitude& a) {
    std::vector<double> cum(a.values.size() + 1, 0.0);
    for (std::size_t j = 0; j < a.values.size(); ++j) cum[j + 1] = cum[j] + std::norm(a.values[j]);
    return cum;
}

// Mass of samples with frequency in [lo, hi].
double mass_between(const std::vector<double>& cum, const FrequencyGrid& g, double lo, double hi) {
    const double dg = g.spacing();
    const auto n = static_cast<double>(g.size());
    const double first = std::clamp(std::ceil((lo - g.front()) / dg), 0.0, n);
    const double last = std::clamp(std::floor((hi - g.front()) / dg) + 1.0, 0.0, n);
    if (last <= first) return 0.0;
    return cum[static_cast<std::size_t>(last)] - cum[static_cast<std::size_t>(first)];
}

double boundary_mass_fraction(const ComplexMatrix& f) {
    const auto rows = f.rows(), cols = f.cols();
    const Eigen::Index band_r = std::max<Eigen::Index>(1, rows / 50);
    const Eigen::Index band_c = std::max<Eigen::Index>(1, cols / 50);
    double total = 0.0, edge = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const bool edge_row = i < band_r || i >= rows - band_r;
        for (Eigen::Index o = 0; o < cols; ++o) {
            const double m = std::norm(f(i, o));
            total += m;
            if (edge_row || o < band_c || o >= cols - band_c) edge += m;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

}  // namespace

double TransferMatrix::norm() const {
    const double w = input_grid.spacing() * output_grid.spacing();
    return std::sqrt(simd::norm_sq(std::span<const cplx>(values.data(), static_cast<std::size_t>(values.size()))) * w);
}

void TransferMatrix::normalize() {
    const double n = norm();
    if (!(n > 0.0)) throw NumericError("zero_kernel", "transfer kernel vanishes on the window");
    simd::scale(std::span<cplx>(values.data(), static_cast<std::size_t>(values.size())), 1.0 / n);
}

double TransferMatrix::output_centroid() const {
    double m = 0.0, mw = 0.0;
    for (Eigen::Index o = 0; o < values.cols(); ++o) {
        const double col = values.col(o).squaredNorm();
        m += col;
        mw += col * output_grid[static_cast<std::size_t>(o)];
    }
    return mw / m;
}

double TransferMatrix::input_centroid() const {
    double m = 0.0, mw = 0.0;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        const double row = values.row(i).squaredNorm();
        m += row;
        mw += row * input_grid[static_cast<std::size_t>(i)];
    }
    return mw / m;
}

FrequencyGrid output_grid_for(const FrequencyGrid& input_grid, const FrequencyGrid& gate_grid,
                              std::size_t n_points) {
    return FrequencyGrid(input_grid.center() + gate_grid.center(), input_grid.span() + gate_grid.span(), n_points);
}

TransferMatrix build_transfer(const SpectralAmplitude& gating, const PhasematchingSpec& spec,
                              const FrequencyGrid& input_grid, const FrequencyGrid& output_grid,
                              const TransferOptions& options) {
    spec.validate();
    const std::size_t n_in = input_grid.size();
    const std::size_t n_out = output_grid.size();
    TransferMatrix t{input_grid, output_grid, ComplexMatrix(n_in, n_out)};

    const FrequencyGrid& gg = gating.grid;
    const auto k_out_poles = spec.sellmeier.poles(spec.temperature, spec.polarization.output);
    const auto k_gate_poles = spec.sellmeier.poles(spec.temperature, spec.polarization.gate);

    // Every wave must stay inside the fitted range over the whole window.
    const auto check_band = [&](double w_lo, double w_hi) {
        SellmeierModel::check_range(omega_to_wavelength(w_hi) * 1e-3, spec.temperature);
        SellmeierModel::check_range(omega_to_wavelength(w_lo) * 1e-3, spec.temperature);
    };
    check_band(input_grid.front(), input_grid.back());
    check_band(output_grid.front(), output_grid.back());
    check_band(std::max(output_grid.front() - input_grid.back(), gg.front()),
               std::min(output_grid.back() - input_grid.front(), gg.back()));

    const std::vector<double> w_out = output_grid.samples();
    std::vector<double> k_out(n_out);
    simd::sellmeier_wavenumber(k_out_poles, w_out, k_out);

    std::vector<double> k_in(n_in);
    for (std::size_t i = 0; i < n_in; ++i) {
        k_in[i] = wavenumber(input_grid[i], spec, spec.polarization.input) +
                  spec.input_group_index_shift * (input_grid[i] - spec.reference_input_omega) / kSpeedOfLight;
    }
    const double constant = spec.delta_k_offset - spec.grating_wavenumber();
    const double half_length = 0.5 * spec.length;

    auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
        std::vector<double> w_gate(n_out), k_gate(n_out), x(n_out);
        std::vector<cplx> amp(n_out);
        for (std::size_t i = row_begin; i < row_end; ++i) {
            const double wi = input_grid[i];
            for (std::size_t o = 0; o < n_out; ++o) {
                const double g = w_out[o] - wi;
                // Clamp keeps the Sellmeier evaluation finite where alpha is zero anyway.
                w_gate[o] = std::clamp(g, gg.front(), gg.back());
                const double pos = (g - gg.front()) / gg.spacing();
                cplx a{};
                if (pos >= 0.0 && pos <= static_cast<double>(gg.size() - 1)) {
                    const auto j = std::min(static_cast<std::size_t>(pos), gg.size() - 2);
                    const double frac = pos - static_cast<double>(j);
                    a = (1.0 - frac) * gating.values[j] + frac * gating.values[j + 1];
                }
                amp[o] = a;
            }
            simd::sellmeier_wavenumber(k_gate_poles, w_gate, k_gate);
            for (std::size_t o = 0; o < n_out; ++o) {
                x[o] = (k_out[o] - k_in[i] - k_gate[o] + constant) * half_length;
            }
            simd::sinc_phase_mul(x, amp, std::span<cplx>(t.values.row(static_cast<Eigen::Index>(i)).data(), n_out));
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_in));
    if (threads <= 1) {
        fill_rows(0, n_in);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n_in + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t b = w * chunk, e = std::min(n_in, b + chunk);
            if (b < e) pool.emplace_back(fill_rows, b, e);
        }
    }

    // Gate mass each row cannot see through the output window.
    const auto cum = cumulative_mass(gating);
    const double gate_mass = cum.back();
    double clipped = 0.0;
    for (std::size_t i = 0; i < n_in; ++i) {
        const double lo = output_grid.front() - input_grid[i];
        const double hi = output_grid.back() - input_grid[i];
        clipped += gate_mass - mass_between(cum, gg, lo, hi);
    }
    t.clipped_fraction = gate_mass > 0.0 ? clipped / (gate_mass * static_cast<double>(n_in)) : 0.0;

    t.boundary_fraction = boundary_mass_fraction(t.values);
    if (options.check_window && t.boundary_fraction > options.max_boundary_fraction) {
        std::ostringstream msg;
        msg << "phasematched ridge leaves the window: " << t.boundary_fraction * 100.0
            << "% of the kernel mass sits on the boundary";
        throw WindowError(msg.str(), t.boundary_fraction);
    }
    if (options.normalize) t.normalize();
    return t;
}

double residual_norm(const TransferMatrix& a, const TransferMatrix& b) {
    if (!(a.input_grid == b.input_grid) || !(a.output_grid == b.output_grid)) {
        throw DomainError("grid_mismatch", "residual_norm: kernels on different grids");
    }
    return std::sqrt((a.values - b.values).squaredNorm() * a.input_grid.spacing() * a.output_grid.spacing());
}

double QpgSetup::gate_sigma() const {
    return fwhm_to_sigma(wavelength_fwhm_to_omega(gate_center_nm, gate_fwhm_nm));
}

double QpgSetup::input_sigma() const {
    if (!(fwhm_ratio > 0.0)) throw DomainError("bad_ratio", "FWHM ratio must be positive");
    return gate_sigma() / fwhm_ratio;
}

PhasematchingSpec QpgSetup::calibrated_material() const {
    return calibrate(material, input_center_nm, gate_center_nm, calibration);
}

FrequencyGrid QpgSetup::gate_grid() const {
    return FrequencyGrid(wavelength_to_omega(gate_center_nm), span_sigmas * gate_sigma(), n_points);
}

FrequencyGrid QpgSetup::input_grid() const {
    return FrequencyGrid(wavelength_to_omega(input_center_nm), span_sigmas * std::max(gate_sigma(), input_sigma()),
                         n_points);
}

FrequencyGrid QpgSetup::output_grid() const { return output_grid_for(input_grid(), gate_grid(), n_points); }

SpectralAmplitude QpgSetup::gating_pulse() const {
    const FrequencyGrid grid = gate_grid();
    const double w0 = wavelength_to_omega(gate_center_nm);
    std::vector<SpectralAmplitude> modes;
    modes.reserve(gate_coefficients.size());
    for (std::size_t k = 0; k < gate_coefficients.size(); ++k) {
        modes.push_back(hermite_mode({static_cast<int>(k), w0, gate_sigma()}, grid));
    }
    return superpose(gate_coefficients, modes);
}

TransferMatrix QpgSetup::build(const TransferOptions& options) const {
    return build_transfer(gating_pulse(), calibrated_material(), input_grid(), output_grid(), options);
}

QpgSetup preset_engineered() {
    QpgSetup s;
    s.material.length = 50e-3;
    s.material.poling_period = 4.2e-6;
    s.material.temperature = 175.0;
    s.material.qpm_order = 1;
    s.calibration = Calibration::Horizontal;
    return s;
}

QpgSetup preset_nonengineered() {
    QpgSetup s = preset_engineered();
    s.material.length = 2e-3;
    return s;
}

}  // namespace qpg
