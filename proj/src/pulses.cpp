#include "qpg/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpg/error.hpp"
#include "qpg/simd/kernels.hpp"
#include "qpg/units.hpp"

namespace qpg {

FrequencyGrid::FrequencyGrid(double center, double span, std::size_t n_points)
    : center_(center), span_(span), n_(n_points), spacing_(0.0) {
    if (n_points < kMinPoints) {
        throw DomainError("grid_too_small", "frequency grid needs at least 16 points");
    }
    if (!(span > 0.0) || !std::isfinite(span) || !std::isfinite(center)) {
        throw DomainError("bad_grid", "frequency grid span must be positive and finite");
    }
    spacing_ = span / static_cast<double>(n_points - 1);
}

std::vector<double> FrequencyGrid::samples() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
}

SpectralAmplitude::SpectralAmplitude(FrequencyGrid g, std::vector<cplx> v, std::string l)
    : grid(g), values(std::move(v)), label(std::move(l)) {
    if (values.size() != grid.size()) {
        throw DomainError("length_mismatch", "amplitude length does not match its grid");
    }
}

double SpectralAmplitude::norm() const { return std::sqrt(simd::norm_sq(values) * grid.spacing()); }

SpectralAmplitude SpectralAmplitude::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw NumericError("zero_norm", "cannot normalise a zero amplitude");
    SpectralAmplitude out = *this;
    simd::scale(out.values, 1.0 / n);
    return out;
}

double hermite_coverage(int order) {
    return std::max(6.0, std::sqrt(2.0 * order + 1.0) + 4.0);
}

std::vector<double> hermite_samples(int order, double center, double width, const FrequencyGrid& grid) {
    std::vector<double> out(grid.size());
    const double norm0 = std::pow(kPi, -0.25) / std::sqrt(width);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = (grid[i] - center) / width;
        double prev = 0.0;
        double cur = norm0 * std::exp(-0.5 * x * x);
        for (int n = 0; n < order; ++n) {
            const double next = std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
            prev = cur;
            cur = next;
        }
        out[i] = cur;
    }
    return out;
}

SpectralAmplitude hermite_mode(const ModeSpec& spec, const FrequencyGrid& grid, int max_order) {
    if (!(spec.width > 0.0)) throw DomainError("bad_width", "mode width must be positive");
    if (spec.order < 0 || spec.order > max_order) {
        throw DomainError("bad_order", "mode order outside [0, " + std::to_string(max_order) + "]");
    }
    const auto raw = hermite_samples(spec.order, spec.center, spec.width, grid);
    std::vector<cplx> values(raw.begin(), raw.end());
    SpectralAmplitude mode(grid, std::move(values), "u" + std::to_string(spec.order));

    const double reach = hermite_coverage(spec.order) * spec.width;
    if (grid.front() > spec.center - reach || grid.back() < spec.center + reach) {
        const double n = mode.norm();
        const double lost = std::max(0.0, 1.0 - n * n);
        std::ostringstream msg;
        msg << "grid does not cover u" << spec.order << " to +-" << hermite_coverage(spec.order)
            << " widths; lost norm " << lost;
        throw TruncationError(msg.str(), lost);
    }
    return mode.normalized();
}

SpectralAmplitude superpose(std::span<const cplx> coeffs, std::span<const SpectralAmplitude> modes) {
    if (coeffs.empty() || coeffs.size() != modes.size()) {
        throw DomainError("length_mismatch", "superpose needs one coefficient per mode");
    }
    if (std::all_of(coeffs.begin(), coeffs.end(), [](cplx c) { return c == cplx{}; })) {
        throw DomainError("zero_coefficients", "superpose needs at least one nonzero coefficient");
    }
    const FrequencyGrid& grid = modes.front().grid;
    std::vector<cplx> acc(grid.size());
    std::string label;
    for (std::size_t m = 0; m < modes.size(); ++m) {
        if (!(modes[m].grid == grid)) throw DomainError("grid_mismatch", "superpose: modes on different grids");
        simd::axpy(coeffs[m], modes[m].values, acc);
        if (coeffs[m] != cplx{}) label += (label.empty() ? "" : "+") + modes[m].label;
    }
    SpectralAmplitude out(grid, std::move(acc), label);
    if (!(out.norm() > 0.0)) throw NumericError("zero_superposition", "coefficients cancel to a zero amplitude");
    return out.normalized();
}

cplx overlap(const SpectralAmplitude& a, const SpectralAmplitude& b) {
    if (!(a.grid == b.grid)) throw DomainError("grid_mismatch", "overlap: amplitudes on different grids");
    return simd::dot_conj(a.values, b.values) * a.grid.spacing();
}

}  // namespace qpg
