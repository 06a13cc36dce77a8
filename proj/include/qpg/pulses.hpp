#pragma once

// Frequency grids and broadband spectral modes.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qpg {

using cplx = std::complex<double>;

/// Uniform angular-frequency sampling center +- span/2 (rad/s).
class FrequencyGrid {
public:
    static constexpr std::size_t kMinPoints = 16;

    FrequencyGrid(double center, double span, std::size_t n_points);

    double center() const noexcept { return center_; }
    double span() const noexcept { return span_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }

    double operator[](std::size_t i) const noexcept {
        return center_ + (static_cast<double>(i) - 0.5 * static_cast<double>(n_ - 1)) * spacing_;
    }
    double front() const noexcept { return (*this)[0]; }
    double back() const noexcept { return (*this)[n_ - 1]; }

    std::vector<double> samples() const;

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
    double center_;
    double span_;
    std::size_t n_;
    double spacing_;
};

/// Hermite-Gauss mode u_k centred at `center` with amplitude width `width`.
struct ModeSpec {
    static constexpr int kDefaultMaxOrder = 20;

    int order = 0;
    double center = 0.0;
    double width = 0.0;
};

/// Complex amplitude sampled on a grid. The inner product is the rectangle
/// rule with weight grid.spacing().
struct SpectralAmplitude {
    FrequencyGrid grid;
    std::vector<cplx> values;
    std::string label;

    SpectralAmplitude(FrequencyGrid g, std::vector<cplx> v, std::string l = {});

    double norm() const;
    SpectralAmplitude normalized() const;
};

/// Normalised u_k(w) ~ exp(-x^2/2) H_k(x), x = (w - center)/width, evaluated
/// with the orthonormal three-term recurrence. Throws TruncationError when the
/// grid does not cover center +- max(6, sqrt(2k+1)+4) width.
SpectralAmplitude hermite_mode(const ModeSpec& spec, const FrequencyGrid& grid,
                               int max_order = ModeSpec::kDefaultMaxOrder);

/// Raw Hermite-function samples without coverage checks or renormalisation.
std::vector<double> hermite_samples(int order, double center, double width, const FrequencyGrid& grid);

/// Half-width (in units of `width`) a grid must cover for a mode of this order.
double hermite_coverage(int order);

/// Normalised linear combination of modes on a common grid.
SpectralAmplitude superpose(std::span<const cplx> coeffs, std::span<const SpectralAmplitude> modes);

/// <a|b> = sum conj(a) b dw.
cplx overlap(const SpectralAmplitude& a, const SpectralAmplitude& b);

}  // namespace qpg
