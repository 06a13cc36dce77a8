#pragma once

// Discretised SFG transfer kernel f(w_in, w_out) = alpha(w_out - w_in) Phi(w_in, w_out).

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qpg/dispersion.hpp"
#include "qpg/pulses.hpp"

namespace qpg {

using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Rows index the input grid, columns the output grid.
struct TransferMatrix {
    FrequencyGrid input_grid;
    FrequencyGrid output_grid;
    ComplexMatrix values;
    double clipped_fraction = 0.0;   // gate mass outside the window's reach, row-averaged
    double boundary_fraction = 0.0;  // kernel mass on the edge rows/columns

    /// sqrt(sum |f|^2 dw_in dw_out)
    double norm() const;
    void normalize();
    /// Centroid of the output marginal sum_i |f|^2, rad/s.
    double output_centroid() const;
    double input_centroid() const;
};

struct TransferOptions {
    bool normalize = true;
    bool check_window = true;
    double max_boundary_fraction = 0.05;
    unsigned threads = 0;  // 0: hardware concurrency
};

TransferMatrix build_transfer(const SpectralAmplitude& gating, const PhasematchingSpec& spec,
                              const FrequencyGrid& input_grid, const FrequencyGrid& output_grid,
                              const TransferOptions& options = {});

/// Output window centred at the sum of both centres, spanning both windows.
FrequencyGrid output_grid_for(const FrequencyGrid& input_grid, const FrequencyGrid& gate_grid,
                              std::size_t n_points);

/// Weighted Frobenius norm of a - b; both on the same grids.
double residual_norm(const TransferMatrix& a, const TransferMatrix& b);

/// Physical parameters of a QPG process and its discretisation.
struct QpgSetup {
    double input_center_nm = 1550.0;
    double gate_center_nm = 870.0;
    double gate_fwhm_nm = 0.635;   // intensity FWHM of the gating spectrum
    double fwhm_ratio = 1.0;       // gating FWHM / input FWHM, both in frequency
    std::vector<cplx> gate_coefficients{1.0};  // superposition over u_0, u_1, ...
    PhasematchingSpec material;
    Calibration calibration = Calibration::Horizontal;
    std::size_t n_points = 512;
    double span_sigmas = 20.0;

    double gate_sigma() const;
    double input_sigma() const;
    /// Material with the waveguide calibration applied.
    PhasematchingSpec calibrated_material() const;
    FrequencyGrid gate_grid() const;
    FrequencyGrid input_grid() const;
    FrequencyGrid output_grid() const;
    SpectralAmplitude gating_pulse() const;
    TransferMatrix build(const TransferOptions& options = {}) const;
};

/// L = 50 mm, Lambda = 4.2 um, 175 C, o-e-o, horizontal calibration, u0 gating.
QpgSetup preset_engineered();

/// Same wavelengths with a 2 mm crystal: phasematching wider than the gate,
/// strongly correlated kernel.
QpgSetup preset_nonengineered();

}  // namespace qpg
