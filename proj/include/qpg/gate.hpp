#pragma once

// Beam-splitter dynamics of the gate on Schmidt mode pairs: conversion
// efficiency, coupling calibration, mode-selectivity maps and heralding.

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qpg/schmidt.hpp"
#include "qpg/transfer.hpp"

namespace qpg {

/// Coupling theta = gamma * sqrt(P). The default gamma puts theta = pi/2 at 1 W.
struct GateSpec {
    static constexpr double kDefaultGamma = 1.5707963267948966;

    double theta = 0.0;

    static GateSpec from_theta(double theta);
    static GateSpec from_power(double watts, double gamma = kDefaultGamma);
};

/// eta = sin^2(theta * kappa).
double efficiency(const GateSpec& gate, double kappa);

struct EfficiencyTable {
    static constexpr std::size_t kModes = 4;

    std::vector<double> theta;
    std::array<std::vector<double>, kModes> eta;
};

EfficiencyTable efficiency_curve(const SchmidtDecomposition& d, double theta_max, std::size_t n_steps);

/// Smallest theta with eta_k = 1, pi / (2 kappa_k).
double optimal_coupling(const SchmidtDecomposition& d, std::size_t k);

struct OverlapScenario {
    QpgSetup setup;               // setup.fwhm_ratio = gating FWHM / input FWHM
    int max_gate_order = 10;
    int max_input_order = 10;
    bool matched = true;          // fit the input-mode width to the u0-gated kernel
    std::size_t rank = 4;
};

struct OverlapMatrix {
    std::vector<std::vector<double>> entries;  // [gate order k][input order l] = |<u~_l|phi_k>|^2
    bool matched = true;
    double fwhm_ratio = 1.0;
    double input_width = 0.0;                  // sigma of the comparison modes, rad/s
    std::vector<double> dominant_kappa;        // kappa of the mode used per row
    std::vector<double> row_deficit;           // 1 - sum_l entries[k][l]
    std::vector<double> ridge_clipped;         // clipped-mass fraction per kernel

    double diagonal(std::size_t k) const { return entries[k][k]; }
    double off_target(std::size_t k) const;
};

/// Width of a centred u0 that maximises |<u0|mode>|.
double fit_input_width(const SpectralAmplitude& mode, double center);

/// |<u~_l(center, width)|mode>|^2 for l = 0..max_order.
std::vector<double> hermite_overlaps(const SpectralAmplitude& mode, double center, double width, int max_order);

OverlapMatrix mode_overlap_matrix(const OverlapScenario& scenario);

struct HeraldScenario {
    std::vector<double> pdc_coefficients;  // c_k, sum c^2 = 1
    Eigen::MatrixXcd conversion;           // M[m, k] = c_k sin(theta kappa_m) <phi_m|A~_k>

    void validate() const;
};

/// Geometric source c_k^2 = (1 - mu) mu^k over n modes, renormalised.
std::vector<double> geometric_source(double mu, std::size_t n);

HeraldScenario make_herald_scenario(const SchmidtDecomposition& d, const GateSpec& gate,
                                    std::span<const double> pdc_coefficients,
                                    std::span<const SpectralAmplitude> source_modes);

/// Purity Tr(rho^2)/Tr(rho)^2 of the photon heralded by a mode-blind click in
/// the sum-frequency arm, rho = M^H M.
double herald_purity(const Eigen::MatrixXcd& conversion);
double herald_purity(const HeraldScenario& scenario);

}  // namespace qpg
