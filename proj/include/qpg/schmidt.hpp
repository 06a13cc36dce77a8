#pragma once

// Schmidt decomposition of a transfer kernel,
// f(w_in, w_out) = sum_k kappa_k phi_k(w_in) psi_k(w_out).

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "qpg/pulses.hpp"
#include "qpg/transfer.hpp"

namespace qpg {

struct SchmidtDecomposition {
    static constexpr std::size_t kDefaultRank = 32;
    static constexpr double kDegeneracyTolerance = 1e-12;

    FrequencyGrid input_grid;
    FrequencyGrid output_grid;
    std::vector<double> coefficients;             // full spectrum, descending
    std::vector<SpectralAmplitude> input_modes;   // phi_k, first rank_kept()
    std::vector<SpectralAmplitude> output_modes;  // psi_k
    // Mode pair k shares its coefficient with a neighbour within
    // kDegeneracyTolerance; any rotation inside that block is equally valid.
    std::vector<bool> unstable_basis;

    std::size_t rank_kept() const noexcept { return input_modes.size(); }
    double kappa(std::size_t k) const noexcept { return k < coefficients.size() ? coefficients[k] : 0.0; }
};

/// Plain-matrix core: m = sum_k values[k] left.col(k) right.col(k)^T, with
/// the same phase convention as schmidt_decompose.
struct MatrixSchmidt {
    std::vector<double> values;  // descending, min(rows, cols) entries
    Eigen::MatrixXcd left;       // rows x rank
    Eigen::MatrixXcd right;      // cols x rank
};

MatrixSchmidt matrix_schmidt(const Eigen::MatrixXcd& m, std::size_t rank);

/// SVD of the quadrature-weighted kernel. Each phi_k is rotated so its
/// largest-magnitude sample is real and positive; psi_k takes the conjugate
/// phase.
SchmidtDecomposition schmidt_decompose(const TransferMatrix& f,
                                       std::size_t rank = SchmidtDecomposition::kDefaultRank);

/// K = 1 / sum kappa^4 for sum kappa^2 = 1.
double schmidt_number(std::span<const double> kappa);
double schmidt_number(const SchmidtDecomposition& d);

/// sum kappa^4: heralded purity of an unfiltered source with these coefficients.
double purity(std::span<const double> kappa);
double purity(const SchmidtDecomposition& d);

/// Rank-r partial sum of the decomposition.
TransferMatrix reconstruct(const SchmidtDecomposition& d, std::size_t r);

}  // namespace qpg
