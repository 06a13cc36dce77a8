#include "qpg/schmidt.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "qpg/error.hpp"

namespace qpg {
namespace {

struct Moments {
    double second = 0.0;
    double fourth = 0.0;
};

Moments moments(std::span<const double> kappa) {
    Moments m;
    for (double k : kappa) {
        m.second += k * k;
        m.fourth += k * k * k * k;
    }
    return m;
}

}  // namespace

MatrixSchmidt matrix_schmidt(const Eigen::MatrixXcd& m, std::size_t rank) {
    const auto full = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
    if (rank > full) {
        throw ValidationError("rank_too_large", "requested rank " + std::to_string(rank) + " exceeds " +
                                                    std::to_string(full));
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
        throw NumericError("svd_failed", "singular value decomposition failed");
    }
    MatrixSchmidt out;
    const auto& sv = svd.singularValues();
    out.values.assign(sv.data(), sv.data() + sv.size());

    const Eigen::MatrixXcd& u = svd.matrixU();
    const Eigen::MatrixXcd& v = svd.matrixV();
    const auto r = static_cast<Eigen::Index>(rank);
    out.left.resize(m.rows(), r);
    out.right.resize(m.cols(), r);
    for (Eigen::Index k = 0; k < r; ++k) {
        Eigen::Index peak = 0;
        const double peak_mag = u.col(k).cwiseAbs().maxCoeff(&peak);
        const cplx phase = peak_mag > 0.0 ? u(peak, k) / peak_mag : cplx{1.0};
        out.left.col(k) = u.col(k) * std::conj(phase);
        out.left(peak, k) = peak_mag;  // exactly real, not just to rounding
        // m = U S V^H, so the right factor is conj(V) and carries the removed phase.
        out.right.col(k) = v.col(k).conjugate() * phase;
    }
    return out;
}

SchmidtDecomposition schmidt_decompose(const TransferMatrix& f, std::size_t rank) {
    const double norm = f.norm();
    if (std::abs(norm - 1.0) > 1e-9) throw DomainError("not_normalized", "kernel must have unit weighted norm");

    const double dw_in = f.input_grid.spacing();
    const double dw_out = f.output_grid.spacing();
    const MatrixSchmidt ms = matrix_schmidt(f.values * std::sqrt(dw_in * dw_out), rank);

    SchmidtDecomposition d{f.input_grid, f.output_grid, ms.values, {}, {}, {}};
    const double in_scale = 1.0 / std::sqrt(dw_in);
    const double out_scale = 1.0 / std::sqrt(dw_out);
    d.input_modes.reserve(rank);
    d.output_modes.reserve(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        const Eigen::VectorXcd phi = ms.left.col(kk) * in_scale;
        const Eigen::VectorXcd psi = ms.right.col(kk) * out_scale;
        d.input_modes.emplace_back(f.input_grid, std::vector<cplx>(phi.data(), phi.data() + phi.size()),
                                   "phi" + std::to_string(k));
        d.output_modes.emplace_back(f.output_grid, std::vector<cplx>(psi.data(), psi.data() + psi.size()),
                                    "psi" + std::to_string(k));

        const double kap = d.coefficients[k];
        const bool below = k + 1 < d.coefficients.size() &&
                           std::abs(kap - d.coefficients[k + 1]) < SchmidtDecomposition::kDegeneracyTolerance;
        const bool above = k > 0 && std::abs(kap - d.coefficients[k - 1]) < SchmidtDecomposition::kDegeneracyTolerance;
        d.unstable_basis.push_back(below || above);
    }
    return d;
}

double schmidt_number(std::span<const double> kappa) {
    const Moments m = moments(kappa);
    if (!(m.fourth > 0.0)) throw DomainError("zero_coefficients", "Schmidt coefficients are all zero");
    return m.second * m.second / m.fourth;
}

double schmidt_number(const SchmidtDecomposition& d) { return schmidt_number(d.coefficients); }

double purity(std::span<const double> kappa) { return 1.0 / schmidt_number(kappa); }

double purity(const SchmidtDecomposition& d) { return purity(d.coefficients); }

TransferMatrix reconstruct(const SchmidtDecomposition& d, std::size_t r) {
    if (r > d.rank_kept()) {
        throw ValidationError("rank_out_of_range", "reconstruct rank exceeds the kept modes");
    }
    const auto n_in = static_cast<Eigen::Index>(d.input_grid.size());
    const auto n_out = static_cast<Eigen::Index>(d.output_grid.size());
    TransferMatrix t{d.input_grid, d.output_grid, ComplexMatrix::Zero(n_in, n_out)};
    for (std::size_t k = 0; k < r; ++k) {
        const Eigen::Map<const Eigen::VectorXcd> phi(d.input_modes[k].values.data(), n_in);
        const Eigen::Map<const Eigen::RowVectorXcd> psi(d.output_modes[k].values.data(), n_out);
        t.values.noalias() += d.coefficients[k] * (phi * psi);
    }
    return t;
}

}  // namespace qpg
