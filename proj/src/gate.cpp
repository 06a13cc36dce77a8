#include "qpg/gate.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "qpg/error.hpp"
#include "qpg/simd/kernels.hpp"
#include "qpg/units.hpp"

namespace qpg {

GateSpec GateSpec::from_theta(double theta) {
    if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("bad_theta", "coupling theta must be >= 0");
    return {theta};
}

GateSpec GateSpec::from_power(double watts, double gamma) {
    if (!(watts >= 0.0)) throw DomainError("bad_power", "gate power must be >= 0");
    if (!(gamma > 0.0)) throw DomainError("bad_gamma", "coupling calibration must be positive");
    return from_theta(gamma * std::sqrt(watts));
}

double efficiency(const GateSpec& gate, double kappa) {
    if (!(kappa >= 0.0 && kappa <= 1.0 + 1e-12)) throw DomainError("bad_kappa", "kappa must lie in [0, 1]");
    const double s = std::sin(gate.theta * kappa);
    return s * s;
}

EfficiencyTable efficiency_curve(const SchmidtDecomposition& d, double theta_max, std::size_t n_steps) {
    if (n_steps < 2) throw ValidationError("bad_steps", "efficiency curve needs at least two steps");
    if (!(theta_max > 0.0)) throw ValidationError("bad_theta_max", "theta_max must be positive");
    EfficiencyTable t;
    t.theta.resize(n_steps);
    for (auto& col : t.eta) col.resize(n_steps);
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double theta = theta_max * static_cast<double>(s) / static_cast<double>(n_steps - 1);
        t.theta[s] = theta;
        for (std::size_t k = 0; k < EfficiencyTable::kModes; ++k) {
            t.eta[k][s] = efficiency(GateSpec{theta}, std::min(1.0, d.kappa(k)));
        }
    }
    return t;
}

double optimal_coupling(const SchmidtDecomposition& d, std::size_t k) {
    const double kappa = d.kappa(k);
    if (!(kappa > 0.0)) throw NumericError("no_conversion", "mode " + std::to_string(k) + " has kappa = 0");
    return kPi / (2.0 * kappa);
}

double OverlapMatrix::off_target(std::size_t k) const {
    double s = 0.0;
    for (std::size_t l = 0; l < entries[k].size(); ++l) {
        if (l != k) s += entries[k][l];
    }
    return s;
}

std::vector<double> hermite_overlaps(const SpectralAmplitude& mode, double center, double width, int max_order) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_order) + 1);
    for (int l = 0; l <= max_order; ++l) {
        const SpectralAmplitude u = hermite_mode({l, center, width}, mode.grid);
        out.push_back(std::norm(overlap(u, mode)));
    }
    return out;
}

double fit_input_width(const SpectralAmplitude& mode, double center) {
    const FrequencyGrid& g = mode.grid;
    const double reach = std::min(center - g.front(), g.back() - center);
    const double lo = 4.0 * g.spacing();
    const double hi = reach / hermite_coverage(0);
    if (!(hi > lo)) throw NumericError("window", "input window too narrow to fit a mode width");
    auto loss = [&](double width) {
        const auto raw = hermite_samples(0, center, width, g);
        const std::vector<cplx> u(raw.begin(), raw.end());
        return -std::abs(simd::dot_conj(u, mode.values)) * g.spacing();
    };
    const auto best = boost::math::tools::brent_find_minima(loss, lo, hi, std::numeric_limits<double>::digits / 2);
    return best.first;
}

OverlapMatrix mode_overlap_matrix(const OverlapScenario& scenario) {
    if (scenario.max_gate_order < 0 || scenario.max_input_order < 0) {
        throw ValidationError("bad_order", "mode orders must be non-negative");
    }
    const auto rows = static_cast<std::size_t>(scenario.max_gate_order) + 1;
    std::vector<SpectralAmplitude> dominant;
    std::vector<double> kappa(rows), clipped(rows);
    dominant.reserve(rows);

    std::vector<std::optional<SpectralAmplitude>> slots(rows);
    std::vector<std::exception_ptr> failures(rows);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < rows; k = next++) {
            try {
                QpgSetup setup = scenario.setup;
                setup.gate_coefficients.assign(k + 1, cplx{});
                setup.gate_coefficients[k] = 1.0;
                const TransferMatrix f = setup.build();
                const SchmidtDecomposition d = schmidt_decompose(f, scenario.rank);
                slots[k] = d.input_modes.front();
                kappa[k] = d.coefficients.front();
                clipped[k] = f.clipped_fraction;
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    const unsigned n_workers =
        std::min<unsigned>(static_cast<unsigned>(rows), std::max(1u, std::thread::hardware_concurrency()));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
        worker();
    }
    for (auto& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    OverlapMatrix m;
    m.matched = scenario.matched;
    m.fwhm_ratio = scenario.setup.fwhm_ratio;
    m.dominant_kappa = kappa;
    m.ridge_clipped = clipped;
    const double center = wavelength_to_omega(scenario.setup.input_center_nm);
    m.input_width = scenario.matched ? fit_input_width(*slots[0], center) : scenario.setup.input_sigma();
    for (std::size_t k = 0; k < rows; ++k) {
        auto row = hermite_overlaps(*slots[k], center, m.input_width, scenario.max_input_order);
        double sum = 0.0;
        for (double v : row) sum += v;
        m.row_deficit.push_back(1.0 - sum);
        m.entries.push_back(std::move(row));
    }
    return m;
}

void HeraldScenario::validate() const {
    double s2 = 0.0;
    for (double c : pdc_coefficients) {
        if (c < 0.0) throw ValidationError("bad_source", "PDC coefficients must be non-negative");
        s2 += c * c;
    }
    if (std::abs(s2 - 1.0) > 1e-9) throw ValidationError("bad_source", "PDC coefficients must satisfy sum c^2 = 1");
    if (conversion.size() > 0 && conversion.cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
        throw ValidationError("bad_conversion", "conversion amplitudes must not exceed 1");
    }
}

std::vector<double> geometric_source(double mu, std::size_t n) {
    if (!(mu >= 0.0 && mu < 1.0) || n == 0) throw DomainError("bad_source", "geometric source needs 0 <= mu < 1, n > 0");
    std::vector<double> c(n);
    double s2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double c2 = (1.0 - mu) * std::pow(mu, static_cast<double>(k));
        c[k] = std::sqrt(c2);
        s2 += c2;
    }
    for (double& v : c) v /= std::sqrt(s2);
    return c;
}

HeraldScenario make_herald_scenario(const SchmidtDecomposition& d, const GateSpec& gate,
                                    std::span<const double> pdc_coefficients,
                                    std::span<const SpectralAmplitude> source_modes) {
    if (pdc_coefficients.size() != source_modes.size()) {
        throw ValidationError("bad_source", "one source mode per PDC coefficient");
    }
    HeraldScenario h;
    h.pdc_coefficients.assign(pdc_coefficients.begin(), pdc_coefficients.end());
    const auto out_modes = static_cast<Eigen::Index>(d.rank_kept());
    const auto in_modes = static_cast<Eigen::Index>(source_modes.size());
    h.conversion = Eigen::MatrixXcd::Zero(out_modes, in_modes);
    for (Eigen::Index m = 0; m < out_modes; ++m) {
        const double amp = std::sin(gate.theta * d.kappa(static_cast<std::size_t>(m)));
        for (Eigen::Index k = 0; k < in_modes; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            h.conversion(m, k) = pdc_coefficients[kk] * amp * overlap(d.input_modes[static_cast<std::size_t>(m)], source_modes[kk]);
        }
    }
    h.validate();
    return h;
}

double herald_purity(const Eigen::MatrixXcd& conversion) {
    const Eigen::MatrixXcd rho = conversion.adjoint() * conversion;
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw NumericError("no_herald", "conversion matrix is zero; nothing is heralded");
    return rho.squaredNorm() / (tr * tr);
}

double herald_purity(const HeraldScenario& scenario) {
    scenario.validate();
    return herald_purity(scenario.conversion);
}

}  // namespace qpg
