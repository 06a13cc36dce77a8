#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <thread>

#include "qpg/error.hpp"
#include "qpg/gate.hpp"
#include "qpg/scenario.hpp"
#include "qpg/schmidt.hpp"
#include "qpg/units.hpp"

namespace qpg {

namespace {

using nlohmann::json;

std::string grid_meta(std::string_view name, const FrequencyGrid& g) {
    return " " + std::string(name) + "_center=" + format_double(g.center()) + " " + std::string(name) +
           "_span=" + format_double(g.span()) + " " + std::string(name) + "_n=" + std::to_string(g.size());
}

void append_row(std::string& out, std::span<const double> row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_double(row[i]);
    }
    out += '\n';
}

std::string complex_matrix_csv(std::string header, const Eigen::Ref<const Eigen::MatrixXcd>& m) {
    std::string out = std::move(header);
    std::vector<double> row(static_cast<std::size_t>(2 * m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row[static_cast<std::size_t>(2 * j)] = m(i, j).real();
            row[static_cast<std::size_t>(2 * j + 1)] = m(i, j).imag();
        }
        append_row(out, row);
    }
    return out;
}

std::string modes_csv(std::string header, const std::vector<SpectralAmplitude>& modes, std::size_t count) {
    const std::size_t n = std::min(count, modes.size());
    std::string out = std::move(header);
    out += "omega";
    for (std::size_t k = 0; k < n; ++k) {
        out += ",re" + std::to_string(k) + ",im" + std::to_string(k);
    }
    out += '\n';
    const FrequencyGrid& g = modes.front().grid;
    std::vector<double> row(1 + 2 * n);
    for (std::size_t i = 0; i < g.size(); ++i) {
        row[0] = g[i];
        for (std::size_t k = 0; k < n; ++k) {
            row[1 + 2 * k] = modes[k].values[i].real();
            row[2 + 2 * k] = modes[k].values[i].imag();
        }
        append_row(out, row);
    }
    return out;
}

std::vector<double> leading(const SchmidtDecomposition& d, std::size_t n) {
    std::vector<double> out;
    for (std::size_t k = 0; k < std::min(n, d.coefficients.size()); ++k) out.push_back(d.coefficients[k]);
    return out;
}

double tail_mass(const SchmidtDecomposition& d) {
    double t = 0.0;
    for (std::size_t k = d.rank_kept(); k < d.coefficients.size(); ++k) t += d.coefficients[k] * d.coefficients[k];
    return t;
}

void run_phasematch(const Scenario& s, Artifacts& a) {
    const QpgSetup setup = s.setup();
    const PhasematchingSpec spec = setup.calibrated_material();
    const FrequencyGrid in = setup.input_grid();
    const FrequencyGrid out = setup.output_grid();

    std::string csv = "# rows=input cols=output value=|Phi|^2" + grid_meta("input", in) + grid_meta("output", out) + "\n";
    std::vector<double> row(out.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        for (std::size_t o = 0; o < out.size(); ++o) {
            row[o] = std::norm(phasematching_amplitude(phase_mismatch(in[i], out[o], spec), spec.length));
        }
        append_row(csv, row);
    }
    a.files[a.prefix + "_phasematch.csv"] = std::move(csv);

    const double in_um = s.input_center_nm * 1e-3;
    const double gate_um = s.gating_center_nm * 1e-3;
    const auto& pol = spec.polarization;
    a.summary["results"] = {
        {"delta_k_offset", spec.delta_k_offset},
        {"offset_fraction", std::abs(spec.delta_k_offset) / spec.grating_wavenumber()},
        {"grating_wavenumber", spec.grating_wavenumber()},
        {"input_group_index_shift", spec.input_group_index_shift},
        {"group_index_input", group_index(in_um, spec.temperature, pol.input)},
        {"group_index_gate", group_index(gate_um, spec.temperature, pol.gate)},
        {"ridge_angle_deg", ridge_angle_deg(spec, s.input_center_nm, s.gating_center_nm)},
        {"sum_frequency_nm", sum_frequency(s.input_center_nm, s.gating_center_nm)},
    };
}

void run_transfer(const Scenario& s, Artifacts& a) {
    const TransferMatrix f = s.setup().build();
    a.files[a.prefix + "_transfer.csv"] = complex_matrix_csv(
        "# rows=input cols=output pairs=re,im" + grid_meta("input", f.input_grid) + grid_meta("output", f.output_grid) +
            "\n",
        f.values);
    a.summary["results"] = {
        {"clipped_fraction", f.clipped_fraction},
        {"boundary_fraction", f.boundary_fraction},
        {"sum_frequency_nm", sum_frequency(s.input_center_nm, s.gating_center_nm)},
        {"output_centroid_nm", omega_to_wavelength(f.output_centroid())},
        {"input_centroid_nm", omega_to_wavelength(f.input_centroid())},
    };
}

void run_schmidt(const Scenario& s, Artifacts& a) {
    const TransferMatrix f = s.setup().build();
    const SchmidtDecomposition d = schmidt_decompose(f, s.rank);
    std::string kappa = "# rank_kept=" + std::to_string(d.rank_kept()) + "\nk,kappa\n";
    for (std::size_t k = 0; k < d.rank_kept(); ++k) {
        kappa += std::to_string(k) + "," + format_double(d.coefficients[k]) + "\n";
    }
    a.files[a.prefix + "_kappa.csv"] = std::move(kappa);
    a.files[a.prefix + "_input_modes.csv"] =
        modes_csv("#" + grid_meta("input", f.input_grid) + "\n", d.input_modes, 4);
    a.files[a.prefix + "_output_modes.csv"] =
        modes_csv("#" + grid_meta("output", f.output_grid) + "\n", d.output_modes, 4);
    a.summary["results"] = {
        {"kappa", leading(d, d.rank_kept())},
        {"schmidt_number", schmidt_number(d)},
        {"purity", purity(std::span<const double>(d.coefficients))},
        {"unstable_basis", d.unstable_basis},
        {"tail_mass", tail_mass(d)},
        {"theta_opt", optimal_coupling(d, 0)},
        {"clipped_fraction", f.clipped_fraction},
    };
}

void run_efficiency(const Scenario& s, Artifacts& a) {
    const TransferMatrix f = s.setup().build();
    const SchmidtDecomposition d = schmidt_decompose(f, std::min<std::size_t>(s.rank, EfficiencyTable::kModes));
    const EfficiencyTable t = efficiency_curve(d, s.theta_max, s.steps);
    std::string csv = "# modes=" + std::to_string(EfficiencyTable::kModes) + " theta_max=" + format_double(s.theta_max) +
                      " steps=" + std::to_string(s.steps) + "\ntheta,eta0,eta1,eta2,eta3\n";
    std::vector<double> row(1 + EfficiencyTable::kModes);
    for (std::size_t i = 0; i < t.theta.size(); ++i) {
        row[0] = t.theta[i];
        for (std::size_t k = 0; k < EfficiencyTable::kModes; ++k) row[1 + k] = t.eta[k][i];
        append_row(csv, row);
    }
    a.files[a.prefix + "_efficiency.csv"] = std::move(csv);

    auto etas_at = [&](double theta) {
        std::vector<double> e;
        for (std::size_t k = 0; k < EfficiencyTable::kModes; ++k) e.push_back(efficiency({theta}, d.kappa(k)));
        return e;
    };
    const double theta_opt = optimal_coupling(d, 0);
    json r = {
        {"kappa", leading(d, EfficiencyTable::kModes)},
        {"theta_opt", theta_opt},
        {"eta_at_theta_opt", etas_at(theta_opt)},
    };
    if (const auto theta = s.coupling()) {
        r["theta"] = *theta;
        r["eta_at_theta"] = etas_at(*theta);
    }
    a.summary["results"] = std::move(r);
}

void run_selectivity(const Scenario& s, Artifacts& a) {
    OverlapScenario os;
    os.setup = s.setup();
    os.max_gate_order = s.max_gate_order;
    os.max_input_order = s.max_input_order;
    os.matched = s.matched;
    os.rank = std::min<std::size_t>(s.rank, 4);
    const OverlapMatrix m = mode_overlap_matrix(os);

    std::string csv = "# rows=gating_order cols=input_order matched=" + std::string(m.matched ? "true" : "false") +
                      " fwhm_ratio=" + format_double(m.fwhm_ratio) + " input_width=" + format_double(m.input_width) +
                      "\n";
    for (const auto& row : m.entries) append_row(csv, row);
    a.files[a.prefix + "_overlap.csv"] = std::move(csv);

    std::vector<double> diagonal, off_target;
    double odd_max = 0.0, same_parity_off_max = 0.0;
    for (std::size_t k = 0; k < m.entries.size(); ++k) {
        if (k < m.entries[k].size()) {
            diagonal.push_back(m.diagonal(k));
            off_target.push_back(m.off_target(k));
        }
        for (std::size_t l = 0; l < m.entries[k].size(); ++l) {
            if ((k + l) % 2 == 1) {
                odd_max = std::max(odd_max, m.entries[k][l]);
            } else if (k != l) {
                same_parity_off_max = std::max(same_parity_off_max, m.entries[k][l]);
            }
        }
    }
    a.summary["results"] = {
        {"matched", m.matched},
        {"fwhm_ratio", m.fwhm_ratio},
        {"input_width", m.input_width},
        {"input_width_over_gate_sigma", m.input_width / os.setup.gate_sigma()},
        {"diagonal", diagonal},
        {"off_target", off_target},
        {"row_deficit", m.row_deficit},
        {"dominant_kappa", m.dominant_kappa},
        {"clipped_fraction", m.ridge_clipped},
        {"max_odd_parity", odd_max},
        {"max_same_parity_off_diagonal", same_parity_off_max},
    };
}

void run_herald(const Scenario& s, Artifacts& a) {
    const QpgSetup setup = s.setup();
    const TransferMatrix f = setup.build();
    const SchmidtDecomposition d = schmidt_decompose(f, s.rank);
    const double center = wavelength_to_omega(s.input_center_nm);
    const double width = fit_input_width(d.input_modes.front(), center);
    std::vector<SpectralAmplitude> source;
    for (std::size_t k = 0; k < s.source_modes; ++k) {
        source.push_back(hermite_mode({static_cast<int>(k), center, width}, f.input_grid));
    }
    const double mu = (s.source_schmidt_number - 1.0) / (s.source_schmidt_number + 1.0);
    const std::vector<double> c = geometric_source(mu, s.source_modes);
    const GateSpec gate{s.coupling().value_or(optimal_coupling(d, 0))};
    const HeraldScenario h = make_herald_scenario(d, gate, c, source);

    a.files[a.prefix + "_conversion.csv"] =
        complex_matrix_csv("# rows=output_mode cols=source_mode pairs=re,im theta=" + format_double(gate.theta) + "\n",
                           h.conversion);
    a.summary["results"] = {
        {"purity_before", purity(std::span<const double>(c))},
        {"purity_after", herald_purity(h)},
        {"herald_probability", h.conversion.squaredNorm()},
        {"theta", gate.theta},
        {"kappa", leading(d, 4)},
        {"source_coefficients", c},
        {"source_width", width},
    };
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("unwritable", "cannot write " + p.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError("unwritable", "failed writing " + p.string());
}

std::filesystem::path ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ValidationError("unwritable", "cannot create " + dir.string() + ": " + ec.message());
    return dir;
}

}  // namespace

Artifacts run_scenario(const Scenario& s) {
    s.validate();
    Artifacts a;
    a.prefix = s.effective_prefix();
    a.summary = {{"task", task_name(s.task)}, {"scenario", to_json(s)}};
    switch (s.task) {
        case Task::Phasematch: run_phasematch(s, a); break;
        case Task::Transfer: run_transfer(s, a); break;
        case Task::Schmidt: run_schmidt(s, a); break;
        case Task::Efficiency: run_efficiency(s, a); break;
        case Task::Selectivity: run_selectivity(s, a); break;
        case Task::Herald: run_herald(s, a); break;
    }
    json names = json::array();
    for (const auto& [name, content] : a.files) names.push_back(name);
    a.summary["files"] = names;
    return a;
}

std::vector<std::filesystem::path> write_artifacts(const Artifacts& a, const std::filesystem::path& dir) {
    ensure_dir(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] : a.files) {
        written.push_back(dir / name);
        write_file(written.back(), content);
    }
    written.push_back(dir / (a.prefix + "_summary.json"));
    write_file(written.back(), a.summary.dump(2) + "\n");
    return written;
}

SweepResult sweep(const Scenario& base, std::string_view parameter, const std::vector<std::string>& values,
                  unsigned threads) {
    if (values.empty()) throw ValidationError("empty_values", "sweep needs at least one value");
    if (parameter == "task" || parameter.starts_with("output.")) {
        throw ValidationError("unknown_parameter", "'" + std::string(parameter) + "' cannot be swept");
    }
    std::vector<Scenario> runs;
    const std::string prefix = base.effective_prefix();
    for (std::size_t i = 0; i < values.size(); ++i) {
        Scenario s = base;
        set_parameter(s, parameter, values[i]);
        char tag[16];
        std::snprintf(tag, sizeof tag, "_%03zu", i);
        s.prefix = prefix + tag;
        s.validate();
        runs.push_back(std::move(s));
    }

    SweepResult r;
    r.prefix = prefix;
    r.parameter = std::string(parameter);
    r.values = values;
    r.runs.resize(runs.size());
    std::vector<std::exception_ptr> failures(runs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) {
            try {
                r.runs[i] = run_scenario(runs[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(runs.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (auto& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    json entries = json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        entries.push_back({{"value", get_parameter(runs[i], parameter)},
                           {"prefix", r.runs[i].prefix},
                           {"summary", r.runs[i].prefix + "_summary.json"},
                           {"files", r.runs[i].summary["files"]},
                           {"results", r.runs[i].summary["results"]}});
    }
    r.index = {{"parameter", r.parameter}, {"base", to_json(base)}, {"runs", entries}};
    return r;
}

std::vector<std::filesystem::path> write_sweep(const SweepResult& r, const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> written;
    for (const auto& run : r.runs) {
        auto w = write_artifacts(run, dir);
        written.insert(written.end(), w.begin(), w.end());
    }
    written.push_back(ensure_dir(dir) / (r.prefix + "_sweep.json"));
    write_file(written.back(), r.index.dump(2) + "\n");
    return written;
}

}  // namespace qpg
