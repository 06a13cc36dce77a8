#pragma once

// Declarative scenarios: an INI-style file selects a task and its blocks,
// run_scenario evaluates it in memory and write_artifacts puts it on disk.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qpg/dispersion.hpp"
#include "qpg/pulses.hpp"
#include "qpg/transfer.hpp"

namespace qpg {

enum class Task { Phasematch, Transfer, Schmidt, Efficiency, Selectivity, Herald };

Task parse_task(std::string_view text);
std::string_view task_name(Task t);

struct Scenario {
    Task task = Task::Schmidt;

    // [material]
    double length_mm = 50.0;
    double poling_period_um = 4.2;
    double temperature_c = 175.0;
    int qpm_order = 1;
    Polarization polarization;
    Calibration calibrate = Calibration::Horizontal;
    std::optional<double> delta_k_offset;  // rad/m, only with calibrate = none

    // [gating]
    double gating_center_nm = 870.0;
    double gating_fwhm_nm = 0.635;
    std::optional<int> gating_order;
    std::vector<cplx> gating_coefficients;

    // [input]
    double input_center_nm = 1550.0;
    double fwhm_ratio = 1.0;
    double span_sigma = 20.0;
    std::size_t n_points = 512;

    // [gate]
    std::optional<double> theta;
    std::optional<double> power_w;
    double gamma = 1.5707963267948966;
    double theta_max = 3.5;
    std::size_t steps = 101;

    // [schmidt]
    std::size_t rank = 32;

    // [selectivity]
    int max_gate_order = 10;
    int max_input_order = 10;
    bool matched = true;

    // [herald]
    double source_schmidt_number = 2.0;
    std::size_t source_modes = 11;

    // [output]
    std::string output_dir = ".";
    std::string prefix;  // defaults to the task name

    void validate() const;
    QpgSetup setup() const;
    std::optional<double> coupling() const;  // theta, or gamma sqrt(P)
    std::string effective_prefix() const;
};

/// Parses scenario text. Throws ParseError for malformed text and
/// ValidationError for unknown keys or invalid values.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical INI text; parse_scenario(to_ini(s)) reproduces s.
std::string to_ini(const Scenario& s);
nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

/// Dotted parameter paths such as "material.length_mm".
std::vector<std::string> parameter_paths();
void set_parameter(Scenario& s, std::string_view path, std::string_view value);
std::string get_parameter(const Scenario& s, std::string_view path);

/// Shortest round-trip decimal representation, locale independent.
std::string format_double(double v);

struct Artifacts {
    std::string prefix;
    std::map<std::string, std::string> files;  // file name -> content
    nlohmann::json summary;
};

Artifacts run_scenario(const Scenario& s);
/// Writes every file plus <prefix>_summary.json into dir; returns the paths.
std::vector<std::filesystem::path> write_artifacts(const Artifacts& a, const std::filesystem::path& dir);

struct SweepResult {
    std::string prefix;  // index goes to <prefix>_sweep.json
    std::string parameter;
    std::vector<std::string> values;
    std::vector<Artifacts> runs;
    nlohmann::json index;
};

SweepResult sweep(const Scenario& base, std::string_view parameter, const std::vector<std::string>& values,
                  unsigned threads = 0);
std::vector<std::filesystem::path> write_sweep(const SweepResult& r, const std::filesystem::path& dir);

struct Preset {
    std::string_view name;
    std::string_view description;
    std::string_view text;
};

const std::vector<Preset>& presets();
const Preset& find_preset(std::string_view name);

}  // namespace qpg
