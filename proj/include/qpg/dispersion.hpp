#pragma once

// Material dispersion of congruent lithium niobate and the quasi-phasematched
// SFG mismatch dk(w_in, w_out) = k_out(w_out) - k_in(w_in) - k_gate(w_out - w_in)
// - m 2pi/Lambda + waveguide terms.

#include <complex>
#include <string>
#include <string_view>

#include "qpg/simd/sellmeier_poles.hpp"

namespace qpg {

enum class Axis { Ordinary, Extraordinary };

/// Temperature-dependent Sellmeier series for congruent LiNbO3. The
/// extraordinary axis uses the Jundt form, the ordinary axis the
/// Edwards-Lawrence form; both share f = (T - 24.5)(T + 570.82).
class SellmeierModel {
public:
    static constexpr double kMinWavelengthUm = 0.4;
    static constexpr double kMaxWavelengthUm = 2.0;
    static constexpr double kMinTemperatureC = 20.0;
    static constexpr double kMaxTemperatureC = 250.0;

    static double temperature_parameter(double temperature_c);

    /// Series coefficients at a fixed temperature.
    simd::SellmeierPoles poles(double temperature_c, Axis axis) const;

    double index(double wavelength_um, double temperature_c, Axis axis) const;

    static void check_range(double wavelength_um, double temperature_c);
};

double refractive_index(double wavelength_um, double temperature_c, Axis axis = Axis::Extraordinary);

/// n_g = n - lambda dn/dlambda by central difference.
double group_index(double wavelength_um, double temperature_c, Axis axis = Axis::Extraordinary,
                   double step_um = 1e-4);

/// Axis of each wave (input, gate, output), written as e.g. "oeo".
struct Polarization {
    Axis input = Axis::Ordinary;
    Axis gate = Axis::Extraordinary;
    Axis output = Axis::Ordinary;

    static Polarization parse(std::string_view text);
    std::string str() const;
    friend bool operator==(const Polarization&, const Polarization&) = default;
};

struct PhasematchingSpec {
    double length = 0.0;          // m
    double poling_period = 0.0;   // m
    double temperature = 24.5;    // degC
    int qpm_order = 1;
    double delta_k_offset = 0.0;  // rad/m, waveguide calibration constant
    // Waveguide group-index correction of the input wave:
    // k_in(w) += input_group_index_shift * (w - reference_input_omega) / c.
    double input_group_index_shift = 0.0;
    double reference_input_omega = 0.0;
    Polarization polarization;
    SellmeierModel sellmeier;

    void validate() const;
    double grating_wavenumber() const;  // qpm_order * 2pi / poling_period
};

enum class Calibration { None, Offset, Horizontal };

Calibration parse_calibration(std::string_view text);
std::string_view calibration_name(Calibration c);

/// k(w) = n(lambda(w), T) w / c for one wave of the process.
double wavenumber(double omega, const PhasematchingSpec& spec, Axis axis);

double phase_mismatch(double omega_in, double omega_out, const PhasematchingSpec& spec);

/// Offset that zeroes the mismatch at the nominal wavelengths; the spec's own
/// offset is ignored.
double calibrate_offset(double input_nm, double gate_nm, PhasematchingSpec spec);

/// Returns `spec` with its waveguide terms set according to `mode`.
/// Horizontal additionally matches the input group index to the gate's so the
/// phasematched ridge runs along w_in.
PhasematchingSpec calibrate(PhasematchingSpec spec, double input_nm, double gate_nm, Calibration mode);

/// Phi = sinc(dk L/2) exp(i dk L/2).
std::complex<double> phasematching_amplitude(double delta_k, double length);

/// Orientation of the dk = 0 contour in the (w_in, w_out) plane, degrees from
/// the w_in axis. 0 means the output frequency is fixed by phasematching.
double ridge_angle_deg(const PhasematchingSpec& spec, double input_nm, double gate_nm);

}  // namespace qpg
