#include "qpg/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "qpg/error.hpp"
#include "qpg/units.hpp"

namespace qpg {
namespace {

// Jundt, extraordinary index of congruent LiNbO3.
struct JundtCoefficients {
    double a1 = 5.35583, a2 = 0.100473, a3 = 0.20692, a4 = 100.0, a5 = 11.34927, a6 = 1.5334e-2;
    double b1 = 4.629e-7, b2 = 3.862e-8, b3 = -0.89e-8, b4 = 2.657e-5;
};

// Edwards & Lawrence, ordinary index of congruent LiNbO3.
struct EdwardsLawrenceCoefficients {
    double a1 = 4.9048, a2 = 0.11775, a3 = 0.21802, a4 = 0.027153;
    double b1 = 2.2314e-8, b2 = -2.9671e-8, b3 = 2.1429e-8;
};

std::string format_range_error(double wavelength_um, double temperature_c) {
    std::ostringstream msg;
    msg << "Sellmeier fit invalid at lambda = " << wavelength_um << " um, T = " << temperature_c
        << " C (valid " << SellmeierModel::kMinWavelengthUm << "-" << SellmeierModel::kMaxWavelengthUm
        << " um, " << SellmeierModel::kMinTemperatureC << "-" << SellmeierModel::kMaxTemperatureC << " C)";
    return msg.str();
}

double index_from_poles(const simd::SellmeierPoles& p, double wavelength_um) {
    const double l2 = wavelength_um * wavelength_um;
    return std::sqrt(p.a + p.b1 / (l2 - p.c1) + p.b2 / (l2 - p.c2) - p.d * l2);
}

}  // namespace

double SellmeierModel::temperature_parameter(double temperature_c) {
    return (temperature_c - 24.5) * (temperature_c + 570.82);
}

void SellmeierModel::check_range(double wavelength_um, double temperature_c) {
    if (!(wavelength_um >= kMinWavelengthUm && wavelength_um <= kMaxWavelengthUm) ||
        !(temperature_c >= kMinTemperatureC && temperature_c <= kMaxTemperatureC)) {
        throw DomainError("out_of_range", format_range_error(wavelength_um, temperature_c));
    }
}

simd::SellmeierPoles SellmeierModel::poles(double temperature_c, Axis axis) const {
    const double f = temperature_parameter(temperature_c);
    simd::SellmeierPoles p;
    if (axis == Axis::Extraordinary) {
        const JundtCoefficients c;
        const double pole = c.a3 + c.b3 * f;
        p.a = c.a1 + c.b1 * f;
        p.b1 = c.a2 + c.b2 * f;
        p.c1 = pole * pole;
        p.b2 = c.a4 + c.b4 * f;
        p.c2 = c.a5 * c.a5;
        p.d = c.a6;
    } else {
        const EdwardsLawrenceCoefficients c;
        const double pole = c.a3 + c.b2 * f;
        p.a = c.a1 + c.b3 * f;
        p.b1 = c.a2 + c.b1 * f;
        p.c1 = pole * pole;
        p.b2 = 0.0;
        p.c2 = 0.0;
        p.d = c.a4;
    }
    return p;
}

double SellmeierModel::index(double wavelength_um, double temperature_c, Axis axis) const {
    check_range(wavelength_um, temperature_c);
    return index_from_poles(poles(temperature_c, axis), wavelength_um);
}

double refractive_index(double wavelength_um, double temperature_c, Axis axis) {
    return SellmeierModel{}.index(wavelength_um, temperature_c, axis);
}

double group_index(double wavelength_um, double temperature_c, Axis axis, double step_um) {
    const SellmeierModel model;
    SellmeierModel::check_range(wavelength_um, temperature_c);
    const auto p = model.poles(temperature_c, axis);
    // The stencil may poke just outside the fitted range at its edges; the
    // series itself is smooth there.
    const double dn = (index_from_poles(p, wavelength_um + step_um) - index_from_poles(p, wavelength_um - step_um)) /
                      (2.0 * step_um);
    return index_from_poles(p, wavelength_um) - wavelength_um * dn;
}

Polarization Polarization::parse(std::string_view text) {
    if (text.size() != 3) throw DomainError("bad_polarization", "polarization must be three letters of o/e");
    auto axis = [](char c) {
        if (c == 'o' || c == 'O') return Axis::Ordinary;
        if (c == 'e' || c == 'E') return Axis::Extraordinary;
        throw DomainError("bad_polarization", "polarization letters must be o or e");
    };
    return {axis(text[0]), axis(text[1]), axis(text[2])};
}

std::string Polarization::str() const {
    auto letter = [](Axis a) { return a == Axis::Ordinary ? 'o' : 'e'; };
    return {letter(input), letter(gate), letter(output)};
}

void PhasematchingSpec::validate() const {
    if (!(length > 0.0)) throw DomainError("bad_length", "crystal length must be positive");
    if (!(poling_period > 0.0)) throw DomainError("bad_period", "poling period must be positive");
    if (qpm_order < 1 || qpm_order % 2 == 0) throw DomainError("bad_qpm_order", "QPM order must be a positive odd integer");
    if (!(temperature >= SellmeierModel::kMinTemperatureC && temperature <= SellmeierModel::kMaxTemperatureC)) {
        throw DomainError("out_of_range", "temperature outside the Sellmeier fit range");
    }
}

double PhasematchingSpec::grating_wavenumber() const {
    return qpm_order * 2.0 * kPi / poling_period;
}

Calibration parse_calibration(std::string_view text) {
    if (text == "none" || text == "false") return Calibration::None;
    if (text == "offset" || text == "true") return Calibration::Offset;
    if (text == "horizontal") return Calibration::Horizontal;
    throw DomainError("bad_calibration", "calibrate must be none, offset or horizontal");
}

std::string_view calibration_name(Calibration c) {
    switch (c) {
        case Calibration::None:
            return "none";
        case Calibration::Offset:
            return "offset";
        case Calibration::Horizontal:
            return "horizontal";
    }
    return "none";
}

double wavenumber(double omega, const PhasematchingSpec& spec, Axis axis) {
    const double lam_um = omega_to_wavelength(omega) * 1e-3;
    return spec.sellmeier.index(lam_um, spec.temperature, axis) * omega / kSpeedOfLight;
}

double phase_mismatch(double omega_in, double omega_out, const PhasematchingSpec& spec) {
    if (!(omega_in > 0.0 && omega_out > omega_in)) {
        throw DomainError("bad_frequencies", "phase_mismatch needs w_out > w_in > 0");
    }
    const double omega_gate = omega_out - omega_in;
    const double k_in = wavenumber(omega_in, spec, spec.polarization.input) +
                        spec.input_group_index_shift * (omega_in - spec.reference_input_omega) / kSpeedOfLight;
    return wavenumber(omega_out, spec, spec.polarization.output) - k_in -
           wavenumber(omega_gate, spec, spec.polarization.gate) - spec.grating_wavenumber() + spec.delta_k_offset;
}

double calibrate_offset(double input_nm, double gate_nm, PhasematchingSpec spec) {
    spec.validate();
    spec.delta_k_offset = 0.0;
    const double wi = wavelength_to_omega(input_nm);
    const double wo = wi + wavelength_to_omega(gate_nm);
    spec.reference_input_omega = wi;
    return -phase_mismatch(wi, wo, spec);
}

PhasematchingSpec calibrate(PhasematchingSpec spec, double input_nm, double gate_nm, Calibration mode) {
    spec.validate();
    if (mode == Calibration::None) return spec;
    spec.reference_input_omega = wavelength_to_omega(input_nm);
    if (mode == Calibration::Horizontal) {
        spec.input_group_index_shift = group_index(gate_nm * 1e-3, spec.temperature, spec.polarization.gate) -
                                       group_index(input_nm * 1e-3, spec.temperature, spec.polarization.input);
    } else {
        spec.input_group_index_shift = 0.0;
    }
    spec.delta_k_offset = calibrate_offset(input_nm, gate_nm, spec);
    return spec;
}

std::complex<double> phasematching_amplitude(double delta_k, double length) {
    const double x = 0.5 * delta_k * length;
    const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return sinc * std::complex<double>(std::cos(x), std::sin(x));
}

double ridge_angle_deg(const PhasematchingSpec& spec, double input_nm, double gate_nm) {
    const double wi = wavelength_to_omega(input_nm);
    const double wo = wi + wavelength_to_omega(gate_nm);
    const double h = 1e-6 * wi;
    const double d_in = (phase_mismatch(wi + h, wo, spec) - phase_mismatch(wi - h, wo, spec)) / (2.0 * h);
    const double d_out = (phase_mismatch(wi, wo + h, spec) - phase_mismatch(wi, wo - h, spec)) / (2.0 * h);
    return std::atan(-d_in / d_out) * 180.0 / kPi;
}

}  // namespace qpg
