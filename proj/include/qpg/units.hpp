#pragma once

// Unit conversions between vacuum wavelength (nm) and angular frequency
// (rad/s), and between intensity FWHM and the amplitude-Gaussian width.

namespace qpg {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

double wavelength_to_omega(double wavelength_nm);
double omega_to_wavelength(double omega);

/// Sum-frequency wavelength from photon energy conservation.
double sum_frequency(double input_nm, double gate_nm);

/// Amplitude width sigma for an intensity FWHM, with |u0|^2 ~ exp(-(w-w0)^2/sigma^2).
double fwhm_to_sigma(double fwhm);

/// Angular-frequency FWHM of a spectrum with wavelength FWHM `fwhm_nm` at `center_nm`.
double wavelength_fwhm_to_omega(double center_nm, double fwhm_nm);

}  // namespace qpg
