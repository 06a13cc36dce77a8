#include "qpg/units.hpp"

#include <cmath>
#include <string>

#include "qpg/error.hpp"

namespace qpg {
namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("non_positive", std::string(what) + " must be positive and finite");
    }
}

}  // namespace

double wavelength_to_omega(double wavelength_nm) {
    require_positive(wavelength_nm, "wavelength");
    return 2.0 * kPi * kSpeedOfLight / (wavelength_nm * 1e-9);
}

double omega_to_wavelength(double omega) {
    require_positive(omega, "angular frequency");
    return 2.0 * kPi * kSpeedOfLight / omega * 1e9;
}

double sum_frequency(double input_nm, double gate_nm) {
    require_positive(input_nm, "input wavelength");
    require_positive(gate_nm, "gate wavelength");
    return input_nm * gate_nm / (input_nm + gate_nm);
}

double fwhm_to_sigma(double fwhm) {
    require_positive(fwhm, "FWHM");
    return fwhm / (2.0 * std::sqrt(std::log(2.0)));
}

double wavelength_fwhm_to_omega(double center_nm, double fwhm_nm) {
    require_positive(center_nm, "center wavelength");
    require_positive(fwhm_nm, "FWHM");
    const double lam = center_nm * 1e-9;
    return 2.0 * kPi * kSpeedOfLight * (fwhm_nm * 1e-9) / (lam * lam);
}

}  // namespace qpg
