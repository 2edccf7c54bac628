#include "phonsim/units.hpp"

#include <cmath>

#include "phonsim/errors.hpp"

namespace phonsim {

using namespace constants;

AngularFrequency energy_to_angular(Energy e) {
    return {e.meV / hbar_meV_ps};
}

Energy angular_to_energy(AngularFrequency w) {
    return {w.rad_per_ps * hbar_meV_ps};
}

WavelengthDetuning energy_to_detuning(Energy e, double lambda_x_nm) {
    if (!(e.meV >= 0.0))
        throw data_error("energy_to_detuning: negative energy detuning");
    if (!(lambda_x_nm > 0.0))
        throw data_error("energy_to_detuning: non-positive reference wavelength");
    const double lambda_laser = hc_meV_nm / (hc_meV_nm / lambda_x_nm + e.meV);
    return {lambda_laser - lambda_x_nm, lambda_x_nm};
}

Energy detuning_to_energy(WavelengthDetuning d) {
    const double lambda_laser = d.lambda_x_nm + d.nm;
    if (!(lambda_laser > 0.0) || !(d.lambda_x_nm > 0.0))
        throw data_error("detuning_to_energy: degenerate laser wavelength");
    return {hc_meV_nm / lambda_laser - hc_meV_nm / d.lambda_x_nm};
}

AngularFrequency detuning_wavelength_to_frequency(WavelengthDetuning d) {
    const double lambda_laser = d.lambda_x_nm + d.nm;
    if (!(lambda_laser > 0.0) || !(d.lambda_x_nm > 0.0))
        throw data_error("detuning_wavelength_to_frequency: degenerate laser wavelength");
    const double two_pi_c = 2.0 * pi * c_nm_per_ps;
    return {two_pi_c * (1.0 / lambda_laser - 1.0 / d.lambda_x_nm)};
}

WavelengthDetuning detuning_frequency_to_wavelength(AngularFrequency dw, double lambda_x_nm) {
    if (!(lambda_x_nm > 0.0))
        throw data_error("detuning_frequency_to_wavelength: non-positive reference wavelength");
    const double two_pi_c = 2.0 * pi * c_nm_per_ps;
    const double omega_x = two_pi_c / lambda_x_nm;
    const double omega_laser = omega_x + dw.rad_per_ps;
    if (!(omega_laser > 0.0))
        throw data_error("detuning_frequency_to_wavelength: non-positive laser frequency");
    return {two_pi_c / omega_laser - lambda_x_nm, lambda_x_nm};
}

double thermal_frequency(double temperature_K) {
    if (temperature_K < 0.0)
        throw data_error("thermal_frequency: negative temperature");
    return kB_meV_per_K * temperature_K / hbar_meV_ps;
}

}  // namespace phonsim
