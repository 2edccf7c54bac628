#pragma once

#include "phonsim/constants.hpp"

namespace phonsim {

// Strong types for the quantities that are easiest to mix up. Angular
// frequency is the canonical internal representation (rad/ps); energies in
// meV and wavelength detunings in nm convert through the functions below.

struct AngularFrequency {
    double rad_per_ps = 0.0;
};

struct Energy {
    double meV = 0.0;
};

// Detuning of the laser from a reference wavelength, sign convention
// dlambda = lambda_laser - lambda_X (negative = blue-detuned laser).
struct WavelengthDetuning {
    double nm = 0.0;
    double lambda_x_nm = 0.0;
};

AngularFrequency energy_to_angular(Energy e);
Energy angular_to_energy(AngularFrequency w);

// Exact relation dlambda = hc/(hc/lambda_X + E) - lambda_X. Positive energy
// detuning maps to a blue-shifted (shorter-wavelength) laser.
WavelengthDetuning energy_to_detuning(Energy e, double lambda_x_nm);

// Inverse of the above: the energy detuning corresponding to dlambda.
Energy detuning_to_energy(WavelengthDetuning d);

// dlambda -> dOmega via dlambda = 2*pi*c*(1/omega_laser - 1/omega_X);
// blue-detuned (negative dlambda) gives positive dOmega.
AngularFrequency detuning_wavelength_to_frequency(WavelengthDetuning d);
WavelengthDetuning detuning_frequency_to_wavelength(AngularFrequency dw, double lambda_x_nm);

// Thermal frequency kB*T/hbar in rad/ps.
double thermal_frequency(double temperature_K);

}  // namespace phonsim
