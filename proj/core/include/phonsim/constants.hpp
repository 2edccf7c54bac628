#pragma once

// Physical constants (CODATA 2018) in the canonical unit system of this
// project: time in ps, angular frequency in rad/ps, wavelength in nm,
// energy in meV, temperature in K. No other module redefines these.

namespace phonsim::constants {

inline constexpr double hbar_meV_ps = 0.6582119569;       // reduced Planck constant
inline constexpr double c_nm_per_ps = 299792.458;         // speed of light
inline constexpr double hc_meV_nm = 1239841.98412;        // h*c
inline constexpr double kB_meV_per_K = 0.08617333262;     // Boltzmann constant
inline constexpr double pi = 3.14159265358979323846;

// Conversion between dispersion-table units (m/s) and internal Å/ps.
inline constexpr double m_per_s_to_angstrom_per_ps = 0.01;

}  // namespace phonsim::constants
