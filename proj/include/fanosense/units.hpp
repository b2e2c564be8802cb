#pragma once

#include <numbers>

namespace fanosense::units {

// CODATA values, SI.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double eps0 = 8.8541878128e-12;      // F/m
inline constexpr double c = 2.99792458e8;             // m/s
inline constexpr double debye = 1e-21 / c;            // C m
inline constexpr double meV = 1.602176634e-22;        // J
inline constexpr double neV = 1.602176634e-28;        // J
inline constexpr double nm = 1e-9;                    // m
inline constexpr double ps = 1e-12;                   // s
inline constexpr double hc_eV_nm = 1239.841984;
inline constexpr double pi = std::numbers::pi;

// Angular frequency of one meV, in rad/ps.
inline constexpr double meV_per_ps = meV / hbar * ps;

inline constexpr double wavelength_nm(double energy_meV) { return hc_eV_nm / (energy_meV * 1e-3); }
inline constexpr double energy_meV(double wavelength_nm) { return hc_eV_nm / wavelength_nm * 1e3; }

// Lifetime in ps of a rate given as an energy in meV.
inline constexpr double lifetime_ps(double rate_meV) { return 1.0 / (rate_meV * meV_per_ps); }

}  // namespace fanosense::units
