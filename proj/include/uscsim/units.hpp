#pragma once

namespace uscsim {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018 exact values
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double k_boltzmann = 1.380649e-23;    // J / K

// Configuration files and CLI flags carry ordinary frequencies in MHz;
// everything internal is angular (rad/s).
inline constexpr double mhz_to_rad(double f_mhz) { return two_pi * 1.0e6 * f_mhz; }
inline constexpr double rad_to_mhz(double omega) { return omega / (two_pi * 1.0e6); }
inline constexpr double mk_to_kelvin(double t_mk) { return 1.0e-3 * t_mk; }

}  // namespace uscsim
