#pragma once

namespace hybridsim::constants {

// CODATA 2018 exact values where defined.
inline constexpr double e_charge = 1.602176634e-19;          // C
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double h_planck = 6.62607015e-34;           // J s
inline constexpr double k_boltzmann = 1.380649e-23;          // J / K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double mass_be9 = 9.0121831 * atomic_mass_unit;
inline constexpr double mass_ca43 = 42.95876744 * atomic_mass_unit;

// R_k = hbar / (2e)^2, the resistance scale of superconducting circuits.
inline constexpr double quantum_resistance =
    hbar / ((2.0 * e_charge) * (2.0 * e_charge));

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace hybridsim::constants
