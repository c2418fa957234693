#pragma once

// CODATA 2018 exact values (SI).
namespace qheatnet::constants {

inline constexpr double planck = 6.62607015e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;       // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double flux_quantum = 2.067833848e-15; // Wb

}  // namespace qheatnet::constants
