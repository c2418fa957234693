#pragma once

#include <array>
#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "qheatnet/josephson.hpp"
#include "qheatnet/thermal.hpp"
#include "qheatnet/two_port.hpp"

namespace qheatnet {

// ---------------------------------------------------------------------------
// Cascade stages
// ---------------------------------------------------------------------------

struct TransmissionLineSpec {
  double inductance_per_length;   // H/m
  double capacitance_per_length;  // F/m
  double length;                  // m

  double characteristic_impedance() const {
    return std::sqrt(inductance_per_length / capacitance_per_length);
  }
  double phase_velocity() const {
    return 1.0 / std::sqrt(inductance_per_length * capacitance_per_length);
  }
};

struct SeriesImpedanceSpec { complex_t impedance; };
struct ShuntAdmittanceSpec { complex_t admittance; };
struct SeriesCapacitorSpec { double capacitance; };
struct TransmonShuntSpec { TransmonSpec transmon; };

using CircuitElement = std::variant<TransmissionLineSpec, SeriesImpedanceSpec,
                                    ShuntAdmittanceSpec, SeriesCapacitorSpec, TransmonShuntSpec>;

inline TwoPort element_abcd(const CircuitElement& e, double frequency) {
  return std::visit(
      [frequency](const auto& spec) -> TwoPort {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, TransmissionLineSpec>)
          return transmission_line(spec.inductance_per_length, spec.capacitance_per_length,
                                   spec.length, frequency);
        else if constexpr (std::is_same_v<T, SeriesImpedanceSpec>)
          return series_impedance(spec.impedance);
        else if constexpr (std::is_same_v<T, ShuntAdmittanceSpec>)
          return shunt_admittance(spec.admittance);
        else if constexpr (std::is_same_v<T, SeriesCapacitorSpec>)
          return series_capacitor(spec.capacitance, frequency);
        else
          return shunt_admittance(transmon_shunt_admittance(spec.transmon, frequency));
      },
      e);
}

// ---------------------------------------------------------------------------
// Reference devices
// ---------------------------------------------------------------------------

/// Resistor-terminated quarter-wave resonator capacitively coupled to a short
/// output line: TL(l1) * C_r * TL(l2).
struct QuarterWaveDevice {
  double inductance_per_length;   // H/m
  double capacitance_per_length;  // F/m
  double length_1;                // m, resonator section
  double length_2;                // m, output section
  double coupling_capacitance;    // F
};

/// Quantum heat valve: TL(l) * C_r * Qubit * C_r * TL(l).
struct QhvDevice {
  double inductance_per_length;
  double capacitance_per_length;
  double length;
  double coupling_capacitance;
  TransmonSpec transmon;
};

/// Double-pole heat valve: TL(l) * C_r * Qubit_a * C_t * Qubit_b * C_r * TL(l).
struct DoublePoleDevice {
  double inductance_per_length;
  double capacitance_per_length;
  double length;
  double coupling_capacitance;         // C_r
  double interqubit_capacitance;       // C_t
  TransmonSpec transmon_a;
  TransmonSpec transmon_b;
};

using DeviceDescriptor = std::variant<QuarterWaveDevice, QhvDevice, DoublePoleDevice>;

inline std::size_t flux_arity(const DeviceDescriptor& dev) {
  if (std::holds_alternative<QuarterWaveDevice>(dev)) return 0;
  if (std::holds_alternative<QhvDevice>(dev)) return 1;
  return 2;
}

inline void check_flux_arity(const DeviceDescriptor& dev, std::span<const double> flux) {
  if (flux.size() != flux_arity(dev))
    throw domain_error("flux value count does not match the device (expected " +
                       std::to_string(flux_arity(dev)) + ", got " +
                       std::to_string(flux.size()) + ")");
}

/// Cascade ABCD matrix of a reference device at the given flux bias (in units
/// of Phi_0) and frequency.
inline TwoPort build_network(const DeviceDescriptor& dev, std::span<const double> flux,
                             double frequency) {
  check_flux_arity(dev, flux);
  return std::visit(
      [&](const auto& d) -> TwoPort {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, QuarterWaveDevice>) {
          return transmission_line(d.inductance_per_length, d.capacitance_per_length, d.length_1,
                                   frequency) *
                 series_capacitor(d.coupling_capacitance, frequency) *
                 transmission_line(d.inductance_per_length, d.capacitance_per_length, d.length_2,
                                   frequency);
        } else if constexpr (std::is_same_v<T, QhvDevice>) {
          TransmonSpec q = d.transmon;
          q.josephson = q.josephson.at_flux(flux[0]);
          const TwoPort tl = transmission_line(d.inductance_per_length, d.capacitance_per_length,
                                               d.length, frequency);
          const TwoPort cr = series_capacitor(d.coupling_capacitance, frequency);
          return tl * cr * shunt_admittance(transmon_shunt_admittance(q, frequency)) * cr * tl;
        } else {
          TransmonSpec qa = d.transmon_a, qb = d.transmon_b;
          qa.josephson = qa.josephson.at_flux(flux[0]);
          qb.josephson = qb.josephson.at_flux(flux[1]);
          const TwoPort tl = transmission_line(d.inductance_per_length, d.capacitance_per_length,
                                               d.length, frequency);
          const TwoPort cr = series_capacitor(d.coupling_capacitance, frequency);
          const TwoPort ct = series_capacitor(d.interqubit_capacitance, frequency);
          return tl * cr * shunt_admittance(transmon_shunt_admittance(qa, frequency)) * ct *
                 shunt_admittance(transmon_shunt_admittance(qb, frequency)) * cr * tl;
        }
      },
      dev);
}

/// Analytic estimates of the device resonances (bare quarter-wave mode with
/// odd harmonics up to f_cap, plus the qubit plasma modes at this flux). Used
/// to seed adaptive quadrature panels.
inline std::vector<double> resonance_seeds(const DeviceDescriptor& dev,
                                           std::span<const double> flux, double f_cap) {
  check_flux_arity(dev, flux);
  std::vector<double> seeds;
  auto add_line_modes = [&](double ll, double cl, double len) {
    const double f0 = 1.0 / (4.0 * len * std::sqrt(ll * cl));
    for (double f = f0; f <= f_cap; f += 2.0 * f0) seeds.push_back(f);
    if (seeds.empty()) seeds.push_back(f0);
  };
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, QuarterWaveDevice>) {
          add_line_modes(d.inductance_per_length, d.capacitance_per_length, d.length_1);
        } else if constexpr (std::is_same_v<T, QhvDevice>) {
          add_line_modes(d.inductance_per_length, d.capacitance_per_length, d.length);
          TransmonSpec q = d.transmon;
          q.josephson = q.josephson.at_flux(flux[0]);
          seeds.push_back(transmon_plasma_frequency(q));
        } else {
          add_line_modes(d.inductance_per_length, d.capacitance_per_length, d.length);
          for (int i = 0; i < 2; ++i) {
            TransmonSpec q = i == 0 ? d.transmon_a : d.transmon_b;
            q.josephson = q.josephson.at_flux(flux[i]);
            seeds.push_back(transmon_plasma_frequency(q));
          }
        }
      },
      dev);
  return seeds;
}

/// Transmission provider tau(f) = |S21(f)|^2 of the device between resistive
/// terminations. Captures by value; safe for concurrent calls.
inline TransmissionProvider make_transmission_provider(DeviceDescriptor dev,
                                                       std::vector<double> flux, double r1,
                                                       double r2) {
  check_flux_arity(dev, flux);
  return [dev = std::move(dev), flux = std::move(flux), r1, r2](double f) {
    const TwoPort m = build_network(dev, flux, f);
    return std::norm(abcd_to_s21(m, r1, r2, f));
  };
}

}  // namespace qheatnet
