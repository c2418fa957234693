#pragma once

#include <cmath>
#include <numbers>

#include "qheatnet/constants.hpp"
#include "qheatnet/errors.hpp"
#include "qheatnet/two_port.hpp"

namespace qheatnet {

/// Linearised SQUID: total critical current, junction asymmetry
/// d = (Ic1 - Ic2)/(Ic1 + Ic2), and effective phase delta = pi * Phi/Phi_0.
struct JosephsonParams {
  double critical_current_total = 0.0;  // ampere
  double asymmetry = 0.0;               // in [0, 1)
  double phase = 0.0;                   // radian

  JosephsonParams() = default;
  JosephsonParams(double ic, double d, double delta = 0.0)
      : critical_current_total(ic), asymmetry(d), phase(delta) {
    if (!(ic > 0.0)) throw domain_error("SQUID critical current must be > 0");
    if (d < 0.0 || d >= 1.0) throw domain_error("SQUID asymmetry must be in [0, 1)");
  }

  JosephsonParams at_flux(double flux_phi0) const {
    JosephsonParams p = *this;
    p.phase = std::numbers::pi * flux_phi0;
    return p;
  }
};

/// Flux-tunable Josephson inductance
/// L_J = Phi_0 / (2 pi Ic |cos d| sqrt(1 + d^2 tan^2 d)).
/// Diverges only for a symmetric SQUID at half flux.
inline double josephson_inductance(const JosephsonParams& p) {
  // |cos d| sqrt(1 + d^2 tan^2 d) == hypot(cos d, d sin d), finite-everywhere form
  const double mod = std::hypot(std::cos(p.phase), p.asymmetry * std::sin(p.phase));
  if (mod < 1e-15)
    throw singular_error("Josephson inductance diverges (symmetric SQUID at half flux)");
  return constants::flux_quantum /
         (2.0 * std::numbers::pi * p.critical_current_total * mod);
}

inline complex_t josephson_impedance(const JosephsonParams& p, double frequency) {
  return complex_t(0.0, 2.0 * std::numbers::pi * frequency * josephson_inductance(p));
}

/// E_J = (Phi_0 / 2 pi)^2 / L_J.
inline double josephson_energy(const JosephsonParams& p) {
  const double phi = constants::flux_quantum / (2.0 * std::numbers::pi);
  return phi * phi / josephson_inductance(p);
}

/// Capacitively shunted junction, linearised to a harmonic mode.
struct TransmonSpec {
  JosephsonParams josephson;
  double shunt_capacitance = 0.0;         // C_s, farad
  double island_total_capacitance = 0.0;  // C_Sigma, farad; 0 = use C_s + C_JJ
  double junction_capacitance = 0.0;      // C_JJ, farad

  TransmonSpec() = default;
  TransmonSpec(JosephsonParams j, double cs, double csigma = 0.0, double cjj = 0.0)
      : josephson(j), shunt_capacitance(cs), island_total_capacitance(csigma),
        junction_capacitance(cjj) {
    if (!(cs > 0.0)) throw domain_error("transmon shunt capacitance must be > 0");
    if (cjj < 0.0) throw domain_error("transmon junction capacitance must be >= 0");
  }

  double total_capacitance() const {
    return island_total_capacitance > 0.0 ? island_total_capacitance
                                          : shunt_capacitance + junction_capacitance;
  }
};

/// E_C = e^2 / (2 C_Sigma).
inline double charging_energy(const TransmonSpec& t) {
  const double e = constants::elementary_charge;
  return e * e / (2.0 * t.total_capacitance());
}

/// f_Q = sqrt(8 E_J E_C) / h.
inline double transmon_frequency(const TransmonSpec& t) {
  return std::sqrt(8.0 * josephson_energy(t.josephson) * charging_energy(t)) /
         constants::planck;
}

/// LC plasma frequency of the shunted junction, used to seed quadrature panels.
inline double transmon_plasma_frequency(const TransmonSpec& t) {
  const double c = t.shunt_capacitance + t.junction_capacitance;
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(josephson_inductance(t.josephson) * c));
}

/// Shunt admittance of the qubit block: parallel C_s (+ C_JJ) and L_J.
inline complex_t transmon_shunt_admittance(const TransmonSpec& t, double frequency) {
  const double w = 2.0 * std::numbers::pi * frequency;
  const double c = t.shunt_capacitance + t.junction_capacitance;
  const complex_t y_c(0.0, w * c);
  return y_c + 1.0 / josephson_impedance(t.josephson, frequency);
}

}  // namespace qheatnet
