#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>

#include "qheatnet/errors.hpp"

namespace qheatnet {

using complex_t = std::complex<double>;

/// Chain (ABCD) matrix of a reciprocal two-port at a single frequency.
/// Port 1 is the left side of a cascade product.
struct TwoPort {
  complex_t a{1.0};  // dimensionless
  complex_t b{0.0};  // ohm
  complex_t c{0.0};  // siemens
  complex_t d{1.0};  // dimensionless

  static TwoPort identity() { return {}; }

  complex_t det() const { return a * d - b * c; }

  TwoPort operator*(const TwoPort& rhs) const {
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
            c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
  }
};

/// Lossless transmission-line segment: [[cos(bl), jZ0 sin(bl)], [j sin(bl)/Z0, cos(bl)]]
/// with b = w*sqrt(L_l*C_l) and Z0 = sqrt(L_l/C_l).
inline TwoPort transmission_line(double inductance_per_length, double capacitance_per_length,
                                 double length, double frequency) {
  if (!(inductance_per_length > 0.0) || !(capacitance_per_length > 0.0) || !(length > 0.0))
    throw domain_error("transmission line requires L_l, C_l, l > 0");
  if (frequency < 0.0) throw domain_error("transmission line frequency must be >= 0");
  const double z0 = std::sqrt(inductance_per_length / capacitance_per_length);
  const double beta = 2.0 * std::numbers::pi * frequency *
                      std::sqrt(inductance_per_length * capacitance_per_length);
  const double bl = beta * length;
  const double cs = std::cos(bl), sn = std::sin(bl);
  return {complex_t(cs, 0.0), complex_t(0.0, z0 * sn), complex_t(0.0, sn / z0),
          complex_t(cs, 0.0)};
}

/// Series coupling capacitor: [[1, 1/(jwC)], [0, 1]]. Blocks DC, so f = 0 is singular.
inline TwoPort series_capacitor(double capacitance, double frequency) {
  if (!(capacitance > 0.0)) throw domain_error("series capacitor requires C > 0");
  if (!(frequency > 0.0))
    throw singular_error("series capacitor is an open circuit at f = 0", frequency);
  const double w = 2.0 * std::numbers::pi * frequency;
  return {complex_t(1.0), complex_t(0.0, -1.0 / (w * capacitance)), complex_t(0.0),
          complex_t(1.0)};
}

inline TwoPort series_impedance(complex_t z) {
  return {complex_t(1.0), z, complex_t(0.0), complex_t(1.0)};
}

inline TwoPort shunt_admittance(complex_t y) {
  return {complex_t(1.0), complex_t(0.0), y, complex_t(1.0)};
}

/// Ordered product; the leftmost block faces port 1. Empty input is the identity.
inline TwoPort cascade(std::span<const TwoPort> blocks) {
  TwoPort m = TwoPort::identity();
  for (const TwoPort& blk : blocks) m = m * blk;
  return m;
}

namespace detail {
inline complex_t s_denominator(const TwoPort& m, double r1, double r2, double frequency) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw domain_error("port resistances must be > 0");
  const complex_t den = m.a + m.b / r2 + m.c * r1 + (r1 / r2) * m.d;
  if (std::abs(den) < 1e-300)
    throw singular_error("S-parameter conversion: vanishing denominator", frequency);
  return den;
}
}  // namespace detail

/// S21 of the network between resistive terminations r1, r2 (power normalised,
/// so |S11|^2 + |S21|^2 = 1 for lossless networks).
inline complex_t abcd_to_s21(const TwoPort& m, double r1, double r2, double frequency = 0.0) {
  return 2.0 * std::sqrt(r1 / r2) / detail::s_denominator(m, r1, r2, frequency);
}

/// Input impedance looking into port 1 with port 2 terminated by r2.
inline complex_t input_impedance(const TwoPort& m, double r2) {
  if (!(r2 > 0.0)) throw domain_error("port resistance must be > 0");
  const complex_t den = m.c + m.d / r2;
  if (std::abs(den) < 1e-300) throw singular_error("input impedance: vanishing denominator");
  return (m.a + m.b / r2) / den;
}

inline complex_t abcd_to_s11(const TwoPort& m, double r1, double r2, double frequency = 0.0) {
  const complex_t den = detail::s_denominator(m, r1, r2, frequency);
  return (m.a + m.b / r2 - m.c * r1 - (r1 / r2) * m.d) / den;
}

/// Voltage transfer function H = V_load/V_source = R2/(A R2 + B + C R1 R2 + D R1).
/// Equals (1/2) sqrt(r2/r1) S21 identically.
inline complex_t abcd_to_transfer_function(const TwoPort& m, double r1, double r2,
                                           double frequency = 0.0) {
  const complex_t den = detail::s_denominator(m, r1, r2, frequency);
  return 1.0 / den;  // R2/(A R2 + B + C R1 R2 + D R1) after dividing by R2
}

/// tau for a black-box reducible to one series impedance zb, complex terminations allowed.
inline double tau_series(complex_t zb, complex_t z1, complex_t z2) {
  if (!(z1.real() > 0.0) || !(z2.real() > 0.0))
    throw domain_error("terminations need positive real part");
  const double num = 4.0 * z1.real() * z2.real();
  return num / std::norm(z1 + z2 + zb);
}

/// tau for a black-box reducible to one shunt element of impedance zb.
inline double tau_parallel(complex_t zb, complex_t z1, complex_t z2) {
  if (!(z1.real() > 0.0) || !(z2.real() > 0.0))
    throw domain_error("terminations need positive real part");
  if (std::abs(zb) < 1e-300) throw singular_error("tau_parallel: shunt impedance is zero");
  const complex_t y1 = 1.0 / z1, y2 = 1.0 / z2;
  const double num = 4.0 * y1.real() * y2.real();
  return num / std::norm(y1 + y2 + 1.0 / zb);
}

}  // namespace qheatnet
