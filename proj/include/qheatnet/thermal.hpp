#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qheatnet/constants.hpp"
#include "qheatnet/errors.hpp"
#include "qheatnet/quadrature.hpp"
#include "qheatnet/two_port.hpp"

namespace qheatnet {

/// A resistive bath terminating one port. The optional reactive part is only
/// accepted by the series/parallel closed forms.
struct ThermalPort {
  double resistance = 50.0;   // ohm
  double temperature = 0.0;   // kelvin
  complex_t reactance{0.0};   // ohm

  ThermalPort() = default;
  ThermalPort(double r, double t, complex_t x = {0.0}) : resistance(r), temperature(t), reactance(x) {
    if (!(r > 0.0)) throw domain_error("thermal port resistance must be > 0");
    if (t < 0.0) throw domain_error("thermal port temperature must be >= 0");
  }
};

/// Frequency-resolved photon transmission coefficient tau(f) in [0, 1].
/// Must be deterministic and safe for concurrent calls.
using TransmissionProvider = std::function<double(double)>;

/// One-sided Johnson-Nyquist voltage spectral density S_V = 2 R h f / (1 - e^{-hf/kT}),
/// in V^2/Hz. Defined for both signs of f; continuous classical limit 2 R kB T at f = 0.
inline double johnson_nyquist_psd(const ThermalPort& port, double frequency) {
  using namespace constants;
  const double r = port.resistance, t = port.temperature;
  if (t == 0.0) return frequency > 0.0 ? 2.0 * r * planck * frequency : 0.0;
  const double x = planck * frequency / (boltzmann * t);
  if (x == 0.0) return 2.0 * r * boltzmann * t;
  return 2.0 * r * planck * frequency / (-std::expm1(-x));
}

/// Thermal photon occupation n(f) = 1/(e^{hf/kT} - 1).
inline double bose_population(double frequency, double temperature) {
  if (!(frequency > 0.0)) throw domain_error("bose_population requires f > 0");
  if (temperature < 0.0) throw domain_error("bose_population requires T >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = constants::planck * frequency / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

namespace detail {
// hf * (n1 - n2), evaluated without cancellation trouble near f = 0 where it
// tends to kB*(t1 - t2).
inline double net_quantum_flux(double frequency, double t1, double t2) {
  const double hf = constants::planck * frequency;
  const double n1 = t1 > 0.0 ? 1.0 / std::expm1(hf / (constants::boltzmann * t1)) : 0.0;
  const double n2 = t2 > 0.0 ? 1.0 / std::expm1(hf / (constants::boltzmann * t2)) : 0.0;
  return hf * (n1 - n2);
}
}  // namespace detail

/// Landauer integrand S_Pnet(f) = h f tau(f) (n1(f) - n2(f)), in W/Hz.
inline double net_power_spectral_density(const TransmissionProvider& tau, double t1, double t2,
                                         double frequency) {
  if (!(frequency > 0.0)) throw domain_error("net_power_spectral_density requires f > 0");
  return tau(frequency) * detail::net_quantum_flux(frequency, t1, t2);
}

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-22;            // watt
  std::size_t max_evaluations = 200000;
  double f_min = 1.0;                // hertz; opens above DC
  double f_max_override = 0.0;       // hertz; 0 = automatic thermal cutoff
  bool collect_spectrum = false;
  // Known device resonances (hertz); adaptive panels are seeded around them.
  std::vector<double> resonance_seeds;
};

struct HeatResult {
  double net_power = 0.0;                                // watt
  std::vector<std::pair<double, double>> spectrum;       // (f, S_Pnet)
  double quadrature_error_estimate = 0.0;                // watt
  double f_max_used = 0.0;                               // hertz
  std::size_t evaluations = 0;
};

class quadrature_failure : public std::runtime_error {
 public:
  quadrature_failure(const std::string& msg, HeatResult partial)
      : std::runtime_error(msg), partial_(std::move(partial)) {}
  const HeatResult& partial() const { return partial_; }

 private:
  HeatResult partial_;
};

/// Net photonic heat flow P_net = int_0^inf hf tau(f) (n1 - n2) df by adaptive quadrature.
inline HeatResult net_heat_flow(const TransmissionProvider& tau, double t1, double t2,
                                const QuadratureOptions& opts = {}) {
  if (t1 < 0.0 || t2 < 0.0) throw domain_error("bath temperatures must be >= 0");
  if (t1 == 0.0 && t2 == 0.0) throw domain_error("at least one bath must be above 0 K");

  const double t_hot = std::max(t1, t2);
  double f_max = opts.f_max_override > 0.0
                     ? opts.f_max_override
                     : 30.0 * constants::boltzmann * t_hot / constants::planck;
  for (double s : opts.resonance_seeds)
    if (opts.f_max_override <= 0.0) f_max = std::max(f_max, 3.0 * s);

  if (t1 == t2) {
    HeatResult res;
    res.f_max_used = f_max;
    return res;
  }

  AdaptiveOptions aopts;
  aopts.rel_tol = opts.rel_tol;
  aopts.abs_tol = opts.abs_tol;
  aopts.max_evaluations = opts.max_evaluations;
  aopts.collect_samples = opts.collect_spectrum;
  // Geometric ladder so the thermal tail never hides in one giant panel,
  // plus a bracket around each known resonance to pin narrow peaks.
  for (double x = opts.f_min * 4.0; x < f_max; x *= 4.0) aopts.breakpoints.push_back(x);
  for (double s : opts.resonance_seeds) {
    for (double m : {0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 1.5}) aopts.breakpoints.push_back(s * m);
  }

  auto integrand = [&](double f) { return tau(f) * detail::net_quantum_flux(f, t1, t2); };
  QuadratureResult q = integrate_adaptive(integrand, opts.f_min, f_max, aopts);

  HeatResult res;
  res.net_power = q.value;
  res.quadrature_error_estimate = q.error_estimate;
  res.f_max_used = f_max;
  res.evaluations = q.evaluations;
  res.spectrum = std::move(q.samples);
  if (!q.converged)
    throw quadrature_failure("heat-flow quadrature did not converge within evaluation budget",
                             std::move(res));
  return res;
}

/// Closed-form Landauer integral for tau == 1: (pi^2 kB^2 / 6h) (t1^2 - t2^2).
inline double quantum_limited_power(double t1, double t2) {
  using namespace constants;
  const double pi = 3.14159265358979323846;
  return pi * pi * boltzmann * boltzmann / (6.0 * planck) * (t1 * t1 - t2 * t2);
}

}  // namespace qheatnet
