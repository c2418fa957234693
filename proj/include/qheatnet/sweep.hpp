#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qheatnet/device.hpp"
#include "qheatnet/thermal.hpp"

namespace qheatnet {

struct SweepPoint {
  std::vector<double> flux;          // Phi/Phi_0 per qubit (may be empty)
  double resistance_1 = 0.0;         // ohm
  double temperature_1 = 0.0;        // kelvin
  std::optional<HeatResult> result;  // empty on failure
  std::string error;                 // failure message, when any
};

namespace detail {
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = std::min<std::size_t>(threads, n);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}
}  // namespace detail

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Heat flow at every flux point of a grid (outer product of per-qubit grids
/// for two-flux devices). Per-point failures are recorded, not fatal. Output
/// order is deterministic regardless of the thread count.
inline std::vector<SweepPoint> sweep_flux(const DeviceDescriptor& dev,
                                          const std::vector<std::vector<double>>& flux_points,
                                          const ThermalPort& port1, const ThermalPort& port2,
                                          const QuadratureOptions& opts,
                                          unsigned threads = default_thread_count()) {
  std::vector<SweepPoint> out(flux_points.size());
  detail::parallel_for(flux_points.size(), threads, [&](std::size_t i) {
    SweepPoint& pt = out[i];
    pt.flux = flux_points[i];
    pt.resistance_1 = port1.resistance;
    pt.temperature_1 = port1.temperature;
    try {
      QuadratureOptions local = opts;
      double f_cap = local.f_max_override > 0.0
                         ? local.f_max_override
                         : 30.0 * constants::boltzmann *
                               std::max(port1.temperature, port2.temperature) / constants::planck;
      local.resonance_seeds = resonance_seeds(dev, pt.flux, f_cap);
      auto tau = make_transmission_provider(dev, pt.flux, port1.resistance, port2.resistance);
      pt.result = net_heat_flow(tau, port1.temperature, port2.temperature, local);
    } catch (const quadrature_failure& e) {
      pt.result = e.partial();
      pt.error = e.what();
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  });
  return out;
}

/// Cartesian flux grid helper: one row per point, device arity many columns.
inline std::vector<std::vector<double>> flux_grid(const std::vector<double>& axis1,
                                                  const std::vector<double>& axis2 = {}) {
  std::vector<std::vector<double>> pts;
  if (axis2.empty()) {
    for (double a : axis1) pts.push_back({a});
  } else {
    for (double a : axis1)
      for (double b : axis2) pts.push_back({a, b});
  }
  return pts;
}

/// Heat flow versus the port-1 resistance at a fixed flux bias.
inline std::vector<SweepPoint> sweep_resistance(const DeviceDescriptor& dev,
                                                const std::vector<double>& flux,
                                                const std::vector<double>& resistances,
                                                const ThermalPort& port1, const ThermalPort& port2,
                                                const QuadratureOptions& opts,
                                                unsigned threads = default_thread_count()) {
  std::vector<SweepPoint> out(resistances.size());
  detail::parallel_for(resistances.size(), threads, [&](std::size_t i) {
    SweepPoint& pt = out[i];
    pt.flux = flux;
    pt.resistance_1 = resistances[i];
    pt.temperature_1 = port1.temperature;
    try {
      QuadratureOptions local = opts;
      double f_cap = local.f_max_override > 0.0
                         ? local.f_max_override
                         : 30.0 * constants::boltzmann *
                               std::max(port1.temperature, port2.temperature) / constants::planck;
      local.resonance_seeds = resonance_seeds(dev, flux, f_cap);
      auto tau = make_transmission_provider(dev, flux, resistances[i], port2.resistance);
      pt.result = net_heat_flow(tau, port1.temperature, port2.temperature, local);
    } catch (const quadrature_failure& e) {
      pt.result = e.partial();
      pt.error = e.what();
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  });
  return out;
}

/// Heat flow versus the port-1 temperature at a fixed flux bias.
inline std::vector<SweepPoint> sweep_temperature(const DeviceDescriptor& dev,
                                                 const std::vector<double>& flux,
                                                 const std::vector<double>& temperatures,
                                                 const ThermalPort& port1,
                                                 const ThermalPort& port2,
                                                 const QuadratureOptions& opts,
                                                 unsigned threads = default_thread_count()) {
  std::vector<SweepPoint> out(temperatures.size());
  detail::parallel_for(temperatures.size(), threads, [&](std::size_t i) {
    SweepPoint& pt = out[i];
    pt.flux = flux;
    pt.resistance_1 = port1.resistance;
    pt.temperature_1 = temperatures[i];
    try {
      QuadratureOptions local = opts;
      double f_cap = local.f_max_override > 0.0
                         ? local.f_max_override
                         : 30.0 * constants::boltzmann *
                               std::max(temperatures[i], port2.temperature) / constants::planck;
      local.resonance_seeds = resonance_seeds(dev, flux, f_cap);
      auto tau = make_transmission_provider(dev, flux, port1.resistance, port2.resistance);
      pt.result = net_heat_flow(tau, temperatures[i], port2.temperature, local);
    } catch (const quadrature_failure& e) {
      pt.result = e.partial();
      pt.error = e.what();
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  });
  return out;
}

}  // namespace qheatnet
