// End-to-end acceptance checks. Each test prints a single PASS/FAIL line so
// the suite doubles as a quick health report for the whole pipeline.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "qheatnet/qheatnet.hpp"

using namespace qheatnet;

namespace {

constexpr double kPlanck = 6.62607015e-34;
constexpr double kBoltzmann = 1.380649e-23;

void report(int index, const char* name, bool ok) {
  std::printf("criterion %d (%s): %s\n", index, name, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK_MESSAGE(ok, name);
}

// Random lossless cascade of lines, series capacitors and reactive shunts.
TwoPort random_reactive_cascade(std::mt19937& rng, double f) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> n_elems(1, 6);
  TwoPort m = TwoPort::identity();
  const int n = n_elems(rng);
  for (int i = 0; i < n; ++i) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        m = m * transmission_line(100e-9 + 600e-9 * u(rng), 50e-12 + 250e-12 * u(rng),
                                  1e-3 + 9e-3 * u(rng), f);
        break;
      case 1:
        m = m * series_capacitor(1e-15 + 99e-15 * u(rng), f);
        break;
      default:
        m = m * shunt_admittance(complex_t(0.0, (u(rng) - 0.5) * 0.1));
        break;
    }
  }
  return m;
}

QuarterWaveDevice quarter_wave_ref() {
  return {405e-9, 171e-12, 4723e-6, 580e-6, 23e-15};
}

QhvDevice qhv_ref(double shunt_cap = 96e-15) {
  return {405e-9, 171e-12, 5119e-6, 10e-15, TransmonSpec(JosephsonParams(72e-9, 0.08), shunt_cap)};
}

DoublePoleDevice double_pole_ref() {
  const TransmonSpec q(JosephsonParams(72e-9, 0.08), 61e-15);
  return {405e-9, 171e-12, 5119e-6, 10e-15, 20e-15, q, q};
}

// |S21|(f) over a uniform grid for one flux bias of the QHV.
std::vector<double> s21_trace(const DeviceDescriptor& dev, double flux,
                              const std::vector<double>& fgrid, double r) {
  std::vector<double> s;
  s.reserve(fgrid.size());
  const std::vector<double> bias{flux};
  for (double f : fgrid) s.push_back(std::abs(abcd_to_s21(build_network(dev, bias, f), r, r, f)));
  return s;
}

// Local maxima above `threshold`, merged when closer than `merge_hz`.
std::vector<double> find_peaks(const std::vector<double>& fgrid, const std::vector<double>& s,
                               double threshold, double merge_hz) {
  std::vector<std::pair<double, double>> raw;  // (f, amplitude)
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    if (s[i] > threshold && s[i] > s[i - 1] && s[i] >= s[i + 1]) raw.push_back({fgrid[i], s[i]});
  std::vector<std::pair<double, double>> merged;
  for (const auto& p : raw) {
    if (!merged.empty() && p.first - merged.back().first < merge_hz) {
      if (p.second > merged.back().second) merged.back() = p;
    } else {
      merged.push_back(p);
    }
  }
  std::vector<double> freqs;
  for (const auto& p : merged) freqs.push_back(p.first);
  return freqs;
}

}  // namespace

TEST_CASE("1 direct-connection transmission") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(1000.0));
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    const double r1 = std::exp(logr(rng)), r2 = std::exp(logr(rng));
    const double tau = std::norm(abcd_to_s21(TwoPort::identity(), r1, r2, 5e9));
    const double expect = 4.0 * r1 * r2 / ((r1 + r2) * (r1 + r2));
    ok = ok && std::abs(tau - expect) <= 1e-12 * expect;
  }
  report(1, "identity cascade reproduces 4R1R2/(R1+R2)^2 to 1e-12", ok);
}

TEST_CASE("2 quantum-limited heat flow") {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> temp(0.05, 0.5);
  const TransmissionProvider unity = [](double) { return 1.0; };
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    double t1 = temp(rng), t2 = temp(rng);
    if (std::abs(t1 - t2) < 0.02) t2 = t1 + 0.05;  // keep the difference resolvable
    const double closed = quantum_limited_power(t1, t2);
    const double numeric = net_heat_flow(unity, t1, t2).net_power;
    ok = ok && std::abs(numeric - closed) <= 1e-6 * std::abs(closed);
  }
  report(2, "tau == 1 gives (pi^2 kB^2 / 6h)(T1^2 - T2^2) to 1e-6", ok);
}

TEST_CASE("3 closed-form black-box equivalences") {
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool ok_series = true, ok_parallel = true, ok_h = true;

  // series black-box impedance between real terminations
  for (int i = 0; i < 100; ++i) {
    const double r1 = 1.0 + 199.0 * u(rng), r2 = 1.0 + 199.0 * u(rng);
    const complex_t zb(50.0 * u(rng), 400.0 * (u(rng) - 0.5));
    const double closed = tau_series(zb, complex_t(r1, 0.0), complex_t(r2, 0.0));
    const double general = std::norm(abcd_to_s21(series_impedance(zb), r1, r2, 5e9));
    ok_series = ok_series && std::abs(closed - general) <= 1e-9 * std::max(closed, 1e-30);
  }

  // parallel black-box admittance
  for (int i = 0; i < 100; ++i) {
    const double r1 = 1.0 + 199.0 * u(rng), r2 = 1.0 + 199.0 * u(rng);
    const complex_t zb(10.0 + 200.0 * u(rng), 500.0 * (u(rng) - 0.5));
    const double closed = tau_parallel(zb, complex_t(r1, 0.0), complex_t(r2, 0.0));
    const double general = std::norm(abcd_to_s21(shunt_admittance(1.0 / zb), r1, r2, 5e9));
    ok_parallel = ok_parallel && std::abs(closed - general) <= 1e-9 * std::max(closed, 1e-30);
  }

  // transfer function vs S21 on arbitrary cascades
  for (int i = 0; i < 100; ++i) {
    const double f = 1e9 + 9e9 * u(rng);
    const double r1 = 1.0 + 99.0 * u(rng), r2 = 1.0 + 99.0 * u(rng);
    const TwoPort m = random_reactive_cascade(rng, f);
    const complex_t h = abcd_to_transfer_function(m, r1, r2, f);
    const complex_t s21 = abcd_to_s21(m, r1, r2, f);
    ok_h = ok_h && std::abs(h - 0.5 * std::sqrt(r2 / r1) * s21) <= 1e-12 * std::abs(h);
  }

  CHECK(ok_series);
  CHECK(ok_parallel);
  CHECK(ok_h);
  report(3, "tau_series/tau_parallel/H agree with the ABCD->S21 route",
         ok_series && ok_parallel && ok_h);
}

TEST_CASE("4 quarter-wave resonator") {
  const DeviceDescriptor dev = quarter_wave_ref();
  bool ok = true;

  // transmission peak within 10 % of 6 GHz
  double best_f = 0.0, best = -1.0;
  for (double f = 4e9; f <= 8e9; f += 2e6) {
    const double t = std::norm(abcd_to_s21(build_network(dev, {}, f), 0.1, 50.0, f));
    if (t > best) { best = t; best_f = f; }
  }
  ok = ok && std::abs(best_f - 6e9) <= 0.10 * 6e9;

  // P_net(R) with matched terminations has a single interior maximum
  std::vector<double> rs;
  for (int i = 0; i < 25; ++i) rs.push_back(1.0 * std::pow(500.0, i / 24.0));
  QuadratureOptions opts;
  opts.rel_tol = 1e-7;
  opts.resonance_seeds = resonance_seeds(dev, {}, 30.0 * kBoltzmann * 0.35 / kPlanck);
  std::vector<double> power;
  for (double r : rs)
    power.push_back(
        net_heat_flow(make_transmission_provider(dev, {}, r, r), 0.35, 0.12, opts).net_power);
  const std::size_t arg =
      static_cast<std::size_t>(std::max_element(power.begin(), power.end()) - power.begin());
  ok = ok && arg > 0 && arg + 1 < power.size();
  for (std::size_t i = 1; i < power.size(); ++i) {
    if (i <= arg)
      ok = ok && power[i] > power[i - 1];
    else
      ok = ok && power[i] < power[i - 1];
  }

  report(4, "lambda/4 peak near 6 GHz and unimodal P(R)", ok);
}

TEST_CASE("5 quantum heat valve flux modulation") {
  const DeviceDescriptor dev = qhv_ref();
  const ThermalPort hot(12.0, 0.35), cold(12.0, 0.12);
  QuadratureOptions opts;  // sweep driver adds per-point resonance seeds

  std::vector<double> axis;
  for (int i = 0; i < 201; ++i) axis.push_back(-0.5 + i / 200.0);
  const auto pts = sweep_flux(dev, flux_grid(axis), hot, cold, opts);

  bool ok = true;
  double p_max = -1.0, p_min = 1e300;
  for (const auto& pt : pts) {
    if (!pt.result) { ok = false; continue; }
    p_max = std::max(p_max, pt.result->net_power);
    p_min = std::min(p_min, pt.result->net_power);
  }
  const double dp = p_max - p_min;
  ok = ok && dp >= 0.29e-15 / 2.0 && dp <= 0.29e-15 * 2.0;
  ok = ok && (p_max - p_min) / p_max >= 0.9;

  // even in flux: the grid is symmetric about zero
  for (std::size_t i = 0; i < pts.size() / 2; ++i) {
    if (!pts[i].result || !pts[pts.size() - 1 - i].result) { ok = false; continue; }
    const double a = pts[i].result->net_power;
    const double b = pts[pts.size() - 1 - i].result->net_power;
    ok = ok && std::abs(a - b) <= 1e-9 * std::abs(a);
  }
  // periodic in one flux quantum
  for (double phi : {0.13, 0.37}) {
    const double a =
        net_heat_flow(make_transmission_provider(dev, {phi}, 12.0, 12.0), 0.35, 0.12, opts)
            .net_power;
    const double b =
        net_heat_flow(make_transmission_provider(dev, {phi + 1.0}, 12.0, 12.0), 0.35, 0.12, opts)
            .net_power;
    ok = ok && std::abs(a - b) <= 1e-9 * std::abs(a);
  }

  std::printf("  QHV: P_max %.3f fW, P_min %.3f fW, dP %.3f fW, modulation %.3f\n", p_max * 1e15,
              p_min * 1e15, dp * 1e15, (p_max - p_min) / p_max);
  report(5, "QHV dP within 2x of 0.29 fW, modulation >= 0.9, P(phi) even+periodic", ok);
}

TEST_CASE("6 QHV spectroscopy avoided crossings") {
  const DeviceDescriptor dev = qhv_ref();
  const double r = 0.1;
  std::vector<double> fgrid;
  for (int i = 0; i < 2001; ++i) fgrid.push_back(4e9 + 4e9 * i / 2000.0);

  // resonator branch measured with the qubit parked at half flux
  const auto parked = s21_trace(dev, 0.5, fgrid, r);
  const std::size_t arg =
      static_cast<std::size_t>(std::max_element(parked.begin(), parked.end()) - parked.begin());
  const double f_res = fgrid[arg];
  bool ok = std::abs(f_res - 5.6e9) <= 0.10 * 5.6e9;

  // count flux regions where the trace splits into two branches near f_res
  std::vector<bool> split;
  for (int i = 0; i < 100; ++i) {
    const double flux = -0.5 + i / 100.0;
    const auto peaks = find_peaks(fgrid, s21_trace(dev, flux, fgrid, r), 0.1, 150e6);
    int near = 0;
    for (double f : peaks)
      if (std::abs(f - f_res) <= 0.6e9) ++near;
    split.push_back(near >= 2);
  }
  int runs = 0;
  for (std::size_t i = 0; i < split.size(); ++i)
    if (split[i] && (i == 0 || !split[i - 1])) ++runs;
  if (split.front() && split.back()) --runs;  // the flux axis wraps
  ok = ok && runs == 2;

  std::printf("  spectroscopy: resonator branch %.3f GHz, %d avoided crossings per period\n",
              f_res / 1e9, runs);
  report(6, "exactly two avoided crossings, resonator branch near 5.6 GHz", ok);
}

TEST_CASE("7 double-pole flux map") {
  const DeviceDescriptor dev = double_pole_ref();
  const ThermalPort hot(12.0, 0.35), cold(12.0, 0.12);
  QuadratureOptions opts;
  opts.rel_tol = 1e-7;

  std::vector<double> axis;
  for (int i = 0; i < 41; ++i) axis.push_back(-0.5 + i / 40.0);
  const auto pts = sweep_flux(dev, flux_grid(axis, axis), hot, cold, opts);
  REQUIRE(pts.size() == 41 * 41);

  auto power = [&](std::size_t i, std::size_t j) -> double {
    const auto& pt = pts[i * 41 + j];
    return pt.result ? pt.result->net_power : -1.0;
  };

  bool ok = true;
  double global = -1.0;
  for (std::size_t i = 0; i < 41; ++i)
    for (std::size_t j = 0; j < 41; ++j) global = std::max(global, power(i, j));

  // one maximum per flux quadrant, located at |phi_i| in [0.3, 0.5]
  for (int si = 0; si < 2; ++si) {
    for (int sj = 0; sj < 2; ++sj) {
      double best = -1.0, b1 = 0.0, b2 = 0.0;
      for (std::size_t i = 0; i < 41; ++i) {
        for (std::size_t j = 0; j < 41; ++j) {
          if ((si == 0) != (axis[i] < 0.0) || (sj == 0) != (axis[j] < 0.0)) continue;
          if (power(i, j) > best) { best = power(i, j); b1 = axis[i]; b2 = axis[j]; }
        }
      }
      ok = ok && best >= 0.5 * global;  // all four lobes carry comparable power
      ok = ok && std::abs(std::abs(b1) - 0.4) <= 0.1 && std::abs(std::abs(b2) - 0.4) <= 0.1;
    }
  }

  // exchange symmetry of identical transmons
  for (std::size_t i = 0; i < 41; ++i)
    for (std::size_t j = i + 1; j < 41; ++j)
      ok = ok && std::abs(power(i, j) - power(j, i)) <= 1e-5 * std::abs(power(i, j));

  // parking either qubit at half flux closes the valve over the other's range
  double parked = -1.0;
  for (std::size_t k = 0; k < 41; ++k) {
    parked = std::max(parked, power(0, k));   // phi1 = -0.5
    parked = std::max(parked, power(k, 0));   // phi2 = -0.5
    parked = std::max(parked, power(40, k));  // phi1 = +0.5
    parked = std::max(parked, power(k, 40));  // phi2 = +0.5
  }
  ok = ok && parked < 0.3 * global;

  std::printf("  double pole: global max %.1f aW, parked max %.1f aW\n", global * 1e18,
              parked * 1e18);
  report(7, "four diagonal maxima near |phi| = 0.4, symmetric map, half-flux suppression", ok);
}

TEST_CASE("8 property suites and quadrature oracle") {
  bool ok = true;
  std::mt19937 rng(88);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // reciprocity / unitarity / passivity of lossless cascades
  bool ok_det = true, ok_recip = true, ok_unit = true, ok_passive = true;
  for (int i = 0; i < 50; ++i) {
    const double f = 1e9 + 9e9 * u(rng);
    const double r1 = 1.0 + 99.0 * u(rng), r2 = 1.0 + 99.0 * u(rng);
    const TwoPort m = random_reactive_cascade(rng, f);
    const double det_scale =
        std::abs(m.a) * std::abs(m.d) + std::abs(m.b) * std::abs(m.c) + 1.0;
    ok_det = ok_det && std::abs(m.det() - 1.0) < 1e-12 * det_scale;
    const complex_t s21 = abcd_to_s21(m, r1, r2, f);
    const complex_t s11 = abcd_to_s11(m, r1, r2, f);
    const TwoPort flipped{m.d, m.b, m.c, m.a};  // network seen from port 2
    const complex_t s12 = abcd_to_s21(flipped, r2, r1, f);
    ok_recip = ok_recip && std::abs(s21 - s12) <= 1e-9 * std::abs(s21);
    ok_unit = ok_unit && std::abs(std::norm(s11) + std::norm(s21) - 1.0) < 1e-9;
    ok_passive = ok_passive && std::norm(s21) <= 1.0 + 1e-12;
  }
  CHECK(ok_det);
  CHECK(ok_recip);
  CHECK(ok_unit);
  CHECK(ok_passive);
  ok = ok && ok_det && ok_recip && ok_unit && ok_passive;

  // thermal antisymmetry and the conductance-quantum bound
  const double f0 = 5e9, width = 5e8;
  const TransmissionProvider lorentz = [=](double f) {
    const double d = (f - f0) / (width / 2.0);
    return 1.0 / (1.0 + d * d);
  };
  QuadratureOptions opts;
  opts.resonance_seeds = {f0};
  const double fwd = net_heat_flow(lorentz, 0.35, 0.12, opts).net_power;
  const double rev = net_heat_flow(lorentz, 0.12, 0.35, opts).net_power;
  ok = ok && std::abs(fwd + rev) <= 1e-7 * std::abs(fwd);
  ok = ok && fwd > 0.0 && fwd <= quantum_limited_power(0.35, 0.12);

  // quadrature against a dense trapezoid oracle
  auto integrand = [&](double f) {
    const double hf = kPlanck * f;
    return hf * lorentz(f) *
           (1.0 / std::expm1(hf / (kBoltzmann * 0.35)) - 1.0 / std::expm1(hf / (kBoltzmann * 0.12)));
  };
  const double fmax = 30.0 * kBoltzmann * 0.35 / kPlanck;
  double dense = 0.5 * (integrand(1.0) + integrand(fmax));
  const std::size_t n = 1000000;
  for (std::size_t i = 1; i < n; ++i)
    dense += integrand(1.0 + (fmax - 1.0) * static_cast<double>(i) / static_cast<double>(n));
  dense *= (fmax - 1.0) / static_cast<double>(n);
  ok = ok && std::abs(fwd - dense) <= 1e-6 * std::abs(dense);

  // Touchstone round-trip
  SParameterTable t;
  t.reference_resistance = 50.0;
  for (int i = 0; i < 20; ++i) {
    t.frequency.push_back(1e9 * (i + 1));
    t.s11.push_back({u(rng) - 0.5, u(rng) - 0.5});
    t.s21.push_back({u(rng) - 0.5, u(rng) - 0.5});
    t.s12.push_back({u(rng) - 0.5, u(rng) - 0.5});
    t.s22.push_back({u(rng) - 0.5, u(rng) - 0.5});
  }
  std::ostringstream buf;
  write_touchstone(t, buf);
  const SParameterTable back = parse_touchstone(buf.str());
  ok = ok && back.size() == t.size();
  for (std::size_t i = 0; i < t.size(); ++i)
    ok = ok && std::abs(back.s21[i] - t.s21[i]) <= 1e-12;

  report(8, "network/thermal invariants, Touchstone round-trip, trapezoid oracle", ok);
}
