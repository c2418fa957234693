#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

namespace qheatnet {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  // (x, f(x)) at every abscissa visited, sorted by x, when sampling is on.
  std::vector<std::pair<double, double>> samples;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1]; column order: node, Gauss w, Kronrod w.
inline constexpr double gk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
void gk15_panel(const F& f, double a, double b, double& value, double& error,
                std::vector<std::pair<double, double>>* samples) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double y0 = f(mid);
  double g7 = gk15[0][1] * y0;
  double k15 = gk15[0][2] * y0;
  if (samples) samples->emplace_back(mid, y0);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * gk15[i][0];
    const double yl = f(mid - dx);
    const double yr = f(mid + dx);
    g7 += gk15[i][1] * (yl + yr);
    k15 += gk15[i][2] * (yl + yr);
    if (samples) {
      samples->emplace_back(mid - dx, yl);
      samples->emplace_back(mid + dx, yr);
    }
  }
  value = k15 * half;
  // |K15 - G7| as the panel error; conservative but cheap to drive to tolerance.
  error = std::abs(k15 - g7) * half;
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-22;
  std::size_t max_evaluations = 200000;
  bool collect_samples = false;
  // Interior breakpoints that become initial panel edges (values outside
  // (a, b) are ignored). Use these to pin sharp features.
  std::vector<double> breakpoints;
};

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, const AdaptiveOptions& opts) {
  QuadratureResult res;
  if (!(b > a)) return res;

  std::vector<double> edges{a, b};
  for (double x : opts.breakpoints)
    if (x > a && x < b) edges.push_back(x);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto* samples = opts.collect_samples ? &res.samples : nullptr;

  std::priority_queue<detail::Panel> heap;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    detail::Panel p{edges[i], edges[i + 1], 0.0, 0.0};
    detail::gk15_panel(f, p.a, p.b, p.value, p.error, samples);
    res.evaluations += 15;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }

  auto tolerance = [&] { return std::max(opts.rel_tol * std::abs(total), opts.abs_tol); };

  while (total_err > tolerance() && res.evaluations + 30 <= opts.max_evaluations) {
    detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted at double precision
      total_err -= worst.error;
      continue;
    }
    detail::Panel left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
    detail::gk15_panel(f, left.a, left.b, left.value, left.error, samples);
    detail::gk15_panel(f, right.a, right.b, right.value, right.error, samples);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  res.value = total;
  res.error_estimate = total_err;
  res.converged = total_err <= tolerance();
  if (samples) std::sort(samples->begin(), samples->end());
  return res;
}

}  // namespace qheatnet
