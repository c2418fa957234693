#pragma once

#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qheatnet/errors.hpp"
#include "qheatnet/sweep.hpp"
#include "qheatnet/thermal.hpp"

namespace qheatnet {

enum class SweepKind { Flux, Flux2D, Resistance, Temperature };

inline void to_json(nlohmann::json& j, const HeatResult& r) {
  j = nlohmann::json{{"net_power_W", r.net_power},
                     {"quadrature_error_estimate_W", r.quadrature_error_estimate},
                     {"f_max_Hz", r.f_max_used},
                     {"evaluations", r.evaluations}};
  if (!r.spectrum.empty()) {
    nlohmann::json spec = nlohmann::json::array();
    for (const auto& [f, s] : r.spectrum) spec.push_back({f, s});
    j["spectrum"] = std::move(spec);
  }
}

inline void from_json(const nlohmann::json& j, HeatResult& r) {
  j.at("net_power_W").get_to(r.net_power);
  j.at("quadrature_error_estimate_W").get_to(r.quadrature_error_estimate);
  j.at("f_max_Hz").get_to(r.f_max_used);
  j.at("evaluations").get_to(r.evaluations);
  r.spectrum.clear();
  if (j.contains("spectrum"))
    for (const auto& row : j.at("spectrum"))
      r.spectrum.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
}

namespace detail {
inline void csv_double(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}
}  // namespace detail

/// Sweep results as CSV (LF endings). Failed points carry nan values; their
/// messages go to JSON output or the caller's log.
inline void write_sweep_csv(const std::vector<SweepPoint>& points, SweepKind kind,
                            std::ostream& out) {
  switch (kind) {
    case SweepKind::Flux: out << "flux_phi0,P_net_W,err_W,f_max_Hz\n"; break;
    case SweepKind::Flux2D: out << "flux_phi0,flux2_phi0,P_net_W,err_W,f_max_Hz\n"; break;
    case SweepKind::Resistance: out << "R1_ohm,P_net_W,err_W,f_max_Hz\n"; break;
    case SweepKind::Temperature: out << "T1_K,P_net_W,err_W,f_max_Hz\n"; break;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SweepPoint& pt : points) {
    switch (kind) {
      case SweepKind::Flux: detail::csv_double(out, pt.flux.at(0)); break;
      case SweepKind::Flux2D:
        detail::csv_double(out, pt.flux.at(0));
        out << ",";
        detail::csv_double(out, pt.flux.at(1));
        break;
      case SweepKind::Resistance: detail::csv_double(out, pt.resistance_1); break;
      case SweepKind::Temperature: detail::csv_double(out, pt.temperature_1); break;
    }
    out << ",";
    detail::csv_double(out, pt.result ? pt.result->net_power : nan);
    out << ",";
    detail::csv_double(out, pt.result ? pt.result->quadrature_error_estimate : nan);
    out << ",";
    detail::csv_double(out, pt.result ? pt.result->f_max_used : nan);
    out << "\n";
  }
}

inline nlohmann::json sweep_to_json(const std::vector<SweepPoint>& points, SweepKind kind) {
  nlohmann::json j = nlohmann::json::array();
  for (const SweepPoint& pt : points) {
    nlohmann::json row;
    if (kind == SweepKind::Flux || kind == SweepKind::Flux2D) {
      row["flux_phi0"] = pt.flux.at(0);
      if (kind == SweepKind::Flux2D) row["flux2_phi0"] = pt.flux.at(1);
    } else if (kind == SweepKind::Resistance) {
      row["R1_ohm"] = pt.resistance_1;
    } else {
      row["T1_K"] = pt.temperature_1;
    }
    if (pt.result) row["result"] = *pt.result;
    if (!pt.error.empty()) row["error"] = pt.error;
    j.push_back(std::move(row));
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qheatnet
