#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qheatnet/device.hpp"
#include "qheatnet/errors.hpp"
#include "qheatnet/thermal.hpp"
#include "qheatnet/units.hpp"

namespace qheatnet {

struct GridSpec {
  double start = 0.0, stop = 0.0;
  std::size_t points = 0;
  bool log_spaced = false;

  std::vector<double> values() const {
    std::vector<double> v;
    if (points == 1) return {start};
    for (std::size_t i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(points - 1);
      v.push_back(log_spaced ? start * std::pow(stop / start, t) : start + t * (stop - start));
    }
    return v;
  }
};

struct SweepSection {
  std::optional<GridSpec> flux1;
  std::optional<GridSpec> flux2;
  std::optional<GridSpec> resistance;
  std::vector<double> temperatures;
};

struct FrequencySection {
  double start = 0.0, stop = 0.0;
  std::size_t points = 0;
};

struct OutputSection {
  std::string format = "csv";  // csv | json
  std::string path;
  bool spectrum = false;
};

struct RunConfig {
  std::optional<DeviceDescriptor> device;   // empty for touchstone input
  std::string touchstone_path;              // set when device section is 'touchstone'
  std::vector<double> flux;                 // fixed bias (arity of the device)
  ThermalPort port1{50.0, 0.0};
  ThermalPort port2{50.0, 0.0};
  QuadratureOptions quadrature;
  std::optional<SweepSection> sweep;
  std::optional<FrequencySection> frequency;
  OutputSection output;
};

namespace detail {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

inline std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline SectionMap parse_ini(const std::string& text) {
  SectionMap sections;
  std::istringstream in(text);
  std::string line, current;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw parse_error("unterminated section header", line_no);
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty()) throw parse_error("empty section name", line_no);
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw parse_error("expected 'key = value'", line_no);
    if (current.empty()) throw parse_error("key outside of any [section]", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) throw parse_error("empty key or value", line_no);
    if (!sections[current].emplace(key, val).second)
      throw parse_error("duplicate key '" + key + "'", line_no);
  }
  return sections;
}

inline SectionMap parse_json_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON config: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("JSON config must be an object of sections");
  SectionMap sections;
  for (const auto& [sec, body] : j.items()) {
    if (!body.is_object()) throw parse_error("config section '" + sec + "' must be an object");
    for (const auto& [key, val] : body.items()) {
      if (val.is_string())
        sections[sec][key] = val.get<std::string>();
      else
        sections[sec][key] = val.dump();
    }
  }
  return sections;
}

class SectionReader {
 public:
  SectionReader(const SectionMap& m, const std::string& name) : name_(name) {
    if (auto it = m.find(name); it != m.end()) entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    if (!entries_) return std::nullopt;
    seen_.insert(key);
    if (auto it = entries_->find(key); it != entries_->end()) return it->second;
    return std::nullopt;
  }

  std::optional<double> value(const std::string& key, units::Kind kind) {
    auto r = raw(key);
    if (!r) return std::nullopt;
    return units::parse(*r, kind, "[" + name_ + "] " + key);
  }

  double require(const std::string& key, units::Kind kind) {
    auto v = value(key, kind);
    if (!v) throw domain_error("missing required key '" + key + "' in [" + name_ + "]");
    return *v;
  }

  void finish() const {
    if (!entries_) return;
    for (const auto& [key, _] : *entries_)
      if (!seen_.count(key))
        throw domain_error("unknown key '" + key + "' in [" + name_ + "]");
  }

 private:
  const std::map<std::string, std::string>* entries_ = nullptr;
  std::string name_;
  std::set<std::string> seen_;
};

inline TransmonSpec read_transmon(SectionReader& dev, const std::string& suffix = "") {
  const double ic = dev.require("I_C_sigma" + suffix, units::Kind::Current);
  const double d = dev.require("d" + suffix, units::Kind::Dimensionless);
  const double cs = dev.require("C_s" + suffix, units::Kind::Capacitance);
  const double cjj = dev.value("C_JJ" + suffix, units::Kind::Capacitance).value_or(0.0);
  const double csigma = dev.value("C_sigma" + suffix, units::Kind::Capacitance).value_or(0.0);
  return TransmonSpec(JosephsonParams(ic, d), cs, csigma, cjj);
}

}  // namespace detail

/// Parse a run configuration from the key-value text format or its JSON
/// encoding (chosen by the leading character). Unknown sections/keys are
/// rejected.
inline RunConfig parse_run_config(const std::string& text) {
  const std::string trimmed = detail::trim(text);
  detail::SectionMap sections = (!trimmed.empty() && trimmed.front() == '{')
                                    ? detail::parse_json_config(text)
                                    : detail::parse_ini(text);

  static const std::set<std::string> known_sections = {"device", "ports", "sweep",
                                                       "quadrature", "output", "frequency"};
  for (const auto& [sec, _] : sections)
    if (!known_sections.count(sec)) throw domain_error("unknown config section [" + sec + "]");

  RunConfig cfg;

  detail::SectionReader dev(sections, "device");
  if (!dev.present()) throw domain_error("config needs a [device] section");
  const std::string type = dev.raw("type").value_or("");
  if (type == "quarter_wave") {
    QuarterWaveDevice d{dev.require("L_l", units::Kind::InductancePerLength),
                        dev.require("C_l", units::Kind::CapacitancePerLength),
                        dev.require("l_1", units::Kind::Length),
                        dev.require("l_2", units::Kind::Length),
                        dev.require("C_r", units::Kind::Capacitance)};
    cfg.device = d;
  } else if (type == "qhv") {
    QhvDevice d{dev.require("L_l", units::Kind::InductancePerLength),
                dev.require("C_l", units::Kind::CapacitancePerLength),
                dev.require("l", units::Kind::Length),
                dev.require("C_r", units::Kind::Capacitance), detail::read_transmon(dev)};
    cfg.device = d;
    cfg.flux = {dev.value("flux", units::Kind::Dimensionless).value_or(0.0)};
  } else if (type == "double_pole") {
    const TransmonSpec qa = detail::read_transmon(dev);
    // _b-suffixed transmon keys override; otherwise both qubits are identical
    const TransmonSpec qb = dev.raw("I_C_sigma_b") ? detail::read_transmon(dev, "_b") : qa;
    DoublePoleDevice d{dev.require("L_l", units::Kind::InductancePerLength),
                       dev.require("C_l", units::Kind::CapacitancePerLength),
                       dev.require("l", units::Kind::Length),
                       dev.require("C_r", units::Kind::Capacitance),
                       dev.require("C_t", units::Kind::Capacitance), qa, qb};
    cfg.device = d;
    cfg.flux = {dev.value("flux1", units::Kind::Dimensionless).value_or(0.0),
                dev.value("flux2", units::Kind::Dimensionless).value_or(0.0)};
  } else if (type == "touchstone") {
    auto file = dev.raw("file");
    if (!file) throw domain_error("touchstone device needs 'file = <path>'");
    cfg.touchstone_path = *file;
  } else {
    throw domain_error("device type must be quarter_wave | qhv | double_pole | touchstone");
  }
  dev.finish();

  detail::SectionReader ports(sections, "ports");
  if (!ports.present()) throw domain_error("config needs a [ports] section");
  cfg.port1 = ThermalPort(ports.require("R1", units::Kind::Resistance),
                          ports.require("T1", units::Kind::Temperature));
  cfg.port2 = ThermalPort(ports.require("R2", units::Kind::Resistance),
                          ports.require("T2", units::Kind::Temperature));
  ports.finish();

  detail::SectionReader quad(sections, "quadrature");
  if (quad.present()) {
    if (auto v = quad.value("rel_tol", units::Kind::Dimensionless)) cfg.quadrature.rel_tol = *v;
    if (auto v = quad.value("abs_tol", units::Kind::Power)) cfg.quadrature.abs_tol = *v;
    if (auto v = quad.value("f_max", units::Kind::Frequency)) cfg.quadrature.f_max_override = *v;
    if (auto v = quad.value("max_evaluations", units::Kind::Dimensionless))
      cfg.quadrature.max_evaluations = static_cast<std::size_t>(*v);
    quad.finish();
  }

  detail::SectionReader sweep(sections, "sweep");
  if (sweep.present()) {
    SweepSection s;
    auto read_grid = [&](const std::string& prefix, bool log_ok) -> std::optional<GridSpec> {
      const units::Kind kind = prefix == "R" ? units::Kind::Resistance : units::Kind::Dimensionless;
      auto start = sweep.value(prefix + "_start", kind);
      auto stop = sweep.value(prefix + "_stop", kind);
      auto pts = sweep.value(prefix + "_points", units::Kind::Dimensionless);
      if (!start && !stop && !pts) return std::nullopt;
      if (!start || !stop || !pts)
        throw domain_error("sweep grid '" + prefix + "' needs _start, _stop and _points");
      GridSpec g{*start, *stop, static_cast<std::size_t>(*pts), false};
      if (g.points < 1) throw domain_error("sweep '" + prefix + "_points' must be >= 1");
      if (log_ok)
        if (auto lg = sweep.raw(prefix + "_log")) g.log_spaced = (*lg == "true" || *lg == "1");
      return g;
    };
    s.flux1 = read_grid("flux", false);
    s.flux2 = read_grid("flux2", false);
    s.resistance = read_grid("R", true);
    if (auto list = sweep.raw("temperatures")) {
      std::istringstream in(*list);
      std::string item;
      while (std::getline(in, item, ','))
        s.temperatures.push_back(
            units::parse(detail::trim(item), units::Kind::Temperature, "[sweep] temperatures"));
    }
    sweep.finish();
    const int modes = (s.flux1 ? 1 : 0) + (s.resistance ? 1 : 0) + (!s.temperatures.empty() ? 1 : 0);
    if (modes != 1)
      throw domain_error("sweep section must define exactly one of flux, R or temperatures");
    if (s.flux2 && !s.flux1) throw domain_error("flux2 sweep requires a flux sweep as well");
    cfg.sweep = std::move(s);
  }

  detail::SectionReader freq(sections, "frequency");
  if (freq.present()) {
    FrequencySection f;
    f.start = freq.require("f_start", units::Kind::Frequency);
    f.stop = freq.require("f_stop", units::Kind::Frequency);
    f.points = static_cast<std::size_t>(freq.require("f_points", units::Kind::Dimensionless));
    if (!(f.stop > f.start) || f.points < 2)
      throw domain_error("[frequency] needs f_stop > f_start and f_points >= 2");
    cfg.frequency = f;
    freq.finish();
  }

  detail::SectionReader outp(sections, "output");
  if (outp.present()) {
    if (auto v = outp.raw("format")) {
      if (*v != "csv" && *v != "json") throw domain_error("output format must be csv or json");
      cfg.output.format = *v;
    }
    if (auto v = outp.raw("path")) cfg.output.path = *v;
    if (auto v = outp.raw("spectrum")) cfg.output.spectrum = (*v == "true" || *v == "1");
    outp.finish();
  }

  return cfg;
}

}  // namespace qheatnet
