#pragma once

#include <cctype>
#include <map>
#include <string>

#include "qheatnet/errors.hpp"

namespace qheatnet::units {

enum class Kind {
  Dimensionless,
  Frequency,
  Capacitance,
  InductancePerLength,
  CapacitancePerLength,
  Length,
  Temperature,
  Resistance,
  Current,
  Power,
};

namespace detail {
inline const std::map<Kind, std::map<std::string, double>>& tables() {
  static const std::map<Kind, std::map<std::string, double>> t = {
      {Kind::Dimensionless, {{"", 1.0}}},
      {Kind::Frequency, {{"", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}},
      {Kind::Capacitance, {{"", 1.0}, {"F", 1.0}, {"fF", 1e-15}, {"pF", 1e-12}, {"nF", 1e-9}}},
      {Kind::InductancePerLength,
       {{"", 1.0}, {"H/m", 1.0}, {"uH/m", 1e-6}, {"nH/m", 1e-9}, {"pH/m", 1e-12}}},
      {Kind::CapacitancePerLength,
       {{"", 1.0}, {"F/m", 1.0}, {"nF/m", 1e-9}, {"pF/m", 1e-12}, {"fF/m", 1e-15}}},
      {Kind::Length,
       {{"", 1.0}, {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6}, {"nm", 1e-9}}},
      {Kind::Temperature, {{"", 1.0}, {"K", 1.0}, {"mK", 1e-3}}},
      {Kind::Resistance,
       {{"", 1.0}, {"Ohm", 1.0}, {"ohm", 1.0}, {"Ω", 1.0}, {"mOhm", 1e-3},
        {"kOhm", 1e3}, {"MOhm", 1e6}}},
      {Kind::Current, {{"", 1.0}, {"A", 1.0}, {"mA", 1e-3}, {"uA", 1e-6}, {"nA", 1e-9}}},
      {Kind::Power, {{"", 1.0}, {"W", 1.0}, {"pW", 1e-12}, {"fW", 1e-15}, {"aW", 1e-18}}},
  };
  return t;
}
}  // namespace detail

/// Parse "value [unit]" into SI, validating the unit against the expected kind.
inline double parse(const std::string& text, Kind kind, const std::string& context = "") {
  std::size_t pos = 0;
  double value;
  try {
    value = std::stod(text, &pos);
  } catch (...) {
    throw domain_error("cannot parse number from '" + text + "'" +
                       (context.empty() ? "" : " for " + context));
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  std::string unit = text.substr(pos);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back()))) unit.pop_back();
  const auto& table = detail::tables().at(kind);
  auto it = table.find(unit);
  if (it == table.end())
    throw domain_error("unknown or mismatched unit '" + unit + "' in '" + text + "'" +
                       (context.empty() ? "" : " for " + context));
  return value * it->second;
}

}  // namespace qheatnet::units
