#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <istream>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qheatnet/errors.hpp"
#include "qheatnet/thermal.hpp"
#include "qheatnet/two_port.hpp"

namespace qheatnet {

/// Two-port S-parameter table read from a Touchstone v1 (.s2p) file.
struct SParameterTable {
  std::vector<double> frequency;  // Hz, strictly ascending
  std::vector<complex_t> s11, s21, s12, s22;
  double reference_resistance = 50.0;  // ohm
  std::string metadata;                // leading comment lines

  std::size_t size() const { return frequency.size(); }

  /// Worst-case |S12 - S21| over the grid; data-quality metric only.
  double reciprocity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < s21.size(); ++i)
      worst = std::max(worst, std::abs(s12[i] - s21[i]));
    return worst;
  }

  /// Largest |S21| in the table (passive data should stay near or below 1).
  double max_s21_magnitude() const {
    double worst = 0.0;
    for (const complex_t& s : s21) worst = std::max(worst, std::abs(s));
    return worst;
  }
};

namespace detail {

inline std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

inline double touchstone_unit_scale(const std::string& u) {
  if (u == "HZ") return 1.0;
  if (u == "KHZ") return 1e3;
  if (u == "MHZ") return 1e6;
  if (u == "GHZ") return 1e9;
  throw parse_error("unknown Touchstone frequency unit '" + u + "'");
}

enum class TsFormat { RealImag, MagAngle, DbAngle };

inline complex_t touchstone_pair(TsFormat fmt, double x, double y) {
  switch (fmt) {
    case TsFormat::RealImag:
      return {x, y};
    case TsFormat::MagAngle:
      return std::polar(x, y * std::numbers::pi / 180.0);
    case TsFormat::DbAngle:
      return std::polar(std::pow(10.0, x / 20.0), y * std::numbers::pi / 180.0);
  }
  return {};
}

}  // namespace detail

/// Parse a Touchstone v1 two-port file. Option line "# <unit> S <RI|MA|DB> R <ohms>"
/// with the usual defaults (GHz, MA, 50 ohm); '!' comments ignored; v2 rejected.
inline SParameterTable parse_touchstone(std::istream& in) {
  SParameterTable table;
  double unit_scale = 1e9;
  detail::TsFormat fmt = detail::TsFormat::MagAngle;
  bool option_seen = false;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto bang = line.find('!'); bang != std::string::npos) {
      if (bang == 0 || line.find_first_not_of(" \t") == bang) {
        if (table.frequency.empty() && !option_seen) {
          std::string c = line.substr(bang + 1);
          if (!c.empty()) table.metadata += (table.metadata.empty() ? "" : "\n") + c;
        }
      }
      line = line.substr(0, bang);
    }
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    if (tok == "[Version]" || tok.rfind("[", 0) == 0)
      throw parse_error("Touchstone v2 keywords are not supported (v1 only)", line_no);

    if (tok == "#") {
      if (option_seen) throw parse_error("duplicate option line", line_no);
      option_seen = true;
      std::string word;
      bool want_r = false;
      while (ls >> word) {
        const std::string u = detail::upper(word);
        if (want_r) {
          try {
            table.reference_resistance = std::stod(word);
          } catch (...) {
            throw parse_error("malformed reference resistance '" + word + "'", line_no);
          }
          if (!(table.reference_resistance > 0.0))
            throw parse_error("reference resistance must be > 0", line_no);
          want_r = false;
        } else if (u == "HZ" || u == "KHZ" || u == "MHZ" || u == "GHZ") {
          unit_scale = detail::touchstone_unit_scale(u);
        } else if (u == "S") {
          // parameter type; only S supported
        } else if (u == "Y" || u == "Z" || u == "H" || u == "G") {
          throw parse_error("only S-parameter Touchstone files are supported", line_no);
        } else if (u == "RI") {
          fmt = detail::TsFormat::RealImag;
        } else if (u == "MA") {
          fmt = detail::TsFormat::MagAngle;
        } else if (u == "DB") {
          fmt = detail::TsFormat::DbAngle;
        } else if (u == "R") {
          want_r = true;
        } else {
          throw parse_error("malformed option line token '" + word + "'", line_no);
        }
      }
      if (want_r) throw parse_error("option line 'R' without a resistance value", line_no);
      continue;
    }

    // Data row: f  S11(2)  S21(2)  S12(2)  S22(2)  -- Touchstone two-port order.
    std::array<double, 9> v{};
    ls.clear();
    ls.seekg(0);
    int count = 0;
    double x;
    while (ls >> x) {
      if (count < 9) v[static_cast<std::size_t>(count)] = x;
      ++count;
    }
    if (!ls.eof()) throw parse_error("non-numeric value in data row", line_no);
    if (count != 9)
      throw parse_error("expected 9 columns in two-port data row, got " + std::to_string(count),
                        line_no);
    const double f = v[0] * unit_scale;
    if (!table.frequency.empty() && f <= table.frequency.back())
      throw parse_error("frequency grid must be strictly ascending", line_no);
    table.frequency.push_back(f);
    table.s11.push_back(detail::touchstone_pair(fmt, v[1], v[2]));
    table.s21.push_back(detail::touchstone_pair(fmt, v[3], v[4]));
    table.s12.push_back(detail::touchstone_pair(fmt, v[5], v[6]));
    table.s22.push_back(detail::touchstone_pair(fmt, v[7], v[8]));
  }

  if (table.size() < 2) throw parse_error("Touchstone table needs at least 2 frequency points");
  return table;
}

inline SParameterTable parse_touchstone(const std::string& text) {
  std::istringstream in(text);
  return parse_touchstone(in);
}

/// Write a table back out in RI format (round-trip companion to the parser).
inline void write_touchstone(const SParameterTable& table, std::ostream& out) {
  out.precision(17);
  if (!table.metadata.empty()) {
    std::istringstream meta(table.metadata);
    std::string line;
    while (std::getline(meta, line)) out << "!" << line << "\n";
  }
  out << "# Hz S RI R " << table.reference_resistance << "\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.frequency[i];
    for (const auto* s : {&table.s11, &table.s21, &table.s12, &table.s22})
      out << " " << (*s)[i].real() << " " << (*s)[i].imag();
    out << "\n";
  }
}

namespace detail {

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant; no overshoot past
/// the data range.
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    slopes_.resize(n, 0.0);
    if (n < 2) return;
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    slopes_[0] = delta[0];
    slopes_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        slopes_[i] = 0.0;
      } else {
        const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
        const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
        slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    // clamp endpoint slopes (Fritsch-Carlson condition)
    for (std::size_t end : {std::size_t{0}, n - 1}) {
      const double d = end == 0 ? delta[0] : delta[n - 2];
      if (slopes_[end] * d <= 0.0)
        slopes_[end] = 0.0;
      else if (std::abs(slopes_[end]) > 3.0 * std::abs(d))
        slopes_[end] = 3.0 * d;
    }
  }

  double operator()(double x) const {
    if (x < x_.front() || x > x_.back()) return 0.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y_[i] + h * h10 * slopes_[i] + h01 * y_[i + 1] + h * h11 * slopes_[i + 1];
  }

 private:
  std::vector<double> x_, y_, slopes_;
};

}  // namespace detail

/// tau(f) = |S21(f)|^2 interpolated monotonically on the tabulated |S21|^2;
/// zero outside the grid. The provider owns an immutable copy of the data and
/// supports unlimited concurrent readers.
inline TransmissionProvider interpolated_provider(const SParameterTable& table) {
  std::vector<double> tau(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) tau[i] = std::norm(table.s21[i]);
  auto interp = std::make_shared<const detail::Pchip>(table.frequency, std::move(tau));
  return [interp](double f) { return std::max(0.0, (*interp)(f)); };
}

}  // namespace qheatnet
