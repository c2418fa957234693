#pragma once

#include <stdexcept>
#include <string>

namespace qheatnet {

// Bad input values (negative capacitance, asymmetry out of range, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An element or conversion is singular at the requested operating point
// (series capacitor at DC, SQUID at half flux with d = 0, vanishing
// S-parameter denominator).
class singular_error : public std::runtime_error {
 public:
  explicit singular_error(const std::string& msg, double frequency = 0.0)
      : std::runtime_error(msg), frequency_(frequency) {}
  double frequency() const { return frequency_; }

 private:
  double frequency_;
};

// File format problems, with the offending line when known.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& msg, long line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace qheatnet
