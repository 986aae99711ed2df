#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace renyi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Extended real order in [0, inf]; values within 1e-9 of 1 are treated as exactly 1.
class RenyiOrder {
 public:
  static constexpr double kSnap = 1e-9;

  RenyiOrder(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v) || v < 0) throw std::invalid_argument("Renyi order must lie in [0, inf]");
  }

  static RenyiOrder infinity() { return RenyiOrder(kInf); }

  double value() const { return v_; }
  bool is_infinite() const { return std::isinf(v_); }
  bool is_one() const { return std::abs(v_ - 1.0) <= kSnap; }
  bool is_zero() const { return v_ == 0.0; }
  bool is_half() const { return std::abs(v_ - 0.5) <= kSnap; }
  bool at_least_half() const { return v_ >= 0.5 - kSnap; }

  // beta with 1/alpha + 1/beta = 2.
  RenyiOrder conjugate() const {
    if (!at_least_half()) throw std::invalid_argument("conjugate order requires alpha >= 1/2");
    if (is_infinite()) return RenyiOrder(0.5);
    if (is_half()) return infinity();
    if (is_one()) return RenyiOrder(1.0);
    return RenyiOrder(v_ / (2.0 * v_ - 1.0));
  }

  // alpha^{alpha/(alpha-1)}, with the limit e at 1; unbounded as alpha grows.
  double power_factor() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    if (is_one()) return std::exp(1.0);
    return std::pow(v_, v_ / (v_ - 1.0));
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v_);
    return buf;
  }

  friend bool operator==(const RenyiOrder& a, const RenyiOrder& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return std::abs(a.v_ - b.v_) <= kSnap;
  }

 private:
  double v_;
};

}  // namespace renyi
