#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "ramseylab/errors.hpp"

namespace ramseylab {

// Extended positive integer: 1 < 2 < ... < infinity.
// Degrees and block counts live here; infinity * n = infinity.
class ExtNat {
 public:
  static ExtNat infinity() { return ExtNat(kInf, Tag{}); }

  explicit ExtNat(std::uint64_t n) : v_(n) {
    if (n == 0) throw ValidationError("ExtNat: zero is not a valid value");
    if (n == kInf) throw ValidationError("ExtNat: value too large");
  }

  bool is_finite() const { return v_ != kInf; }

  std::uint64_t value() const {
    if (!is_finite()) throw Error("ExtNat: value() on infinity");
    return v_;
  }

  ExtNat operator*(const ExtNat& o) const {
    if (!is_finite() || !o.is_finite()) return infinity();
    if (v_ > kInf / o.v_) throw Error("ExtNat: multiplication overflow");
    return ExtNat(v_ * o.v_);
  }

  friend bool operator==(const ExtNat&, const ExtNat&) = default;
  friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    return a.v_ <=> b.v_;  // kInf is the largest representable, order is right
  }

  std::string to_string() const {
    return is_finite() ? std::to_string(v_) : "inf";
  }

 private:
  struct Tag {};
  ExtNat(std::uint64_t v, Tag) : v_(v) {}
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v_;
};

// Extended real: finite double or +infinity. Entropy values live here.
// x + infinity = infinity; log2(infinity) = infinity.
struct ExtReal {
  double v = 0.0;

  static ExtReal infinity() {
    return ExtReal{std::numeric_limits<double>::infinity()};
  }
  static ExtReal of(double x) { return ExtReal{x}; }

  static ExtReal log2_of(const ExtNat& n) {
    if (!n.is_finite()) return infinity();
    return ExtReal{std::log2(static_cast<double>(n.value()))};
  }

  bool is_finite() const { return std::isfinite(v); }

  ExtReal operator+(const ExtReal& o) const { return ExtReal{v + o.v}; }

  friend bool operator<(const ExtReal& a, const ExtReal& b) { return a.v < b.v; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a.v <= b.v; }

  // Fixed %.9f, "inf" for infinity; every report formats reals through this.
  std::string to_string() const {
    if (!is_finite()) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
  }
};

// Absolute-tolerance comparison; infinities compare equal to each other.
inline bool approx_equal(const ExtReal& a, const ExtReal& b, double tol = 1e-9) {
  if (!a.is_finite() || !b.is_finite()) return a.v == b.v;
  return std::abs(a.v - b.v) <= tol;
}

}  // namespace ramseylab
