#pragma once

// Interval arithmetic with outward rounding.
//
// Rounding is emulated rather than switched: every endpoint is computed in
// round-to-nearest, the exact rounding error is recovered with an error-free
// transformation (TwoSum for +/-, fma for *, / and sqrt), and the endpoint is
// moved one ulp outward only when the rounded value lies on the wrong side of
// the exact result. Endpoints therefore come out exactly as a directed-rounding
// implementation would produce them, e.g. [1,2] + [3,4] is exactly [4,6].

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace lagtori {

class IntervalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace rounding {

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double max_finite = std::numeric_limits<double>::max();

inline double next_down(double v) { return std::nextafter(v, -inf); }
inline double next_up(double v) { return std::nextafter(v, inf); }

// Overflow from finite operands: the exact value is finite, so the rounded-down
// (resp. rounded-up) bound must be the largest finite double of that sign.
inline double clamp_overflow_down(double r, bool finite_operands) {
  return (finite_operands && r == inf) ? max_finite : r;
}
inline double clamp_overflow_up(double r, bool finite_operands) {
  return (finite_operands && r == -inf) ? -max_finite : r;
}

// Sign of (exact - rounded) for a + b, where s = fl(a + b).
inline double two_sum_error(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

// Below this magnitude products and quotients may be subnormal and the fma
// remainder is no longer exact; fall back to an unconditional nudge.
inline constexpr double tiny = 1e-290;

inline double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return clamp_overflow_down(s, std::isfinite(a) && std::isfinite(b));
  return two_sum_error(a, b, s) < 0.0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return clamp_overflow_up(s, std::isfinite(a) && std::isfinite(b));
  return two_sum_error(a, b, s) > 0.0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// Zero times anything (including an infinite endpoint) is zero.
inline double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return clamp_overflow_down(p, std::isfinite(a) && std::isfinite(b));
  if (std::abs(p) < tiny) return next_down(p);
  return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return clamp_overflow_up(p, std::isfinite(a) && std::isfinite(b));
  if (std::abs(p) < tiny) return next_up(p);
  return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

// Requires b != 0.
inline double div_down(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (std::isinf(b)) return std::isfinite(a) ? 0.0 : q;  // extended-real endpoint limit
  if (!std::isfinite(q)) return clamp_overflow_down(q, std::isfinite(a));
  if (std::abs(q) < tiny) return next_down(q);
  const double r = std::fma(-q, b, a);  // exact: a - q b
  return (r != 0.0 && ((r > 0.0) != (b > 0.0))) ? next_down(q) : q;
}

inline double div_up(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (std::isinf(b)) return std::isfinite(a) ? 0.0 : q;
  if (!std::isfinite(q)) return clamp_overflow_up(q, std::isfinite(a));
  if (std::abs(q) < tiny) return next_up(q);
  const double r = std::fma(-q, b, a);
  return (r != 0.0 && ((r > 0.0) == (b > 0.0))) ? next_up(q) : q;
}

// Requires a >= 0.
inline double sqrt_down(double a) {
  const double s = std::sqrt(a);
  if (!std::isfinite(s) || s == 0.0) return s;
  return std::fma(-s, s, a) < 0.0 ? next_down(s) : s;
}

inline double sqrt_up(double a) {
  const double s = std::sqrt(a);
  if (!std::isfinite(s)) return s;
  if (s == 0.0) return 0.0;
  return std::fma(-s, s, a) > 0.0 ? next_up(s) : s;
}

}  // namespace rounding

/// Closed interval [lo, hi]; either endpoint may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  // Implicit: exact double constants participate directly in expressions.
  constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double l, double h) : lo(l), hi(h) {
    if (std::isnan(l) || std::isnan(h) || l > h) {
      throw IntervalDomainError("invalid interval [" + std::to_string(l) + ", " +
                                std::to_string(h) + "]");
    }
  }

  double width() const { return rounding::sub_up(hi, lo); }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool is_point() const { return lo == hi; }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);
};

inline bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator+(const Interval& a, const Interval& b) {
  return {rounding::add_down(a.lo, b.lo), rounding::add_up(a.hi, b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return {rounding::sub_down(a.lo, b.hi), rounding::sub_up(a.hi, b.lo)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace rounding;
  const double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo),
                              mul_down(a.hi, b.hi)});
  const double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo),
                              mul_up(a.hi, b.hi)});
  return {lo, hi};
}

/// Throws IntervalDomainError when the divisor contains zero.
inline Interval operator/(const Interval& a, const Interval& b) {
  using namespace rounding;
  if (b.contains_zero()) {
    throw IntervalDomainError("interval division by [" + std::to_string(b.lo) + ", " +
                              std::to_string(b.hi) + "] containing zero");
  }
  const double lo = std::min({div_down(a.lo, b.lo), div_down(a.lo, b.hi), div_down(a.hi, b.lo),
                              div_down(a.hi, b.hi)});
  const double hi = std::max({div_up(a.lo, b.lo), div_up(a.lo, b.hi), div_up(a.hi, b.lo),
                              div_up(a.hi, b.hi)});
  return {lo, hi};
}

inline Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
inline Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
inline Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
inline Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

/// x^2 without the dependency overestimate of x * x.
inline Interval sqr(const Interval& a) {
  using namespace rounding;
  if (a.lo >= 0.0) return {mul_down(a.lo, a.lo), mul_up(a.hi, a.hi)};
  if (a.hi <= 0.0) return {mul_down(a.hi, a.hi), mul_up(a.lo, a.lo)};
  const double m = std::max(-a.lo, a.hi);
  return {0.0, mul_up(m, m)};
}

/// Throws IntervalDomainError for a negative lower endpoint.
inline Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) {
    throw IntervalDomainError("interval sqrt of negative lower endpoint " + std::to_string(a.lo));
  }
  return {rounding::sqrt_down(a.lo), rounding::sqrt_up(a.hi)};
}

/// Quotient of a positive numerator by a nonnegative denominator that may touch
/// zero: the result is [num.lo / den.hi, +inf) when den.lo == 0. Used where a
/// function blows up to +inf at the edge of its domain.
inline Interval div_nonneg(const Interval& num, const Interval& den) {
  if (!(num.lo > 0.0) || den.lo < 0.0 || !(den.hi > 0.0)) {
    throw IntervalDomainError("div_nonneg requires num > 0 and den >= 0, den not identically 0");
  }
  if (den.lo > 0.0) return num / den;
  return {rounding::div_down(num.lo, den.hi), rounding::inf};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
  return os << '[' << a.lo << ", " << a.hi << ']';
}

/// Axis-aligned box in the plane.
struct Box2 {
  Interval x;
  Interval y;

  double width() const { return std::max(x.width(), y.width()); }
  double area() const { return (x.hi - x.lo) * (y.hi - y.lo); }
  bool contains(double px, double py) const { return x.contains(px) && y.contains(py); }
  bool contains(const Box2& o) const { return x.contains(o.x) && y.contains(o.y); }

  /// Bisects the wider dimension.
  std::pair<Box2, Box2> split() const {
    if (x.hi - x.lo >= y.hi - y.lo) {
      const double m = x.mid();
      return {Box2{Interval(x.lo, m), y}, Box2{Interval(m, x.hi), y}};
    }
    const double m = y.mid();
    return {Box2{x, Interval(y.lo, m)}, Box2{x, Interval(m, y.hi)}};
  }
};

inline bool operator==(const Box2& a, const Box2& b) { return a.x == b.x && a.y == b.y; }

}  // namespace lagtori
