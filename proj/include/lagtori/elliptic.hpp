#pragma once

// Elliptic integral of the first kind and the Jacobi sn function.
//
// Convention: functions take the *modulus* k, so that
//
//   F(theta, k) = int_0^theta dphi / sqrt(1 - k^2 sin^2 phi),
//   K(k)        = F(pi/2, k),
//   sn(F(theta, k), k) = sin(theta).
//
// Callers holding the parameter m = k^2 convert with
// EllipticModulus::from_parameter.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lagtori {

class EllipticModulus {
 public:
  explicit EllipticModulus(double k) : k_(k) {
    if (!(k >= 0.0 && k < 1.0)) {
      throw std::domain_error("elliptic modulus must satisfy 0 <= k < 1, got " +
                              std::to_string(k));
    }
  }

  static EllipticModulus from_parameter(double m) {
    if (!(m >= 0.0 && m < 1.0)) {
      throw std::domain_error("elliptic parameter must satisfy 0 <= m < 1, got " +
                              std::to_string(m));
    }
    return EllipticModulus(std::sqrt(m));
  }

  double k() const { return k_; }
  double parameter() const { return k_ * k_; }
  // k' = sqrt(1 - k^2), computed without cancellation near k = 1.
  double complementary() const { return std::sqrt((1.0 - k_) * (1.0 + k_)); }

 private:
  double k_;
};

namespace detail {

// Carlson's symmetric integral R_F(x, y, z) by the duplication theorem.
// Requires x, y, z >= 0 with at most one of them zero.
inline double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 0.0015;
  for (int iter = 0; iter < 100; ++iter) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    const double ave = (x + y + z) / 3.0;
    const double dx = (ave - x) / ave, dy = (ave - y) / ave, dz = (ave - z) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) {
      const double e2 = dx * dy - dz * dz;
      const double e3 = dx * dy * dz;
      return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
    }
  }
  throw std::runtime_error("carlson_rf did not converge");
}

// Descending Landen (AGM) scale for sn/cn: a_n, c_n until c_n vanishes.
struct LandenScale {
  static constexpr int max_steps = 16;
  std::array<double, max_steps + 1> a{};
  std::array<double, max_steps + 1> c{};
  int steps = 0;

  explicit LandenScale(const EllipticModulus& mod) {
    a[0] = 1.0;
    c[0] = mod.k();
    double b = mod.complementary();
    while (steps < max_steps && c[steps] > 1e-17 * a[steps]) {
      const double an = a[steps];
      a[steps + 1] = 0.5 * (an + b);
      c[steps + 1] = 0.5 * (an - b);
      b = std::sqrt(an * b);
      ++steps;
    }
  }
};

}  // namespace detail

/// Complete integral K(k) by the arithmetic-geometric mean: K = pi / (2 AGM(1, k')).
inline double complete_k(const EllipticModulus& mod) {
  double a = 1.0;
  double b = mod.complementary();
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

/// Incomplete integral F(theta, k) for any finite theta.
///
/// The amplitude is reduced to [-pi/2, pi/2] using F(theta + n pi) = F(theta) + 2 n K.
inline double incomplete_f(double theta, const EllipticModulus& mod) {
  if (!std::isfinite(theta)) throw std::domain_error("incomplete_f: non-finite amplitude");
  const double n = std::nearbyint(theta / std::numbers::pi);
  const double r = theta - n * std::numbers::pi;
  const double s = std::sin(r);
  const double c = std::cos(r);
  const double k2 = mod.parameter();
  const double reduced = s * detail::carlson_rf(c * c, (1.0 - k2 * s * s), 1.0);
  return n == 0.0 ? reduced : reduced + 2.0 * n * complete_k(mod);
}

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

// Jacobi functions for a fixed modulus, with K and the Landen scale precomputed.
class JacobiElliptic {
 public:
  explicit JacobiElliptic(const EllipticModulus& mod)
      : mod_(mod), quarter_period_(complete_k(mod)), scale_(mod) {}

  const EllipticModulus& modulus() const { return mod_; }
  double quarter_period() const { return quarter_period_; }

  /// sn, cn, dn by descending Landen transformation. The argument is first
  /// reduced modulo the real period 4K.
  JacobiTriple sncndn(double u) const {
    if (!std::isfinite(u)) throw std::domain_error("jacobi_sn: non-finite argument");
    u = std::remainder(u, 4.0 * quarter_period_);
    double phi = std::ldexp(scale_.a[scale_.steps] * u, scale_.steps);
    for (int j = scale_.steps; j >= 1; --j) {
      phi = 0.5 * (phi + std::asin(scale_.c[j] * std::sin(phi) / scale_.a[j]));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    // dn >= k' > 0 for real arguments, so the square root carries the right sign.
    const double dn = std::sqrt(1.0 - mod_.parameter() * sn * sn);
    return {sn, cn, dn};
  }

  double sn(double u) const { return sncndn(u).sn; }

 private:
  EllipticModulus mod_;
  double quarter_period_;
  detail::LandenScale scale_;
};

inline JacobiTriple jacobi_sncndn(double u, const EllipticModulus& mod) {
  return JacobiElliptic(mod).sncndn(u);
}

inline double jacobi_sn(double u, const EllipticModulus& mod) { return jacobi_sncndn(u, mod).sn; }

}  // namespace lagtori
