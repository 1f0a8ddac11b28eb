#pragma once

// Area, Willmore functional and energy E = A + W/8 for the Clifford, homogeneous
// and Hamiltonian-minimal tori.

#include "mironov.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lagtori {

/// 4 pi^2 / (3 sqrt 3).
inline double clifford_energy() { return 4.0 * std::numbers::pi * std::numbers::pi / (3.0 * std::sqrt(3.0)); }

struct FunctionalValues {
  double A = 0.0;
  double W = 0.0;
  double E = 0.0;
  double ratio = 0.0;  // E / clifford_energy()

  static FunctionalValues from(double area, double willmore) {
    FunctionalValues v;
    v.A = area;
    v.W = willmore;
    v.E = area + willmore / 8.0;
    v.ratio = v.E / clifford_energy();
    return v;
  }
};

/// Radii of a homogeneous torus |z_i| = r_i, with r1^2 + r2^2 + r3^2 = 1.
struct HomogeneousParams {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;

  HomogeneousParams() = default;
  HomogeneousParams(double a, double b, double c) : r1(a), r2(b), r3(c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
      throw std::invalid_argument("homogeneous radii must be positive");
    }
    const double s = a * a + b * b + c * c;
    if (std::abs(s - 1.0) > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "homogeneous radii must satisfy r1^2 + r2^2 + r3^2 = 1, got " << s;
      throw std::invalid_argument(os.str());
    }
  }

  /// Rescales positive radii to unit norm.
  static HomogeneousParams normalized(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
      throw std::invalid_argument("homogeneous radii must be positive");
    }
    const double n = std::sqrt(a * a + b * b + c * c);
    return {a / n, b / n, c / n};
  }
};

/// pi^2 (1 - r1^2)(1 - r2^2)(1 - r3^2) / (2 r1 r2 r3).
inline double homogeneous_energy(const HomogeneousParams& p) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return pi2 * (1.0 - p.r1 * p.r1) * (1.0 - p.r2 * p.r2) * (1.0 - p.r3 * p.r3) /
         (2.0 * p.r1 * p.r2 * p.r3);
}

/// int_0^T 2e^v dx through sn(omega x) = sin(theta):
/// (1/omega) int_0^pi (a1 - (a1 - a2) sin^2) / sqrt(1 - m sin^2) dtheta.
inline double conformal_period_integral(const MironovTorus& t) {
  const auto& d = t.constants();
  const double a1 = t.point().a1, a2 = t.point().a2;
  auto f = [&](double th) {
    const double s2 = std::sin(th) * std::sin(th);
    return (a1 - (a1 - a2) * s2) / std::sqrt(1.0 - d.m * s2);
  };
  return integrate(f, 0.0, std::numbers::pi, 1e-12).value / d.omega;
}

inline void require_cover(int n) {
  if (n < 1) throw std::invalid_argument("cover multiplicity N must be >= 1");
}

/// A = 2 pi N int_0^T 2e^v dx.
inline double area_mironov(const MironovTorus& t, int n = 1) {
  require_cover(n);
  return 2.0 * std::numbers::pi * n * conformal_period_integral(t);
}

/// W = 2 pi N T (a^2 + b^2).
inline double willmore_mironov(const MironovTorus& t, int n = 1) {
  require_cover(n);
  const auto& d = t.constants();
  return 2.0 * std::numbers::pi * n * d.T * (d.a * d.a + d.b * d.b);
}

/// W as the integral of |H|^2 = e^{-v}(a^2 + b^2)/2 against d sigma = 2e^v dx dy.
inline double willmore_mironov_quadrature(const MironovTorus& t, int n = 1) {
  require_cover(n);
  const auto& d = t.constants();
  const double s = d.a * d.a + d.b * d.b;
  auto f = [&](double x) {
    const double w = t.conformal_factor(x);
    return 0.5 * (2.0 / w) * s * w;
  };
  return 2.0 * std::numbers::pi * n * integrate(f, 0.0, d.T, 1e-10 * std::max(1.0, s)).value;
}

inline FunctionalValues energy_mironov(const MironovTorus& t, int n = 1) {
  return FunctionalValues::from(area_mironov(t, n), willmore_mironov(t, n));
}

/// (1/2) int over the fundamental domain of 4e^v + (beta_x^2 + beta_y^2)/4, with
/// the x-integral taken directly over [0, N T].
inline double potential_energy_check(const MironovTorus& t, int n = 1) {
  require_cover(n);
  const auto& d = t.constants();
  const double s = d.a * d.a + d.b * d.b;
  auto v = [&](double x) { return 2.0 * t.conformal_factor(x) + 0.25 * s; };
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    total += integrate(v, k * d.T, (k + 1) * d.T, 1e-10 * std::max(1.0, s)).value;
  }
  return 0.5 * 2.0 * std::numbers::pi * total;
}

/// pi^2 (a1 + a2) / sqrt(a1 + a3); A exceeds N times this.
inline double area_lower_bound(const MironovTorus& t) {
  return std::numbers::pi * std::numbers::pi * (t.point().a1 + t.point().a2) / t.constants().omega;
}

/// 2 pi^2 (a^2 + b^2) / sqrt(a1 + a3); W exceeds N times this.
inline double willmore_lower_bound(const MironovTorus& t) {
  const auto& d = t.constants();
  return 2.0 * std::numbers::pi * std::numbers::pi * (d.a * d.a + d.b * d.b) / d.omega;
}

/// pi^2 (a1 + a2 + (a^2 + b^2)/4) / sqrt(a1 + a3).
inline double energy_lower_bound(const MironovTorus& t) {
  const auto& d = t.constants();
  return std::numbers::pi * std::numbers::pi *
         (t.point().a1 + t.point().a2 + 0.25 * (d.a * d.a + d.b * d.b)) / d.omega;
}

}  // namespace lagtori
