#pragma once

// Double periodicity of the Hamiltonian-minimal tori. The lift is invariant
// under y -> y + 2 pi; a second period (N T, N tau) exists when
//   lambda_1 = (G_1(T) - G_3(T) + (alpha1 - alpha3) tau) / (2 pi),
//   lambda_2 = (G_2(T) - G_3(T) + (alpha2 - alpha3) tau) / (2 pi)
// are both rational. Eliminating tau leaves the invariant
//   mu = ((alpha2 - alpha3) dG13 - (alpha1 - alpha3) dG23) / (2 pi),
// which must be rational; tau is then chosen to make lambda_1 rational.

#include "mironov.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace lagtori {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return double(num) / double(den); }

  static Rational reduced(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    return {n / (g == 0 ? 1 : g), d / (g == 0 ? 1 : g)};
  }
};

inline bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }

struct PhaseDifferences {
  double d13 = 0.0;  // G_1(T) - G_3(T)
  double d23 = 0.0;  // G_2(T) - G_3(T)
};

inline PhaseDifferences phase_differences(const MironovTorus& t) {
  const double T = t.constants().T;
  const double g3 = t.g_phase(T, 2);
  return {t.g_phase(T, 0) - g3, t.g_phase(T, 1) - g3};
}

/// ((alpha2 - alpha3) dG13 - (alpha1 - alpha3) dG23) / (2 pi).
inline double tau_free_invariant(const AlphaTriple& al, const PhaseDifferences& g) {
  return (double(al[1] - al[2]) * g.d13 - double(al[0] - al[2]) * g.d23) / (2.0 * std::numbers::pi);
}

/// Best rational approximation with denominator <= max_den from the continued
/// fraction of v (convergents and the admissible semiconvergent).
inline Rational best_rational(double v, std::int64_t max_den) {
  if (!std::isfinite(v)) throw std::domain_error("best_rational of a non-finite value");
  if (max_den < 1) throw std::invalid_argument("max_den must be >= 1");
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double fa = std::floor(x);
    if (std::abs(fa) > 9e15) break;
    const auto a = static_cast<std::int64_t>(fa);
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Largest semiconvergent still within the cap; keep it if it beats p1/q1.
      const std::int64_t k = (max_den - q0) / q1;
      const std::int64_t ps = k * p1 + p0, qs = k * q1 + q0;
      if (qs >= 1 && std::abs(v - double(ps) / double(qs)) < std::abs(v - double(p1) / double(q1))) {
        return Rational::reduced(ps, qs);
      }
      break;
    }
    const std::int64_t p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - fa;
    if (frac < 1e-15 || double(p1) / double(q1) == v) break;
    x = 1.0 / frac;
  }
  return Rational::reduced(p1, q1);
}

struct LatticeData {
  PhaseDifferences dg;
  double mu = 0.0;
  Rational mu_fit;
  double tau = 0.0;
  Rational lambda1;
  Rational lambda2;
  std::int64_t N = 1;
  std::array<double, 2> e1{0.0, 2.0 * std::numbers::pi};
  std::array<double, 2> e2{0.0, 0.0};
  double approx_error = 0.0;  // |mu - p/q|
};

struct NotPeriodic {
  double mu = 0.0;
  Rational best;
  double residual = 0.0;
};

using PeriodicityResult = std::variant<LatticeData, NotPeriodic>;

namespace detail {
// Returns (g, s, t) with s a + t b = g = gcd(a, b).
inline std::array<std::int64_t, 3> extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}
}  // namespace detail

/// Builds the lattice from given phase differences. With A = alpha1 - alpha3,
/// B = alpha2 - alpha3 coprime and mu ~ p/q: integers n1, n2 with B n1 - A n2 = p
/// give lambda_1 = n1/q, lambda_2 = n2/q, tau = (2 pi lambda_1 - dG13)/A, N = q.
inline PeriodicityResult rational_fit_from(const AlphaTriple& al, const PhaseDifferences& g, double T,
                                           std::int64_t max_den = 1'000'000, double tol = 1e-8) {
  if (!al.coprime()) {
    throw std::invalid_argument("rational_fit requires gcd(alpha1 - alpha3, alpha2 - alpha3) = 1, alpha = " +
                                al.str());
  }
  const double mu = tau_free_invariant(al, g);
  const Rational r = best_rational(mu, max_den);
  const double residual = std::abs(mu - r.value());
  if (residual > tol) return NotPeriodic{mu, r, residual};

  const std::int64_t A = al[0] - al[2], B = al[1] - al[2];
  // B s - A t = 1, so n1 = p s, n2 = p t solve B n1 - A n2 = p.
  const auto [gg, s, t] = detail::extended_gcd(B, -A);
  (void)gg;
  const std::int64_t n1 = r.num * s, n2 = r.num * t;

  LatticeData L;
  L.dg = g;
  L.mu = mu;
  L.mu_fit = r;
  L.lambda1 = Rational::reduced(n1, r.den);
  L.lambda2 = Rational::reduced(n2, r.den);
  L.tau = (2.0 * std::numbers::pi * L.lambda1.value() - g.d13) / double(A);
  L.N = std::lcm(L.lambda1.den, L.lambda2.den);
  L.e2 = {double(L.N) * T, double(L.N) * L.tau};
  L.approx_error = residual;
  return L;
}

inline PeriodicityResult rational_fit(const MironovTorus& t, std::int64_t max_den = 1'000'000,
                                      double tol = 1e-8) {
  return rational_fit_from(t.alpha(), phase_differences(t), t.constants().T, max_den, tol);
}

/// 1 - |<u, w>| for unit vectors: zero iff they define the same point of CP^2.
inline double projective_distance(const std::array<std::complex<double>, 3>& u,
                                  const std::array<std::complex<double>, 3>& w) {
  std::complex<double> ip(0.0, 0.0);
  for (int i = 0; i < 3; ++i) ip += std::conj(u[i]) * w[i];
  return std::max(0.0, 1.0 - std::abs(ip));
}

}  // namespace lagtori
