#pragma once

// The Hamiltonian-minimal Lagrangian family psi(x, y) = (F_i(x) e^{i(G_i(x) + alpha_i y)})
// in CP^2: integer weights, the feasible moduli box, the constant c2 as a root of
// the biquadratic, the conformal factor 2e^v and the horizontal lift.
//
// Elliptic convention: the conformal factor is
//   2e^v(x) = a1 - (a1 - a2) sn^2(x sqrt(a1 + a3) | m),   m = (a1 - a2)/(a1 + a3),
// with m the *parameter* (modulus sqrt(m)). This is the reading under which the
// map is conformal; see tests/test_immersion.cpp.

#include "elliptic.hpp"
#include "interval.hpp"
#include "quadrature.hpp"
#include "quartic.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagtori {

class InfeasibleParameters : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateParameters : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularIntegrand : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class RootBranch { Plus, Minus };

inline const char* to_string(RootBranch b) { return b == RootBranch::Plus ? "plus" : "minus"; }

inline RootBranch root_branch_from_string(const std::string& s) {
  if (s == "plus" || s == "+") return RootBranch::Plus;
  if (s == "minus" || s == "-") return RootBranch::Minus;
  throw std::invalid_argument("root branch must be 'plus' or 'minus', got '" + s + "'");
}

/// Integer weights (alpha1, alpha2, alpha3) and their symmetric functions.
struct AlphaTriple {
  std::array<int, 3> v{};

  AlphaTriple() = default;
  AlphaTriple(int a1, int a2, int a3) : v{a1, a2, a3} {}

  int operator[](std::size_t i) const { return v[i]; }

  long long b() const { return -static_cast<long long>(v[0]) - v[1] - v[2]; }
  long long c() const {
    return static_cast<long long>(v[0]) * v[1] + static_cast<long long>(v[0]) * v[2] +
           static_cast<long long>(v[1]) * v[2];
  }
  long long c1() const { return -static_cast<long long>(v[0]) * v[1] * v[2]; }

  // alpha1 > alpha2 >= 0 > alpha3
  bool normalized() const { return v[0] > v[1] && v[1] >= 0 && v[2] < 0; }
  // alpha1 >= alpha2 >= 0 >= alpha3
  bool weakly_normalized() const { return v[0] >= v[1] && v[1] >= 0 && v[2] <= 0; }
  // gcd(alpha1 - alpha3, alpha2 - alpha3) = 1
  bool coprime() const { return std::gcd(v[0] - v[2], v[1] - v[2]) == 1; }

  std::string str() const {
    std::ostringstream os;
    os << '(' << v[0] << ',' << v[1] << ',' << v[2] << ')';
    return os.str();
  }
};

inline bool operator==(const AlphaTriple& a, const AlphaTriple& b) { return a.v == b.v; }

/// Result of reducing arbitrary weights to alpha1 >= alpha2 >= 0 >= alpha3 by a
/// simultaneous sign change and a permutation; the feasibility inequalities are
/// invariant under both.
struct AlphaNormalization {
  AlphaTriple alpha;
  bool negated = false;
  std::array<int, 3> source{0, 1, 2};  // alpha[i] = (+/-) raw[source[i]]

  std::string describe() const {
    std::ostringstream os;
    os << (negated ? "negated, " : "") << "order (" << source[0] + 1 << ',' << source[1] + 1 << ','
       << source[2] + 1 << ')';
    return os.str();
  }
};

/// Returns nullopt when all weights share a strict sign (no feasible moduli).
inline std::optional<AlphaNormalization> normalize(const AlphaTriple& raw) {
  for (bool negate : {false, true}) {
    AlphaNormalization n;
    n.negated = negate;
    std::array<int, 3> idx{0, 1, 2};
    std::array<int, 3> val{};
    for (int i = 0; i < 3; ++i) val[i] = negate ? -raw.v[i] : raw.v[i];
    std::stable_sort(idx.begin(), idx.end(), [&](int p, int q) { return val[p] > val[q]; });
    n.source = idx;
    n.alpha = AlphaTriple(val[idx[0]], val[idx[1]], val[idx[2]]);
    if (n.alpha.weakly_normalized()) return n;
  }
  return std::nullopt;
}

/// Q(x) = -(x + alpha1 alpha2)(x + alpha1 alpha3)(x + alpha2 alpha3).
inline double q_cubic(double x, const AlphaTriple& al) {
  return -(x + double(al[0]) * al[1]) * (x + double(al[0]) * al[2]) * (x + double(al[1]) * al[2]);
}

/// Coefficients of the biquadratic in c2:
///   (a1-a2)^2 X^4 + 2 P X^2 + R^2 = 0,
/// P = a1^3a2^2 + a1^2a2^3 + (a1^2a2 + a1a2^2) b c1 + (a1^2 + a2^2) c1^2 + 2 a1^2a2^2 c,
/// R = (a1 + a2) c1^2 - a1^2 a2^2 + a1 a2 b c1.
struct C2Quartic {
  double lead = 0.0;  // (a1 - a2)^2
  double p = 0.0;     // P; the X^2 coefficient is 2P
  double r = 0.0;     // R; the constant term is R^2

  static C2Quartic from(const AlphaTriple& al, double a1, double a2) {
    const double b = double(al.b()), c = double(al.c()), c1 = double(al.c1());
    C2Quartic q;
    q.lead = (a1 - a2) * (a1 - a2);
    q.p = a1 * a1 * a1 * a2 * a2 + a1 * a1 * a2 * a2 * a2 + (a1 * a1 * a2 + a1 * a2 * a2) * b * c1 +
          (a1 * a1 + a2 * a2) * c1 * c1 + 2.0 * a1 * a1 * a2 * a2 * c;
    q.r = (a1 + a2) * c1 * c1 - a1 * a1 * a2 * a2 + a1 * a2 * b * c1;
    return q;
  }

  double eval(double x) const {
    const double x2 = x * x;
    return lead * x2 * x2 + 2.0 * p * x2 + r * r;
  }

  /// |value| divided by the sum of the magnitudes of the three terms.
  double relative_residual(double x) const {
    const double x2 = x * x;
    const double scale = lead * x2 * x2 + 2.0 * std::abs(p) * x2 + r * r;
    return scale == 0.0 ? 0.0 : std::abs(eval(x)) / scale;
  }

  std::array<double, 5> coefficients() const { return {r * r, 0.0, 2.0 * p, 0.0, lead}; }
};

struct FeasibilityReport {
  bool feasible = false;
  double p = 0.0;             // must be <= 0
  double discriminant = 0.0;  // P^2 - (a1-a2)^2 R^2, must be >= 0
};

/// Real solvability of the biquadratic for c2: P <= 0 and P^2 - (a1-a2)^2 R^2 >= 0.
inline FeasibilityReport feasibility_check(const AlphaTriple& al, double a1, double a2) {
  if (!(a1 > a2 && a2 > 0.0)) {
    throw std::invalid_argument("feasibility_check requires a1 > a2 > 0");
  }
  const auto q = C2Quartic::from(al, a1, a2);
  FeasibilityReport rep;
  rep.p = q.p;
  rep.discriminant = q.p * q.p - q.lead * q.r * q.r;
  rep.feasible = rep.p <= 0.0 && rep.discriminant >= 0.0;
  return rep;
}

/// The moduli box [-alpha2 alpha3, -alpha1 alpha3] for (a2, a1), alpha weakly normalized.
inline Interval lemma3_box(const AlphaTriple& al) {
  if (!al.weakly_normalized()) {
    throw std::invalid_argument("lemma3_box requires alpha1 >= alpha2 >= 0 >= alpha3, got " + al.str());
  }
  return Interval(-double(al[1]) * al[2], -double(al[0]) * al[2]);
}

/// Names the violated box bound, or nullopt if -alpha2 alpha3 <= a2 < a1 <= -alpha1 alpha3.
inline std::optional<std::string> lemma3_violation(const AlphaTriple& al, double a1, double a2) {
  if (!al.weakly_normalized()) return "alpha must satisfy alpha1 >= alpha2 >= 0 >= alpha3";
  if (!al.normalized()) return "alpha3 = 0 or alpha1 = alpha2 leaves no moduli with a1 > a2";
  const Interval box = lemma3_box(al);
  std::ostringstream os;
  if (!(a1 > a2)) {
    os << "a2 < a1 violated (a1 = " << a1 << ", a2 = " << a2 << ")";
    return os.str();
  }
  if (!(a2 > 0.0)) {
    os << "a2 > 0 violated (a2 = " << a2 << ")";
    return os.str();
  }
  if (!(a2 >= box.lo)) {
    os << "a2 >= -alpha2*alpha3 = " << box.lo << " violated (a2 = " << a2 << ")";
    return os.str();
  }
  if (!(a1 <= box.hi)) {
    os << "a1 <= -alpha1*alpha3 = " << box.hi << " violated (a1 = " << a1 << ")";
    return os.str();
  }
  return std::nullopt;
}

struct C2Roots {
  double plus = 0.0;   // (a1 sqrt(Q(a2)) + a2 sqrt(Q(a1))) / (a1 - a2)
  double minus = 0.0;  // |a1 sqrt(Q(a2)) - a2 sqrt(Q(a1))| / (a1 - a2)

  double select(RootBranch b) const { return b == RootBranch::Plus ? plus : minus; }
};

/// Both roots from the factorization of the biquadratic through Q. Throws
/// InfeasibleParameters when Q(a1) or Q(a2) is negative.
inline C2Roots solve_c2(const AlphaTriple& al, double a1, double a2) {
  if (!(a1 > a2 && a2 > 0.0)) throw InfeasibleParameters("solve_c2 requires a1 > a2 > 0");
  const double q1 = q_cubic(a1, al);
  const double q2 = q_cubic(a2, al);
  if (q1 < 0.0 || q2 < 0.0) {
    std::ostringstream os;
    os << "Q(a1) = " << q1 << ", Q(a2) = " << q2 << ": biquadratic has no real root";
    throw InfeasibleParameters(os.str());
  }
  const double s1 = std::sqrt(q1), s2 = std::sqrt(q2);
  // The biquadratic only sees c2^2; the difference can be negative, its magnitude is the root.
  return {(a1 * s2 + a2 * s1) / (a1 - a2), std::abs(a1 * s2 - a2 * s1) / (a1 - a2)};
}

/// Positive real roots of the expanded biquadratic by the companion-matrix solver.
inline std::vector<double> c2_roots_generic(const AlphaTriple& al, double a1, double a2) {
  const auto q = C2Quartic::from(al, a1, a2);
  const auto coeffs = q.coefficients();
  std::vector<double> out;
  for (double r : real_polynomial_roots(coeffs)) {
    if (r > 0.0) {
      // One Newton step on the exact polynomial polishes eigenvalue roundoff.
      const double d = 4.0 * q.lead * r * r * r + 4.0 * q.p * r;
      if (d != 0.0) r -= q.eval(r) / d;
      out.push_back(r);
    }
  }
  return out;
}

struct ModuliPoint {
  double a1 = 0.0;
  double a2 = 0.0;
  RootBranch branch = RootBranch::Minus;
};

/// Constants derived from (alpha, a1, a2, branch).
struct DerivedConstants {
  double c2 = 0.0;     // chosen positive root
  double a3 = 0.0;     // (c1^2 + c2^2) / (a1 a2)
  double a = 0.0;      // x-slope of the Lagrangian angle
  double b = 0.0;      // y-slope (= -alpha1 - alpha2 - alpha3)
  double m = 0.0;      // elliptic parameter (a1 - a2)/(a1 + a3)
  double k = 0.0;      // elliptic modulus sqrt(m)
  double omega = 0.0;  // sqrt(a1 + a3)
  double K = 0.0;      // complete integral at modulus k
  double T = 0.0;      // period of 2e^v: 2K / omega
};

struct LiftJet {
  std::array<std::complex<double>, 3> r;
  std::array<std::complex<double>, 3> rx;
  std::array<std::complex<double>, 3> ry;
};

class MironovTorus {
 public:
  /// alpha must satisfy alpha1 > alpha2 >= 0 > alpha3 and (a1, a2) must lie in the
  /// moduli box; throws InfeasibleParameters otherwise and DegenerateParameters
  /// when the selected root c2 vanishes.
  MironovTorus(const AlphaTriple& alpha, const ModuliPoint& point)
      : alpha_(alpha), point_(point), jacobi_(EllipticModulus(0.0)) {
    if (auto why = lemma3_violation(alpha, point.a1, point.a2)) {
      throw InfeasibleParameters("infeasible parameters " + alpha.str() + ": " + *why);
    }
    const double a1 = point.a1, a2 = point.a2;
    const auto roots = solve_c2(alpha, a1, a2);
    const double c2 = roots.select(point.branch);
    const double scale = std::max({1.0, std::abs(roots.plus)});
    if (!(c2 > 1e-12 * scale)) {
      std::ostringstream os;
      os << "c2 = " << c2 << " on the " << to_string(point.branch)
         << " branch; the slope a = (...)/c2 is undefined";
      throw DegenerateParameters(os.str());
    }
    const double c1 = double(alpha.c1());
    auto& d = consts_;
    d.c2 = c2;
    d.a3 = (c1 * c1 + c2 * c2) / (a1 * a2);
    d.b = double(alpha.b());
    d.a = (d.b * c1 + a1 * d.a3 + a2 * d.a3 - a1 * a2) / c2;
    d.m = (a1 - a2) / (a1 + d.a3);
    d.omega = std::sqrt(a1 + d.a3);
    const auto mod = EllipticModulus::from_parameter(d.m);
    d.k = mod.k();
    jacobi_ = JacobiElliptic(mod);
    d.K = jacobi_.quarter_period();
    d.T = 2.0 * d.K / d.omega;

    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, l = (i + 2) % 3;
      pair_product_[i] = double(alpha[j]) * alpha[l];
      denominator_[i] = double(alpha[i] - alpha[j]) * double(alpha[i] - alpha[l]);
    }
    // For alpha_i != 0, (2 alpha_i e^v - c1)/alpha_i = w + alpha_{i+1} alpha_{i+2}, which
    // vanishes inside [a2, a1] only at the box ends, where F_i = 0 as well.
    for (int i = 0; i < 3; ++i) {
      const double w_star = -pair_product_[i];
      const double tol = 1e-8 * std::max(1.0, std::abs(w_star));
      singular_[i] = w_star >= a2 - tol && w_star <= a1 + tol;
    }
    if (!any_singular()) {
      for (int i = 0; i < 3; ++i) period_phase_[i] = phase_integral(0.0, d.T, i);
    }
  }

  const AlphaTriple& alpha() const { return alpha_; }
  const ModuliPoint& point() const { return point_; }
  const DerivedConstants& constants() const { return consts_; }
  bool any_singular() const { return singular_[0] || singular_[1] || singular_[2]; }

  /// 2e^{v(x)}; lies in [a2, a1] and has period T.
  double conformal_factor(double x) const {
    const double sn = jacobi_.sn(x * consts_.omega);
    return point_.a1 - (point_.a1 - point_.a2) * sn * sn;
  }

  double conformal_factor_derivative(double x) const {
    const auto j = jacobi_.sncndn(x * consts_.omega);
    return -2.0 * (point_.a1 - point_.a2) * j.sn * j.cn * j.dn * consts_.omega;
  }

  /// F_i^2 = (2e^v + alpha_{i+1} alpha_{i+2}) / ((alpha_i - alpha_{i+1})(alpha_i - alpha_{i+2})).
  std::array<double, 3> f_squares(double x) const {
    const double w = conformal_factor(x);
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
      double v = (w + pair_product_[i]) / denominator_[i];
      if (v < 0.0) {
        if (v < -1e-12) {
          std::ostringstream os;
          os << "negative radicand " << v << " for F_" << i + 1 << " at x = " << x;
          throw InfeasibleParameters(os.str());
        }
        v = 0.0;
      }
      out[i] = v;
    }
    return out;
  }

  std::array<double, 3> f_coefficients(double x) const {
    auto sq = f_squares(x);
    for (auto& v : sq) v = std::sqrt(v);
    return sq;
  }

  /// F_i' = (2e^v)' / (2 D_i F_i); taken as 0 where F_i vanishes.
  std::array<double, 3> f_derivatives(double x) const {
    const auto f = f_coefficients(x);
    const double dw = conformal_factor_derivative(x);
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = f[i] > 0.0 ? dw / (2.0 * denominator_[i] * f[i]) : 0.0;
    return out;
  }

  /// G_i'(x) = alpha_i (c2 - a e^v) / (2 alpha_i e^v - c1), evaluated with alpha_i
  /// cancelled: (c2 - a e^v) / (2e^v + alpha_{i+1} alpha_{i+2}). The cancelled form
  /// is the one that stays horizontal when some alpha_i = 0 (then c1 = 0 and the
  /// uncancelled quotient is 0/0); see tests/test_mironov.cpp.
  double phase_rate(double x, int i) const {
    check_singular(i);
    const double w = conformal_factor(x);
    return (consts_.c2 - 0.5 * consts_.a * w) / (w + pair_product_[i]);
  }

  std::array<double, 3> phase_rates(double x) const {
    return {phase_rate(x, 0), phase_rate(x, 1), phase_rate(x, 2)};
  }

  /// G_i(x) = int_0^x G_i'; uses G_i(x + T) = G_i(x) + G_i(T).
  double g_phase(double x, int i) const {
    check_singular(i);
    const double n = std::floor(x / consts_.T);
    const double r = x - n * consts_.T;
    return n * period_phase_[i] + phase_integral(0.0, r, i);
  }

  std::array<double, 3> g_phases(double x) const {
    return {g_phase(x, 0), g_phase(x, 1), g_phase(x, 2)};
  }

  /// Unit vector in C^3 whose Hopf image is psi(x, y).
  std::array<std::complex<double>, 3> lift(double x, double y) const {
    const auto f = f_coefficients(x);
    const auto g = g_phases(x);
    std::array<std::complex<double>, 3> r;
    for (int i = 0; i < 3; ++i) r[i] = std::polar(f[i], g[i] + alpha_[i] * y);
    return r;
  }

  /// The lift and its analytic first derivatives.
  LiftJet jet(double x, double y) const { return jet_with_phases(x, y, g_phases(x)); }

  LiftJet jet_with_phases(double x, double y, const std::array<double, 3>& g) const {
    const auto f = f_coefficients(x);
    const auto df = f_derivatives(x);
    const auto dg = phase_rates(x);
    LiftJet j;
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
      const auto e = std::polar(1.0, g[i] + alpha_[i] * y);
      j.r[i] = f[i] * e;
      j.rx[i] = (df[i] + I * f[i] * dg[i]) * e;
      j.ry[i] = I * double(alpha_[i]) * f[i] * e;
    }
    return j;
  }

 private:
  void check_singular(int i) const {
    if (singular_[i]) {
      std::ostringstream os;
      os << "phase integrand for G_" << i + 1 << " is singular: 2e^v + alpha_" << (i + 1) % 3 + 1
         << " alpha_" << (i + 2) % 3 + 1 << " vanishes on [a2, a1] for alpha = "
         << alpha_.str() << ", a1 = " << point_.a1 << ", a2 = " << point_.a2;
      throw SingularIntegrand(os.str());
    }
  }

  double phase_integral(double from, double to, int i) const {
    if (from == to) return 0.0;
    return integrate([this, i](double z) { return phase_rate(z, i); }, from, to, 1e-10).value;
  }

  AlphaTriple alpha_;
  ModuliPoint point_;
  DerivedConstants consts_;
  JacobiElliptic jacobi_;
  std::array<double, 3> pair_product_{};
  std::array<double, 3> denominator_{};
  std::array<bool, 3> singular_{};
  std::array<double, 3> period_phase_{};
};

}  // namespace lagtori
