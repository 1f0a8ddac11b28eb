#pragma once

// The surfaces built over the curve {u1^2 + u2^2 + u3^2 = 1, m u1^2 + n u2^2 + k u3^2 = 0}:
// the image is a torus when the involution
//   (u1, u2, u3) -> ((-1)^m u1, (-1)^n u2, (-1)^k u3)
// preserves the orientation of the cone m u1^2 + n u2^2 + k u3^2 = 0, and a Klein
// bottle otherwise.

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lagtori {

struct MnkParams {
  int m = 1, n = 1, k = -1;

  MnkParams() = default;
  MnkParams(int m_, int n_, int k_) : m(m_), n(n_), k(k_) {
    if (!(m >= n && n > 0 && k < 0)) {
      std::ostringstream os;
      os << "(m, n, k) = (" << m_ << ", " << n_ << ", " << k_ << ") must satisfy m >= n > 0 > k";
      throw std::invalid_argument(os.str());
    }
  }
};

using Vec3 = std::array<double, 3>;

/// u1 = sqrt(-k/(m-k)) cos t, u2 = sqrt(-k/(n-k)) sin t, u3 = +sqrt(1 - u1^2 - u2^2).
inline Vec3 curve_point(const MnkParams& p, double t) {
  const double s1 = std::sqrt(-double(p.k) / double(p.m - p.k));
  const double s2 = std::sqrt(-double(p.k) / double(p.n - p.k));
  const double u1 = s1 * std::cos(t), u2 = s2 * std::sin(t);
  return {u1, u2, std::sqrt(std::max(0.0, 1.0 - u1 * u1 - u2 * u2))};
}

inline Vec3 curve_tangent(const MnkParams& p, double t) {
  const double s1 = std::sqrt(-double(p.k) / double(p.m - p.k));
  const double s2 = std::sqrt(-double(p.k) / double(p.n - p.k));
  const double u1 = s1 * std::cos(t), u2 = s2 * std::sin(t);
  const double du1 = -s1 * std::sin(t), du2 = s2 * std::cos(t);
  const double u3 = std::sqrt(std::max(0.0, 1.0 - u1 * u1 - u2 * u2));
  return {du1, du2, -(u1 * du1 + u2 * du2) / u3};
}

inline constexpr const char* kMnkOrientationConvention =
    "cone oriented by the normal (m u1, n u2, k u3); tangent frame (curve tangent, radial direction)";

namespace detail {
inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}
}  // namespace detail

/// Orientation sign change of the involution at the curve point with angle t:
/// +1 preserved, -1 reversed, 0 if the frame is degenerate there.
inline int involution_orientation_at(const MnkParams& p, double t) {
  const Vec3 eps{p.m % 2 == 0 ? 1.0 : -1.0, p.n % 2 == 0 ? 1.0 : -1.0, p.k % 2 == 0 ? 1.0 : -1.0};
  auto normal = [&](const Vec3& u) { return Vec3{p.m * u[0], p.n * u[1], p.k * u[2]}; };
  auto apply = [&](const Vec3& u) { return Vec3{eps[0] * u[0], eps[1] * u[1], eps[2] * u[2]}; };
  const Vec3 u = curve_point(p, t);
  const Vec3 e1 = curve_tangent(p, t);
  const Vec3 e2 = u;
  const double before = detail::det3(e1, e2, normal(u));
  const double after = detail::det3(apply(e1), apply(e2), normal(apply(u)));
  const double scale = 1e-9 * std::max({1.0, double(p.m), double(-p.k)});
  if (std::abs(before) < scale || std::abs(after) < scale) return 0;
  return (before > 0.0) == (after > 0.0) ? 1 : -1;
}

/// True when the involution preserves orientation. Tries sample angles until the
/// frame is non-degenerate.
inline bool is_torus(const MnkParams& p) {
  for (int i = 0; i < 16; ++i) {
    const double t = 0.3 + i * 2.0 * std::numbers::pi / 16.0;
    const int s = involution_orientation_at(p, t);
    if (s != 0) return s > 0;
  }
  throw std::runtime_error("no non-degenerate tangent frame found on the curve");
}

}  // namespace lagtori
