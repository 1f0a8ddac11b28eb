#pragma once

// Numerical checks that the lift is horizontal, conformal and Lagrangian with a
// linear Lagrangian angle, the mean-curvature identity |H|^2 = (beta_x^2 + beta_y^2)/(2e^v),
// and sample export in an affine chart of CP^2.
//
// beta is arg det R with rows (r, r_x/|r_x|, r_y/|r_y|). Each column of R picks up
// e^{i alpha_j y} from the y-dependence, so beta_y = alpha1 + alpha2 + alpha3 = -b;
// likewise beta_x = -a. The slopes of this beta are therefore (-a, -b).

#include "functionals.hpp"
#include "mironov.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagtori {

using Vec3c = std::array<std::complex<double>, 3>;

inline std::complex<double> hermitian(const Vec3c& u, const Vec3c& w) {
  std::complex<double> s(0.0, 0.0);
  for (int i = 0; i < 3; ++i) s += u[i] * std::conj(w[i]);
  return s;
}

inline double norm2(const Vec3c& u) { return hermitian(u, u).real(); }

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

/// A parametrized surface in CP^2 seen through a unit lift with first derivatives.
struct SurfaceView {
  std::string name;
  std::function<LiftJet(double, double)> jet;
  std::function<double(double, double)> conformal_factor;  // 2e^v
  double x_extent = 1.0;
  double y_extent = 2.0 * std::numbers::pi;
};

inline SurfaceView view_of(const MironovTorus& t) {
  SurfaceView s;
  s.name = "mironov " + t.alpha().str();
  s.jet = [&t](double x, double y) { return t.jet(x, y); };
  s.conformal_factor = [&t](double x, double) { return t.conformal_factor(x); };
  s.x_extent = t.constants().T;
  return s;
}

/// Homogeneous torus (r1 e^{i theta_1}, r2 e^{i theta_2}, r3 e^{i theta_3}) with
/// theta = x P + y Q, where P, Q are orthonormal for sum r_i^2 u_i v_i and orthogonal
/// to (1, 1, 1). The lift is horizontal, Lagrangian and 2e^v = 1.
class HomogeneousTorus {
 public:
  explicit HomogeneousTorus(const HomogeneousParams& p) : r_{p.r1, p.r2, p.r3} {
    const std::array<double, 3> w{r_[0] * r_[0], r_[1] * r_[1], r_[2] * r_[2]};
    auto dot = [&](const std::array<double, 3>& u, const std::array<double, 3>& v) {
      return w[0] * u[0] * v[0] + w[1] * u[1] * v[1] + w[2] * u[2] * v[2];
    };
    const std::array<double, 3> one{1.0, 1.0, 1.0};
    std::array<double, 3> e1{1.0, 0.0, 0.0}, e2{0.0, 1.0, 0.0};
    auto remove = [&](std::array<double, 3>& u, const std::array<double, 3>& v) {
      const double c = dot(u, v) / dot(v, v);
      for (int i = 0; i < 3; ++i) u[i] -= c * v[i];
    };
    remove(e1, one);
    remove(e2, one);
    remove(e2, e1);
    const double n1 = std::sqrt(dot(e1, e1)), n2 = std::sqrt(dot(e2, e2));
    for (int i = 0; i < 3; ++i) {
      p_[i] = e1[i] / n1;
      q_[i] = e2[i] / n2;
    }
  }

  LiftJet jet(double x, double y) const {
    LiftJet j;
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
      const auto z = std::polar(r_[i], x * p_[i] + y * q_[i]);
      j.r[i] = z;
      j.rx[i] = I * p_[i] * z;
      j.ry[i] = I * q_[i] * z;
    }
    return j;
  }

  SurfaceView view() const {
    SurfaceView s;
    s.name = "homogeneous";
    s.jet = [this](double x, double y) { return jet(x, y); };
    s.conformal_factor = [](double, double) { return 1.0; };
    s.x_extent = 2.0 * std::numbers::pi;
    return s;
  }

 private:
  std::array<double, 3> r_{};
  std::array<double, 3> p_{};
  std::array<double, 3> q_{};
};

struct LagrangianAngle {
  double beta = 0.0;        // in (-pi, pi]
  double unitarity = 0.0;   // max |R R* - I|
};

inline LagrangianAngle lagrangian_angle_of(const LiftJet& j) {
  const double nx = std::sqrt(norm2(j.rx)), ny = std::sqrt(norm2(j.ry));
  if (!(nx > 1e-12) || !(ny > 1e-12)) throw std::domain_error("degenerate derivative: r_x or r_y vanishes");
  Eigen::Matrix3cd R;
  for (int i = 0; i < 3; ++i) {
    R(0, i) = j.r[i];
    R(1, i) = j.rx[i] / nx;
    R(2, i) = j.ry[i] / ny;
  }
  LagrangianAngle out;
  out.beta = std::arg(R.determinant());
  out.unitarity = (R * R.adjoint() - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
  return out;
}

inline LagrangianAngle lagrangian_angle(const MironovTorus& t, double x, double y) {
  return lagrangian_angle_of(t.jet(x, y));
}

/// (beta_x, beta_y) by Richardson-extrapolated central differences.
inline std::array<double, 2> lagrangian_slopes(const MironovTorus& t, double x, double y,
                                               double h = 1e-3) {
  const auto g = t.g_phases(x);
  auto beta_y = [&](double yy) { return lagrangian_angle_of(t.jet_with_phases(x, yy, g)).beta; };
  auto beta_x = [&](double xx) { return lagrangian_angle_of(t.jet(xx, y)).beta; };
  auto diff = [](auto&& f, double c, double step) {
    auto d = [&](double s) { return wrap_angle(f(c + s) - f(c - s)) / (2.0 * s); };
    return (4.0 * d(step / 2.0) - d(step)) / 3.0;
  };
  return {diff(beta_x, x, h), diff(beta_y, y, h)};
}

struct PropertyReport {
  double norm = 0.0;            // | |r| - 1 |
  double horizontal_x = 0.0;    // |<r_x, r>|
  double horizontal_y = 0.0;    // |<r_y, r>|
  double conformal_x = 0.0;     // | |r_x|^2 - 2e^v |
  double conformal_y = 0.0;     // | |r_y|^2 - 2e^v |
  double orthogonal = 0.0;      // |Re <r_x, r_y>|
  double lagrangian = 0.0;      // |Im <r_x, r_y>|
  double unitarity = 0.0;       // max |R R* - I|
  double beta_linearity = 0.0;  // max |beta - beta(0,0) + a x + b y| (mod 2 pi)
  int nx = 0;
  int ny = 0;

  double max_residual() const {
    return std::max({norm, horizontal_x, horizontal_y, conformal_x, conformal_y, orthogonal, lagrangian,
                     unitarity, beta_linearity});
  }
};

inline std::ostream& operator<<(std::ostream& os, const PropertyReport& r) {
  return os << "norm " << r.norm << ", horizontal " << r.horizontal_x << '/' << r.horizontal_y
            << ", conformal " << r.conformal_x << '/' << r.conformal_y << ", orthogonal " << r.orthogonal
            << ", lagrangian " << r.lagrangian << ", unitarity " << r.unitarity << ", beta linearity "
            << r.beta_linearity << " on " << r.nx << 'x' << r.ny;
}

/// Residuals on a cell-centred nx x ny grid over one period [0, T) x [0, 2 pi).
inline PropertyReport geometry_residuals(const MironovTorus& t, int nx = 64, int ny = 64) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid must be at least 1 x 1");
  const auto& d = t.constants();
  PropertyReport rep;
  rep.nx = nx;
  rep.ny = ny;
  bool have_ref = false;
  double ref = 0.0;
  for (int ix = 0; ix < nx; ++ix) {
    const double x = (ix + 0.5) * d.T / nx;
    const auto g = t.g_phases(x);
    const double w = t.conformal_factor(x);
    for (int iy = 0; iy < ny; ++iy) {
      const double y = (iy + 0.5) * 2.0 * std::numbers::pi / ny;
      const auto j = t.jet_with_phases(x, y, g);
      rep.norm = std::max(rep.norm, std::abs(std::sqrt(norm2(j.r)) - 1.0));
      rep.horizontal_x = std::max(rep.horizontal_x, std::abs(hermitian(j.rx, j.r)));
      rep.horizontal_y = std::max(rep.horizontal_y, std::abs(hermitian(j.ry, j.r)));
      rep.conformal_x = std::max(rep.conformal_x, std::abs(norm2(j.rx) - w));
      rep.conformal_y = std::max(rep.conformal_y, std::abs(norm2(j.ry) - w));
      const auto xy = hermitian(j.rx, j.ry);
      rep.orthogonal = std::max(rep.orthogonal, std::abs(xy.real()));
      rep.lagrangian = std::max(rep.lagrangian, std::abs(xy.imag()));
      const auto la = lagrangian_angle_of(j);
      rep.unitarity = std::max(rep.unitarity, la.unitarity);
      const double shifted = la.beta + d.a * x + d.b * y;
      if (!have_ref) {
        ref = shifted;
        have_ref = true;
      }
      rep.beta_linearity = std::max(rep.beta_linearity, std::abs(wrap_angle(shifted - ref)));
    }
  }
  return rep;
}

/// max | |H|^2 - e^{-v}(a^2 + b^2)/2 | at random points, with |H|^2 taken as the
/// metric norm (beta_x^2 + beta_y^2)/(2e^v) of the finite-difference gradient.
inline double mean_curvature_check(const MironovTorus& t, int samples = 100, unsigned seed = 20240601) {
  const auto& d = t.constants();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, d.T), uy(0.0, 2.0 * std::numbers::pi);
  const double s = d.a * d.a + d.b * d.b;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ux(rng), y = uy(rng);
    const auto sl = lagrangian_slopes(t, x, y);
    const double w = t.conformal_factor(x);
    const double h2 = (sl[0] * sl[0] + sl[1] * sl[1]) / w;
    const double closed = 0.5 * (2.0 / w) * s;
    worst = std::max(worst, std::abs(h2 - closed));
  }
  return worst;
}

// ---- export -----------------------------------------------------------------

struct SampleRow {
  double x = 0.0, y = 0.0;
  std::complex<double> z1, z2;  // psi_j / psi_chart for the two other indices
  double conformal_factor = 0.0;
  double beta = 0.0;
  bool flagged = false;  // chart component below 1e-9
};

/// Index of the largest |psi_i| at the grid centre.
inline int default_chart(const SurfaceView& s) {
  const auto j = s.jet(0.5 * s.x_extent, 0.5 * s.y_extent);
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(j.r[i]) > std::abs(j.r[best])) best = i;
  }
  return best;
}

inline std::vector<SampleRow> export_samples(const SurfaceView& s, int nx, int ny, int chart = -1) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid must be at least 1 x 1");
  if (chart < 0) chart = default_chart(s);
  if (chart > 2) throw std::invalid_argument("chart index must be 0, 1 or 2");
  const int o1 = chart == 0 ? 1 : 0;
  const int o2 = chart == 2 ? 1 : 2;
  std::vector<SampleRow> rows;
  rows.reserve(static_cast<std::size_t>(nx) * ny);
  for (int ix = 0; ix < nx; ++ix) {
    const double x = s.x_extent * ix / nx;
    for (int iy = 0; iy < ny; ++iy) {
      const double y = s.y_extent * iy / ny;
      const auto j = s.jet(x, y);
      SampleRow row;
      row.x = x;
      row.y = y;
      row.conformal_factor = s.conformal_factor(x, y);
      const auto c = j.r[chart];
      if (std::abs(c) < 1e-9) {
        row.flagged = true;
      } else {
        row.z1 = j.r[o1] / c;
        row.z2 = j.r[o2] / c;
      }
      try {
        row.beta = lagrangian_angle_of(j).beta;
      } catch (const std::domain_error&) {
        row.flagged = true;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

inline const char* kSampleCsvHeader = "x,y,z1_re,z1_im,z2_re,z2_im,conformal_factor,beta,flagged";

inline void write_samples_csv(std::ostream& os, const std::vector<SampleRow>& rows, int precision = 12) {
  os.precision(precision);
  os << kSampleCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.x << ',' << r.y << ',' << r.z1.real() << ',' << r.z1.imag() << ',' << r.z2.real() << ','
       << r.z2.imag() << ',' << r.conformal_factor << ',' << r.beta << ',' << (r.flagged ? 1 : 0) << '\n';
  }
}

/// Parses rows written by write_samples_csv.
inline std::vector<SampleRow> read_samples_csv(std::istream& is) {
  std::string line;
  std::getline(is, line);
  if (line != kSampleCsvHeader) throw std::runtime_error("unexpected sample CSV header: " + line);
  std::vector<SampleRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::array<double, 9> v{};
    std::string cell;
    for (auto& x : v) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("short sample CSV row: " + line);
      x = std::stod(cell);
    }
    SampleRow r;
    r.x = v[0];
    r.y = v[1];
    r.z1 = {v[2], v[3]};
    r.z2 = {v[4], v[5]};
    r.conformal_factor = v[6];
    r.beta = v[7];
    r.flagged = v[8] != 0.0;
    rows.push_back(r);
  }
  return rows;
}

/// Vertex cloud: the first three real coordinates (Re z1, Im z1, Re z2) of each unflagged row.
inline void write_samples_obj(std::ostream& os, const std::vector<SampleRow>& rows, int precision = 12) {
  os.precision(precision);
  for (const auto& r : rows) {
    if (r.flagged) continue;
    os << "v " << r.z1.real() << ' ' << r.z1.imag() << ' ' << r.z2.real() << '\n';
  }
}

}  // namespace lagtori
