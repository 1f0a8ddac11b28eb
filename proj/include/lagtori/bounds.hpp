#pragma once

// Explicit lower-bound functions used in the energy estimate, their interval
// evaluators, the certified statements B1 > 1 and B2 > 0.9, the scalar
// inequalities of the alpha2 > 0 cases, and a step-by-step audit of the
// inequality chains at a concrete parameter point.

#include "certify.hpp"
#include "functionals.hpp"
#include "interval.hpp"
#include "mironov.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lagtori {

/// Normalized moduli x = a1/p, y = a2/p with p = -alpha1 alpha3, 0 < y < x <= 1.
struct TrianglePoint {
  double x = 0.0;
  double y = 0.0;

  TrianglePoint() = default;
  TrianglePoint(double px, double py) : x(px), y(py) {
    if (!(0.0 < py && py < px && px <= 1.0)) {
      std::ostringstream os;
      os << "point (" << px << ", " << py << ") is outside 0 < y < x <= 1";
      throw std::domain_error(os.str());
    }
  }
};

/// (16 - 7x^2 + 8x - 14xy + 8y - 7y^2) / (16 sqrt((2 - x)(2 - x - y) x)).
inline double b1(const TrianglePoint& t) {
  const double x = t.x, y = t.y;
  return (16.0 - 7.0 * x * x + 8.0 * x - 14.0 * y * x + 8.0 * y - 7.0 * y * y) /
         (16.0 * std::sqrt((2.0 - x) * (2.0 - x - y) * x));
}

namespace detail {
inline void require_off_diagonal(double x, double y) {
  if (x == y) throw std::domain_error("f, g have a pole at x = y");
  if (!(x + y < 2.0)) throw std::domain_error("f, g require x + y < 2");
}
}  // namespace detail

/// x^2 y^2 (2(2-x-y) - (x-y)^2/(2-x-y)) / (x-y)^2.
inline double f_aux(double x, double y) {
  detail::require_off_diagonal(x, y);
  const double u = 2.0 - x - y, d = x - y;
  return x * x * y * y * (2.0 * u - d * d / u) / (d * d);
}

/// x^2 y^2 (2(2-x-y) - (x-y)^2/(2(2-x-y))) / (x-y)^2.
inline double g_aux(double x, double y) {
  detail::require_off_diagonal(x, y);
  const double u = 2.0 - x - y, d = x - y;
  return x * x * y * y * (2.0 * u - d * d / (2.0 * u)) / (d * d);
}

inline double f_aux(const TrianglePoint& t) { return f_aux(t.x, t.y); }
inline double g_aux(const TrianglePoint& t) { return g_aux(t.x, t.y); }

/// (x + y + ((x+y) f/(xy) - xy)^2 / (4g)) / sqrt(x + g/(xy)), composed from f and g.
inline double b2(const TrianglePoint& t) {
  const double x = t.x, y = t.y;
  const double f = f_aux(x, y), g = g_aux(x, y), q = x * y;
  const double h = (x + y) * f / q - q;
  return (x + y + 0.25 * h * h / g) / std::sqrt(x + g / q);
}

/// B2 with the (x - y)^{-2} poles cleared. With s = x+y, d = x-y, u = 2-s, q = xy
/// and N = s(2u^2 - d^2) - u d^2:
///   B2 = (s d^2 + N^2 / (2u(4u^2 - d^2))) / (d sqrt(x d^2 + q(4u^2 - d^2)/(2u))).
inline double b2_expanded(const TrianglePoint& t) {
  const double x = t.x, y = t.y;
  const double s = x + y, d = x - y, u = 2.0 - s, q = x * y;
  const double w = (4.0 - 3.0 * x - y) * (4.0 - x - 3.0 * y);  // 4u^2 - d^2
  const double n = s * (2.0 * u * u - d * d) - u * d * d;
  return (s * d * d + n * n / (2.0 * u * w)) / (d * std::sqrt(x * d * d + q * w / (2.0 * u)));
}

// ---- interval evaluators ---------------------------------------------------

namespace detail {
// Intersection with [lo, +inf); valid when every domain point satisfies v >= lo.
inline Interval at_least(const Interval& v, double lo) {
  return Interval(std::max(v.lo, lo), v.hi);
}
inline Interval at_most(const Interval& v, double hi) { return Interval(v.lo, std::min(v.hi, hi)); }
}  // namespace detail

/// B1 on boxes of the closed triangle 0 <= y <= x <= 1; +inf at the corners.
inline Interval b1_enclosure(const Box2& b) {
  using detail::at_least;
  const Interval& x = b.x;
  const Interval s = at_least(x + b.y, 0.0);
  // 16 + 8s - 7s^2 = 128/7 - 7(s - 4/7)^2
  const Interval num = Interval(128.0) / Interval(7.0) - 7.0 * sqr(s - Interval(4.0) / Interval(7.0));
  const Interval den =
      16.0 * sqrt(at_least((2.0 - x) * at_least(2.0 - s, 0.0) * at_least(x, 0.0), 0.0));
  return div_nonneg(num, den);
}

/// f on boxes with x - y bounded away from zero.
inline Interval f_enclosure(const Box2& b) {
  const Interval& x = b.x;
  const Interval& y = b.y;
  const Interval u = 2.0 - x - y, d = x - y, d2 = sqr(d);
  return sqr(x) * sqr(y) * (2.0 * u - d2 / u) / d2;
}

inline Interval g_enclosure(const Box2& b) {
  const Interval& x = b.x;
  const Interval& y = b.y;
  const Interval u = 2.0 - x - y, d = x - y, d2 = sqr(d);
  return sqr(x) * sqr(y) * (2.0 * u - d2 / (2.0 * u)) / d2;
}

/// B2 composed from the f and g enclosures; loose, used for cross-checks.
inline Interval b2_composed_enclosure(const Box2& b) {
  const Interval f = f_enclosure(b), g = g_enclosure(b), q = b.x * b.y;
  const Interval h = (b.x + b.y) * f / q - q;
  return (b.x + b.y + 0.25 * sqr(h) / g) / sqrt(b.x + g / q);
}

/// B2 in the cleared form on boxes of {0 <= y <= x <= 1, 2 - x - y > 0}; the
/// diagonal x = y gives +inf.
inline Interval b2_enclosure(const Box2& b) {
  using detail::at_least;
  const Interval& x = b.x;
  const Interval& y = b.y;
  const Interval s = x + y;
  const Interval d = at_least(x - y, 0.0);
  const Interval u = at_least(2.0 - s, d.lo);  // u >= d on the triangle
  const Interval q = at_least(x * y, 0.0);
  const Interval w = (4.0 - 3.0 * x - y) * (4.0 - x - 3.0 * y);
  const Interval d2 = sqr(d);
  const Interval n = s * (2.0 * sqr(u) - d2) - u * d2;
  const Interval num = s * d2 + sqr(n) / (2.0 * u * w);
  const Interval den = d * sqrt(at_least(x * d2 + q * w / (2.0 * u), 0.0));
  return div_nonneg(num, den);
}

/// B2 in the chart y = t x, box = (x, t) with 0 <= x, 0 <= t <= 1. Covers the
/// corner at the origin, where B2 depends on the ratio y/x only:
///   B2 = (x(1+t)(1-t)^2 + M^2/(2u(4u^2 - d^2))) / ((1-t) sqrt(x(1-t)^2 + t(4u^2-d^2)/(2u))),
/// d = x(1-t), u = 2 - x(1+t), M = (1+t)(2u^2 - d^2) - u x (1-t)^2.
inline Interval b2_origin_chart_enclosure(const Box2& b) {
  using detail::at_least;
  const Interval x = at_least(b.x, 0.0);
  const Interval t = detail::at_most(at_least(b.y, 0.0), 1.0);
  const Interval omt = 1.0 - t, opt = 1.0 + t;
  const Interval d = x * omt;
  const Interval u = 2.0 - x * opt;
  const Interval w = (4.0 - x * (3.0 + t)) * (4.0 - x * (1.0 + 3.0 * t));
  const Interval omt2 = sqr(omt);
  const Interval m = opt * (2.0 * sqr(u) - sqr(d)) - u * x * omt2;
  const Interval num = x * opt * omt2 + sqr(m) / (2.0 * u * w);
  const Interval den = omt * sqrt(at_least(x * omt2 + t * w / (2.0 * u), 0.0));
  return div_nonneg(num, den);
}

/// B2 in the chart u = 2 - x - y, x - y = r u, box = (u, r) with 0 <= u, 0 <= r <= 1.
/// Covers the corner (1, 1):
///   B2 = (s r^2 u + (s(2 - r^2) - u r^2)^2 / (2(4 - r^2))) / (r sqrt(u) sqrt(x r^2 u + q(4 - r^2)/2)).
inline Interval b2_corner_chart_enclosure(const Box2& b) {
  using detail::at_least;
  const Interval u = at_least(b.x, 0.0);
  const Interval r = detail::at_most(at_least(b.y, 0.0), 1.0);
  const Interval s = 2.0 - u;
  const Interval x = 1.0 - u * (1.0 - r) / 2.0;
  const Interval y = 1.0 - u * (1.0 + r) / 2.0;
  const Interval q = at_least(x * y, 0.0);
  const Interval r2 = sqr(r);
  const Interval num = s * r2 * u + sqr(s * (2.0 - r2) - u * r2) / (2.0 * (4.0 - r2));
  const Interval den = r * sqrt(u) * sqrt(at_least(x * r2 * u + q * (4.0 - r2) / 2.0, 0.0));
  return div_nonneg(num, den);
}

// ---- domains -----------------------------------------------------------------

/// Half-plane a x + b y <= c with small exact coefficients.
struct HalfPlane {
  double a = 0.0, b = 0.0, c = 0.0;
};

/// Bounding box intersected with half-planes. Straddling boxes are contracted
/// by propagating each constraint onto x and onto y.
inline Domain polygon_domain(std::string name, Box2 bounds, std::vector<HalfPlane> planes) {
  Domain dom;
  dom.name = std::move(name);
  dom.bounds = bounds;
  dom.classify = [planes, bounds](const Box2& box) {
    if (box.x.hi < bounds.x.lo || box.x.lo > bounds.x.hi || box.y.hi < bounds.y.lo ||
        box.y.lo > bounds.y.hi) {
      return Region::Outside;
    }
    bool inside = bounds.contains(box);
    for (const auto& h : planes) {
      const Interval v = h.a * box.x + h.b * box.y;
      if (v.lo > h.c) return Region::Outside;
      if (!(v.hi <= h.c)) inside = false;
    }
    return inside ? Region::Inside : Region::Straddle;
  };
  dom.contract = [planes, bounds](const Box2& box) -> std::optional<Box2> {
    double xl = std::max(box.x.lo, bounds.x.lo), xh = std::min(box.x.hi, bounds.x.hi);
    double yl = std::max(box.y.lo, bounds.y.lo), yh = std::min(box.y.hi, bounds.y.hi);
    if (xl > xh || yl > yh) return std::nullopt;
    for (const auto& h : planes) {
      if (h.a != 0.0) {
        const Interval lim = (Interval(h.c) - h.b * Interval(yl, yh)) / Interval(h.a);
        if (h.a > 0.0) xh = std::min(xh, lim.hi);
        else xl = std::max(xl, lim.lo);
      }
      if (xl > xh) return std::nullopt;
      if (h.b != 0.0) {
        const Interval lim = (Interval(h.c) - h.a * Interval(xl, xh)) / Interval(h.b);
        if (h.b > 0.0) yh = std::min(yh, lim.hi);
        else yl = std::max(yl, lim.lo);
      }
      if (yl > yh) return std::nullopt;
    }
    return Box2{Interval(xl, xh), Interval(yl, yh)};
  };
  dom.contains_point = [planes, bounds](double px, double py) {
    if (!bounds.contains(px, py)) return false;
    for (const auto& h : planes) {
      if (!(h.a * px + h.b * py <= h.c)) return false;
    }
    return true;
  };
  return dom;
}

/// {y >= eps, x - y >= eps, x <= 1}.
inline Domain inset_triangle(double eps) {
  return polygon_domain("inset triangle y>=eps, x-y>=eps, x<=1",
                        Box2{Interval(2.0 * eps, 1.0), Interval(eps, 1.0 - eps)},
                        {HalfPlane{-1.0, 1.0, -eps}});
}

/// {0 <= y <= x <= 1}.
inline Domain closed_triangle() {
  return polygon_domain("closed triangle 0<=y<=x<=1", Box2{Interval(0.0, 1.0), Interval(0.0, 1.0)},
                        {HalfPlane{-1.0, 1.0, 0.0}});
}

/// Closed triangle minus the corner neighbourhoods x < x0 and 2 - x - y < u0.
inline Domain triangle_middle(double x0, double u0) {
  return polygon_domain("closed triangle with x>=x0, 2-x-y>=u0",
                        Box2{Interval(x0, 1.0), Interval(0.0, 1.0)},
                        {HalfPlane{-1.0, 1.0, 0.0}, HalfPlane{1.0, 1.0, 2.0 - u0}});
}

inline Domain rectangle_domain(std::string name, Box2 bounds) {
  Domain dom;
  dom.name = std::move(name);
  dom.bounds = bounds;
  dom.classify = [bounds](const Box2& box) {
    if (box.x.hi < bounds.x.lo || box.x.lo > bounds.x.hi || box.y.hi < bounds.y.lo ||
        box.y.lo > bounds.y.hi) {
      return Region::Outside;
    }
    return bounds.contains(box) ? Region::Inside : Region::Straddle;
  };
  return dom;
}

// ---- lemma certificates ------------------------------------------------------

struct LemmaCertification {
  Certificate main;                   // on the eps-inset triangle
  std::vector<Certificate> boundary;  // pieces covering the closed triangle
  std::vector<std::string> notes;

  bool proved() const {
    if (main.status != Status::Proved) return false;
    for (const auto& c : boundary) {
      if (c.status != Status::Proved) return false;
    }
    return true;
  }

  /// Worst status over all pieces: Failed before Inconclusive before Proved.
  Status status() const {
    Status s = main.status;
    for (const auto& c : boundary) {
      if (c.status == Status::Failed || (c.status == Status::Inconclusive && s == Status::Proved)) {
        s = c.status;
      }
    }
    return s;
  }
};

inline unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

inline CertifyOptions lemma_options(double threshold, double eps, unsigned workers, int max_depth = 40) {
  CertifyOptions opt;
  opt.max_depth = max_depth;
  opt.threshold = threshold;
  opt.epsilon = eps;
  opt.workers = workers == 0 ? default_workers() : workers;
  return opt;
}

/// B1 > threshold (1 by default) on the inset triangle, and separately on the
/// closed triangle, where B1 -> +inf at (0, 0) and (1, 1).
inline LemmaCertification certify_lemma4(double threshold = 1.0, double eps = 1e-4,
                                         unsigned workers = 0, int max_depth = 40) {
  const auto opt = lemma_options(threshold, eps, workers, max_depth);
  LemmaCertification out;
  out.main = certify_lower_bound("B1", b1_enclosure, inset_triangle(eps), opt);
  out.boundary.push_back(certify_lower_bound("B1", b1_enclosure, closed_triangle(), opt));
  out.boundary.back().notes.push_back(
      "closed triangle: enclosures use [num.lo/den.hi, inf) where the denominator reaches 0, "
      "so the strips y < eps and x - y < eps are covered");
  out.notes.push_back("B1 numerator 16 + 8s - 7s^2 (s = x + y) is positive on [0, 2]; the "
                      "denominator vanishes only at x = 0 and x + y = 2");
  return out;
}

inline constexpr double kOriginChartX = 1.0 / 16.0;
inline constexpr double kCornerChartU = 1.0 / 16.0;

/// B2 > threshold (0.9 by default) on the inset triangle plus three pieces that
/// cover the closed triangle: the chart y = t x near (0, 0), the chart
/// (u, r) = (2 - x - y, (x - y)/u) near (1, 1), and the remainder.
inline LemmaCertification certify_lemma5(double threshold = 0.9, double eps = 1e-4,
                                         unsigned workers = 0, int max_depth = 40) {
  const auto opt = lemma_options(threshold, eps, workers, max_depth);
  LemmaCertification out;
  out.main = certify_lower_bound("B2", b2_enclosure, inset_triangle(eps), opt);
  out.boundary.push_back(certify_lower_bound(
      "B2 origin chart (x, t), y = t x", b2_origin_chart_enclosure,
      rectangle_domain("0<=x<=1/16, 0<=t<=1", Box2{Interval(0.0, kOriginChartX), Interval(0.0, 1.0)}),
      opt));
  out.boundary.push_back(certify_lower_bound(
      "B2 corner chart (u, r), u = 2-x-y, x-y = r u", b2_corner_chart_enclosure,
      rectangle_domain("0<=u<=1/16, 0<=r<=1", Box2{Interval(0.0, kCornerChartU), Interval(0.0, 1.0)}),
      opt));
  out.boundary.push_back(certify_lower_bound("B2", b2_enclosure,
                                             triangle_middle(kOriginChartX, kCornerChartU), opt));
  out.notes.push_back(
      "the alpha2 = 0 plus-root estimate ends with B2, so B2 > 0.9 is what gets certified; "
      "B1 > 0.9 follows from B1 > 1");
  out.notes.push_back("near x = y, B2 grows like 1/(x - y); the cleared form has (x - y) only in "
                      "the denominator, so the diagonal gives [lo, inf) enclosures");
  return out;
}

/// B1 > threshold on the inset triangle alone (no boundary pieces).
inline Certificate certify_b1_at(double threshold, double eps = 1e-4, unsigned workers = 0,
                                 int max_depth = 40) {
  return certify_lower_bound("B1", b1_enclosure, inset_triangle(eps),
                             lemma_options(threshold, eps, workers, max_depth));
}

// ---- scalar bounds -----------------------------------------------------------

/// 4/(3 sqrt 3) as an enclosure.
inline Interval clifford_ratio_threshold() { return Interval(4.0) / (3.0 * sqrt(Interval(3.0))); }

/// (1 + 9x/49) / sqrt(1 + x).
inline double h_high_slope(double x) { return (1.0 + 9.0 * x / 49.0) / std::sqrt(1.0 + x); }
/// sqrt(8/7) (1 + x/4) / sqrt(1 + 3x/2).
inline double h_large_alpha(double x) {
  return std::sqrt(8.0 / 7.0) * (1.0 + x / 4.0) / std::sqrt(1.0 + 1.5 * x);
}
/// (1 + t)^{3/2} / sqrt(1 + 11t/4 + 63t^2/8).
inline double h_small_alpha(double t) {
  return std::pow(1.0 + t, 1.5) / std::sqrt(1.0 + 2.75 * t + 7.875 * t * t);
}

inline Interval h_high_slope_enclosure(const Box2& b) {
  const Interval x = detail::at_least(b.x, 0.0);
  return (1.0 + Interval(9.0) / Interval(49.0) * x) / sqrt(1.0 + x);
}

inline Interval h_large_alpha_enclosure(const Box2& b) {
  const Interval x = detail::at_least(b.x, 0.0);
  return sqrt(Interval(8.0) / Interval(7.0)) * (1.0 + x / 4.0) / sqrt(1.0 + 1.5 * x);
}

inline Interval h_small_alpha_enclosure(const Box2& b) {
  const Interval t = detail::at_least(b.x, 0.0);
  const Interval opt = 1.0 + t;
  return opt * sqrt(opt) / sqrt(1.0 + 2.75 * t + 7.875 * sqr(t));
}

struct TailCheck {
  std::string statement;
  Interval value;  // enclosure of the quantity that must be positive
  bool holds = false;
};

struct ScalarBound {
  std::string name;
  Certificate certificate;  // on the bounded range
  std::vector<TailCheck> tail;

  bool proved() const {
    if (certificate.status != Status::Proved) return false;
    for (const auto& t : tail) {
      if (!t.holds) return false;
    }
    return true;
  }
};

struct ScalarReport {
  std::vector<ScalarBound> bounds;
  bool proved() const {
    for (const auto& b : bounds) {
      if (!b.proved()) return false;
    }
    return true;
  }
};

inline constexpr double kScalarRange = 100.0;

/// Certifies each scalar function above 4/(3 sqrt 3) on [0, 100] by subdivision;
/// beyond 100 the squared, cleared difference D(x) = num^2 - (16/27) den^2 is
/// shown positive at 100 with D' > 0 there and D'' > 0 constant.
inline ScalarReport scalar_bound_checks(double x_max = kScalarRange) {
  ScalarReport rep;
  const double thr = clifford_ratio_threshold().hi;
  CertifyOptions opt;
  opt.threshold = thr;
  opt.epsilon = 0.0;
  opt.max_depth = 40;
  opt.tiles_per_side = 8;
  const Interval c = Interval(16.0) / Interval(27.0);  // (4/(3 sqrt 3))^2
  const Interval X(x_max);

  {
    ScalarBound sb;
    sb.name = "(1+9x/49)/sqrt(1+x)";
    sb.certificate = certify_lower_bound(
        sb.name, h_high_slope_enclosure,
        rectangle_domain("0<=x<=100", Box2{Interval(0.0, x_max), Interval(0.0)}), opt);
    const Interval k = Interval(9.0) / Interval(49.0);
    const Interval d = sqr(1.0 + k * X) - c * (1.0 + X);
    const Interval d1 = 2.0 * k * (1.0 + k * X) - c;
    const Interval d2 = 2.0 * sqr(k);
    sb.tail = {{"D(100) > 0, D(x) = (1+9x/49)^2 - (16/27)(1+x)", d, d.lo > 0.0},
               {"D'(100) > 0", d1, d1.lo > 0.0},
               {"D'' > 0", d2, d2.lo > 0.0}};
    rep.bounds.push_back(std::move(sb));
  }
  {
    ScalarBound sb;
    sb.name = "sqrt(8/7)(1+x/4)/sqrt(1+3x/2)";
    sb.certificate = certify_lower_bound(
        sb.name, h_large_alpha_enclosure,
        rectangle_domain("0<=x<=100", Box2{Interval(0.0, x_max), Interval(0.0)}), opt);
    const Interval e = Interval(8.0) / Interval(7.0);
    const Interval d = e * sqr(1.0 + X / 4.0) - c * (1.0 + 1.5 * X);
    const Interval d1 = e * (1.0 + X / 4.0) / 2.0 - 1.5 * c;
    const Interval d2 = e / 8.0;
    sb.tail = {{"D(100) > 0, D(x) = (8/7)(1+x/4)^2 - (16/27)(1+3x/2)", d, d.lo > 0.0},
               {"D'(100) > 0", d1, d1.lo > 0.0},
               {"D'' > 0", d2, d2.lo > 0.0}};
    rep.bounds.push_back(std::move(sb));
  }
  {
    ScalarBound sb;
    sb.name = "(1+t)^(3/2)/sqrt(1+11t/4+63t^2/8)";
    sb.certificate = certify_lower_bound(
        sb.name, h_small_alpha_enclosure,
        rectangle_domain("0<=t<=1", Box2{Interval(0.0, 1.0), Interval(0.0)}), opt);
    rep.bounds.push_back(std::move(sb));
  }
  return rep;
}

// ---- inequality chains -------------------------------------------------------

enum class Relation { Greater, GreaterEq, Equal };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Greater: return ">";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

struct ChainStep {
  std::string id;
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::GreaterEq;
  bool holds = false;
};

enum class ProofCase { HighSlope, LargeAlpha1, SmallAlpha1, DegenerateMinus, DegeneratePlus };

inline const char* to_string(ProofCase c) {
  switch (c) {
    case ProofCase::HighSlope: return "alpha2>0, (a1+a2)a3 >= 7/4(a1a2-bc1)";
    case ProofCase::LargeAlpha1: return "alpha2>0, (a1+a2)a3 < 7/4(a1a2-bc1), alpha1 > -3/2 alpha2 alpha3";
    case ProofCase::SmallAlpha1: return "alpha2>0, (a1+a2)a3 < 7/4(a1a2-bc1), alpha1 <= -3/2 alpha2 alpha3";
    case ProofCase::DegenerateMinus: return "alpha2=0, '-' root";
    case ProofCase::DegeneratePlus: return "alpha2=0, '+' root";
  }
  return "?";
}

struct ChainReport {
  ProofCase proof_case = ProofCase::HighSlope;
  std::vector<ChainStep> steps;

  std::size_t failing() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.holds ? 0 : 1;
    return n;
  }
  bool ok() const { return failing() == 0; }
};

inline constexpr double kChainRelTol = 1e-10;   // slack for non-strict steps
inline constexpr double kIdentityRelTol = 1e-9;

namespace detail {

class ChainBuilder {
 public:
  explicit ChainBuilder(ChainReport& r) : rep_(r) {}

  void gt(std::string id, std::string what, double lhs, double rhs) {
    add(std::move(id), std::move(what), lhs, rhs, Relation::Greater, lhs > rhs);
  }
  void ge(std::string id, std::string what, double lhs, double rhs) {
    const double tol = kChainRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    add(std::move(id), std::move(what), lhs, rhs, Relation::GreaterEq, lhs >= rhs - tol);
  }
  void eq(std::string id, std::string what, double lhs, double rhs) {
    const double tol = kIdentityRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    add(std::move(id), std::move(what), lhs, rhs, Relation::Equal, std::abs(lhs - rhs) <= tol);
  }

 private:
  void add(std::string id, std::string what, double lhs, double rhs, Relation rel, bool ok) {
    rep_.steps.push_back(ChainStep{std::move(id), std::move(what), lhs, rhs, rel, ok});
  }
  ChainReport& rep_;
};

}  // namespace detail

inline ProofCase classify_case(const MironovTorus& t) {
  const auto& al = t.alpha();
  if (al[1] == 0) {
    return t.point().branch == RootBranch::Plus ? ProofCase::DegeneratePlus : ProofCase::DegenerateMinus;
  }
  const double a1 = t.point().a1, a2 = t.point().a2, a3 = t.constants().a3;
  const double bc1 = double(al.b()) * double(al.c1());
  if ((a1 + a2) * a3 >= 1.75 * (a1 * a2 - bc1)) return ProofCase::HighSlope;
  if (al[0] > -1.5 * al[1] * al[2]) return ProofCase::LargeAlpha1;
  return ProofCase::SmallAlpha1;
}

/// Evaluates every inequality of the alpha2 > 0 branch containing the point.
inline ChainReport case_chain_check(const MironovTorus& t) {
  const auto& al = t.alpha();
  if (al[1] == 0) throw std::invalid_argument("case_chain_check requires alpha2 > 0");
  ChainReport rep;
  rep.proof_case = classify_case(t);
  detail::ChainBuilder ch(rep);

  const auto& d = t.constants();
  const double a1 = t.point().a1, a2 = t.point().a2, a3 = d.a3, c2 = d.c2, a = d.a, b = d.b;
  const double c1 = double(al.c1()), bc1 = b * c1;
  const double al1 = al[0], al2 = al[1], al3 = al[2];
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double w = d.omega;  // sqrt(a1 + a3)
  const double ecl = clifford_energy();
  const double thr = 4.0 / (3.0 * std::sqrt(3.0));
  const auto fv = energy_mironov(t);

  ch.gt("P1", "A > pi^2 (a1+a2)/sqrt(a1+a3)", fv.A, area_lower_bound(t));
  ch.gt("P2", "W > 2 pi^2 (a^2+b^2)/sqrt(a1+a3)", fv.W, willmore_lower_bound(t));
  ch.gt("P3", "E > pi^2 (a1+a2+(a^2+b^2)/4)/sqrt(a1+a3)", fv.E, energy_lower_bound(t));
  ch.ge("P4", "a2 >= 1", a2, 1.0);
  ch.gt("P5", "a3 > 0", a3, 0.0);

  switch (rep.proof_case) {
    case ProofCase::HighSlope: {
      const double s = a1 + a2;
      const double lhs = (s * a3 - (a1 * a2 - bc1));
      ch.eq("I1", "a^2 = ((a1+a2)a3 - (a1a2 - bc1))^2 / c2^2", a * a, lhs * lhs / (c2 * c2));
      ch.ge("I2", "a^2 >= 9/49 (a1+a2)^2 a3^2/c2^2", a * a, 9.0 / 49.0 * s * s * a3 * a3 / (c2 * c2));
      ch.eq("I3", "a3^2/c2^2 = a3/(a1a2) (c1^2+c2^2)/c2^2", a3 * a3 / (c2 * c2),
            a3 / (a1 * a2) * (c1 * c1 + c2 * c2) / (c2 * c2));
      const double a2lb = 9.0 / 49.0 * s * s * a3 / (a1 * a2);
      ch.ge("I4", "a^2 >= 9/49 (a1+a2)^2 a3/(a1a2)", a * a, a2lb);
      const double e5 = pi2 * (s + 9.0 * s * s * a3 / (196.0 * a1 * a2)) / w;
      ch.gt("I5", "E > pi^2 (a1+a2+9(a1+a2)^2 a3/(196 a1a2))/sqrt(a1+a3)", fv.E, e5);
      const double e6 = pi2 * (a1 + 9.0 * a3 / 49.0) / w;
      ch.gt("I6", "... > pi^2 (a1 + 9a3/49)/sqrt(a1+a3)", e5, e6);
      const double xr = a3 / a1;
      ch.eq("I7", "pi^2 (a1+9a3/49)/sqrt(a1+a3) = pi^2 sqrt(a1) h(a3/a1)", e6,
            pi2 * std::sqrt(a1) * h_high_slope(xr));
      ch.gt("I8", "pi^2 sqrt(a1) h(a3/a1) > pi^2 h(a3/a1)", pi2 * std::sqrt(a1) * h_high_slope(xr),
            pi2 * h_high_slope(xr));
      ch.gt("I9", "h(x) = (1+9x/49)/sqrt(1+x) > 4/(3 sqrt 3)", h_high_slope(xr), thr);
      ch.gt("I10", "E > E_Cl", fv.E, ecl);
      break;
    }
    case ProofCase::LargeAlpha1: {
      const double s = a1 + a2;
      ch.gt("A1", "alpha1 < -3b", -3.0 * b, al1);
      ch.gt("A2", "-bc1/(a1+a2) < 3/2 b^2", 1.5 * b * b, -bc1 / s);
      const double e3 = pi2 * (s + b * b / 4.0) / w;
      ch.gt("A3", "E > pi^2 (a1+a2+b^2/4)/sqrt(a1+a3)", fv.E, e3);
      const double r4 = a1 + 1.75 * a1 * a2 / s - 1.75 * bc1 / s;
      const double e4 = pi2 * (s + b * b / 4.0) / std::sqrt(r4);
      ch.gt("A4", "... > pi^2 (a1+a2+b^2/4)/sqrt(a1 + 7/4 a1a2/(a1+a2) - 7/4 bc1/(a1+a2))", e3, e4);
      const double r5 = a1 + 1.75 * a2 + 21.0 / 8.0 * b * b;
      const double e5 = pi2 * (s + b * b / 4.0) / std::sqrt(r5);
      ch.gt("A5", "... > pi^2 (a1+a2+b^2/4)/sqrt(a1 + 7/4 a2 + 21/8 b^2)", e4, e5);
      const double r6 = 1.75 * a1 + 1.75 * a2 + 21.0 / 8.0 * b * b;
      const double e6 = pi2 * (s + b * b / 4.0) / std::sqrt(r6);
      ch.gt("A6", "... > pi^2 (a1+a2+b^2/4)/sqrt(7/4 a1 + 7/4 a2 + 21/8 b^2)", e5, e6);
      const double xr = b * b / s;
      const double e7 = pi2 * std::sqrt(4.0 * s / 7.0) * (1.0 + xr / 4.0) / std::sqrt(1.0 + 1.5 * xr);
      ch.eq("A7", "... = pi^2 sqrt(4(a1+a2)/7) (1+b^2/(4(a1+a2)))/sqrt(1+3/2 b^2/(a1+a2))", e6, e7);
      ch.gt("A8", "... > pi^2 f(b^2/(a1+a2))", e7, pi2 * h_large_alpha(xr));
      ch.gt("A9", "f(x) = sqrt(8/7)(1+x/4)/sqrt(1+3x/2) > 4/(3 sqrt 3)", h_large_alpha(xr), thr);
      ch.gt("A10", "E > E_Cl", fv.E, ecl);
      break;
    }
    case ProofCase::SmallAlpha1: {
      const double s = a1 + a2;
      ch.ge("B1", "-bc1 <= -2 alpha1^2 alpha2 alpha3", -2.0 * al1 * al1 * al2 * al3, -bc1);
      ch.gt("B2", "-2 alpha1^2 alpha2 alpha3 < 9/2 a1 a2^2", 4.5 * a1 * a2 * a2,
            -2.0 * al1 * al1 * al2 * al3);
      const double e3 = pi2 * s / std::sqrt(a1 + 1.75 * (a1 * a2 - bc1) / s);
      ch.gt("B3", "E > pi^2 (a1+a2)/sqrt(a1 + 7/4 (a1a2 - bc1)/(a1+a2))", fv.E, e3);
      const double e4 = pi2 * s * std::sqrt(s) / std::sqrt(a1 * s + 1.75 * a1 * a2 - 1.75 * bc1);
      ch.eq("B4", "... = pi^2 (a1+a2)^{3/2}/sqrt(a1(a1+a2) + 7/4 a1a2 - 7/4 bc1)", e3, e4);
      const double e5 =
          pi2 * s * std::sqrt(s) / std::sqrt(a1 * a1 + 2.75 * a1 * a2 + 63.0 / 8.0 * a1 * a2 * a2);
      ch.gt("B5", "... > pi^2 (a1+a2)^{3/2}/sqrt(a1^2 + 11/4 a1a2 + 63/8 a1a2^2)", e4, e5);
      const double e6 = pi2 * s * std::sqrt(s) /
                        std::sqrt(a1 * a1 * a1 + 2.75 * a1 * a1 * a2 + 63.0 / 8.0 * a1 * a2 * a2);
      ch.gt("B6", "... > pi^2 (a1+a2)^{3/2}/sqrt(a1^3 + 11/4 a1^2a2 + 63/8 a1a2^2)", e5, e6);
      const double tr = a2 / a1;
      ch.eq("B7", "... = pi^2 (1+t)^{3/2}/sqrt(1 + 11t/4 + 63t^2/8), t = a2/a1", e6,
            pi2 * h_small_alpha(tr));
      ch.gt("B8", "(1+t)^{3/2}/sqrt(1 + 11t/4 + 63t^2/8) > 4/(3 sqrt 3)", h_small_alpha(tr), thr);
      ch.gt("B9", "E > E_Cl", fv.E, ecl);
      break;
    }
    default:
      break;
  }
  return rep;
}

/// Evaluates the alpha2 = 0 estimates: the sandwich bounds on c2^2 and a3, the
/// resulting bounds on A, W, E and the final comparison through B1 or B2.
inline ChainReport degenerate_c2_bounds_check(const MironovTorus& t) {
  const auto& al = t.alpha();
  if (al[1] != 0) throw std::invalid_argument("degenerate_c2_bounds_check requires alpha2 = 0");
  ChainReport rep;
  rep.proof_case = classify_case(t);
  detail::ChainBuilder ch(rep);

  const auto& dc = t.constants();
  const double a1 = t.point().a1, a2 = t.point().a2;
  const double p = -double(al[0]) * al[2];
  const double x = a1 / p, y = a2 / p;
  const double u = 2.0 - x - y, d = x - y;
  const double c2 = dc.c2, c22 = c2 * c2, a3 = dc.a3, a = dc.a;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double w = dc.omega;
  const double sp = std::sqrt(p);
  const auto fv = energy_mironov(t);
  const auto q = C2Quartic::from(al, a1, a2);
  const bool plus = t.point().branch == RootBranch::Plus;

  ch.gt("D0a", "y > 0", y, 0.0);
  ch.gt("D0b", "x > y", x, y);
  ch.ge("D0c", "1 >= x", 1.0, x);
  ch.eq("D1a", "P = p^5 x^2 y^2 (x+y-2)", q.p, std::pow(p, 5) * x * x * y * y * (x + y - 2.0));
  ch.eq("D1b", "P^2 - (a1-a2)^2 R^2 = 4 p^10 x^4 y^4 (1-x)(1-y)", q.p * q.p - q.lead * q.r * q.r,
        4.0 * std::pow(p, 10) * std::pow(x * y, 4) * (1.0 - x) * (1.0 - y));
  const double root = std::sqrt(std::max(0.0, u * u - d * d));
  ch.eq("D2", std::string("c2^2 = p^3 x^2 y^2 (2-x-y ") + (plus ? "+" : "-") +
                  " sqrt((2-x-y)^2 - (x-y)^2))/(x-y)^2",
        c22, std::pow(p, 3) * x * x * y * y * (u + (plus ? root : -root)) / (d * d));
  ch.ge("D3a", "sqrt((2-x-y)^2-(x-y)^2) >= 2-x-y - (x-y)^2/(2-x-y)", root, u - d * d / u);
  ch.ge("D3b", "2-x-y - (x-y)^2/(2(2-x-y)) >= sqrt((2-x-y)^2-(x-y)^2)", u - d * d / (2.0 * u), root);

  if (!plus) {
    const double lo = std::pow(p, 3) * x * x * y * y / (2.0 * u);
    const double hi = std::pow(p, 3) * x * x * y * y / u;
    ch.ge("M1a", "c2^2 >= p^3 x^2y^2/(2(2-x-y))", c22, lo);
    ch.ge("M1b", "p^3 x^2y^2/(2-x-y) >= c2^2", hi, c22);
    ch.eq("M2", "a3 = c2^2/(a1 a2)", a3, c22 / (a1 * a2));
    ch.ge("M3a", "a3 >= p xy/(2(2-x-y))", a3, p * x * y / (2.0 * u));
    ch.ge("M3b", "p xy/(2-x-y) >= a3", p * x * y / u, a3);
    const double rootx = std::sqrt(x + x * y / u);
    ch.ge("M4", "A >= pi^2 sqrt(p)(x+y)/sqrt(x + xy/(2-x-y))", fv.A, pi2 * sp * (x + y) / rootx);
    ch.eq("M5", "a = ((a1+a2)a3 - a1a2)/c2", a, ((a1 + a2) * a3 - a1 * a2) / c2);
    const double a6 = ((x * p + y * p) * p * x * y / (2.0 * u) - x * y * p * p) / c2;
    ch.ge("M6", "a >= ((xp+yp) p xy/(2(2-x-y)) - xy p^2)/c2", a, a6);
    const double kk = (x + y) / (2.0 * u) - 1.0;
    const double a7 = sp * kk * std::sqrt(u);
    ch.ge("M7", "((xp+yp) p xy/(2(2-x-y)) - xy p^2)/c2 >= sqrt(p)((x+y)/(2(2-x-y)) - 1) sqrt(2-x-y)",
          a6, a7);
    ch.ge("M8", "W >= 2 pi^2 a^2/sqrt(a1+a3)", fv.W, 2.0 * pi2 * a * a / w);
    const double wlb = 2.0 * pi2 * sp * kk * kk * u / rootx;
    ch.ge("M9", "2 pi^2 a^2/sqrt(a1+a3) >= 2 pi^2 sqrt(p)((x+y)/(2(2-x-y)) - 1)^2 (2-x-y)/sqrt(x+xy/(2-x-y))",
          2.0 * pi2 * a * a / w, wlb);
    const double elb = pi2 * sp * ((x + y) / rootx + 0.25 * kk * kk * u / rootx);
    ch.ge("M10", "E >= pi^2 sqrt(p)((x+y)/sqrt(x+xy/(2-x-y)) + 1/4 ((x+y)/(2(2-x-y)) - 1)^2 (2-x-y)/sqrt(...))",
          fv.E, elb);
    const double bb = b1(TrianglePoint(x, y));
    ch.eq("M11a", "(x+y)/sqrt(x+xy/(2-x-y)) + 1/4(...)^2 (2-x-y)/sqrt(...) = B1(x, y)",
          elb / (pi2 * sp), bb);
    ch.ge("M11b", "pi^2 sqrt(p) B1 >= pi^2 B1 (p >= 1)", pi2 * sp * bb, pi2 * bb);
    ch.ge("M11c", "E >= pi^2 B1(x, y)", fv.E, pi2 * bb);
    ch.gt("M12a", "B1(x, y) > 1", bb, 1.0);
    ch.gt("M12b", "E > E_Cl", fv.E, clifford_energy());
  } else {
    const double f = f_aux(x, y), g = g_aux(x, y), xy = x * y;
    const double p3 = std::pow(p, 3);
    ch.ge("Q1a", "c2^2 >= p^3 f(x, y)", c22, p3 * f);
    ch.ge("Q1b", "p^3 g(x, y) >= c2^2", p3 * g, c22);
    ch.ge("Q2a", "a3 >= p f/(xy)", a3, p * f / xy);
    ch.ge("Q2b", "p g/(xy) >= a3", p * g / xy, a3);
    const double h = (x + y) * f / xy - xy;
    ch.ge("Q3", "a >= sqrt(p)((x+y) f/(xy) - xy)/sqrt(g)", a, sp * h / std::sqrt(g));
    const double rootx = std::sqrt(x + g / xy);
    ch.ge("Q4", "A >= pi^2 sqrt(p)(x+y)/sqrt(x + g/(xy))", fv.A, pi2 * sp * (x + y) / rootx);
    ch.ge("Q5a", "W >= 2 pi^2 a^2/sqrt(a1+a3)", fv.W, 2.0 * pi2 * a * a / w);
    ch.ge("Q5b", "2 pi^2 a^2/sqrt(a1+a3) >= 2 pi^2 sqrt(p)((x+y)f/(xy) - xy)^2/(g sqrt(x + g/(xy)))",
          2.0 * pi2 * a * a / w, 2.0 * pi2 * sp * h * h / (g * rootx));
    const double elb = pi2 * sp * (x + y + 0.25 * h * h / g) / rootx;
    ch.ge("Q6", "E >= pi^2 sqrt(p)(x+y + 1/4((x+y)f/(xy) - xy)^2/g)/sqrt(x + g/(xy))", fv.E, elb);
    const double bb = b2(TrianglePoint(x, y));
    ch.ge("Q7", "... >= pi^2 B2(x, y)", elb, pi2 * bb);
    ch.gt("Q8", "B2(x, y) > 0.9", bb, 0.9);
    ch.gt("Q9a", "0.9 pi^2 > E_Cl", 0.9 * pi2, clifford_energy());
    ch.gt("Q9b", "E > E_Cl", fv.E, clifford_energy());
  }
  return rep;
}

/// Dispatches on alpha2.
inline ChainReport proof_chain_check(const MironovTorus& t) {
  return t.alpha()[1] == 0 ? degenerate_c2_bounds_check(t) : case_chain_check(t);
}

}  // namespace lagtori
