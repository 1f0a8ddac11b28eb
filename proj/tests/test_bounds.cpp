#include "support/sweep.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace lagtori;
using lagtori::testing::for_each_torus;

namespace {

double grid_min(double (*f)(const TrianglePoint&), int n) {
  double best = 1e300;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j < i; ++j) best = std::min(best, f(TrianglePoint(double(i) / n, double(j) / n)));
  }
  return best;
}

// Random sub-boxes of [0,1]^2 inside the triangle; every sampled point value
// must lie in the box enclosure.
template <class Enc, class Point>
void check_enclosure(Enc enc, Point pt, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    double x0 = u(rng), y0 = u(rng) * x0;
    const double w = 0.05 * u(rng);
    const Box2 b{Interval(x0, std::min(1.0, x0 + w)), Interval(y0, y0 + 0.5 * w)};
    if (b.y.hi >= b.x.lo || b.y.lo <= 0.0) continue;
    const Interval e = enc(b);
    for (int k = 0; k < 5; ++k) {
      const double px = b.x.lo + u(rng) * (b.x.hi - b.x.lo);
      const double py = b.y.lo + u(rng) * (b.y.hi - b.y.lo);
      const double v = pt(px, py);
      ASSERT_LE(e.lo, v * (1 + 1e-14)) << px << ' ' << py;
      ASSERT_GE(e.hi, v * (1 - 1e-14)) << px << ' ' << py;
    }
  }
}

}  // namespace

TEST(Triangle, RejectsOutsidePoints) {
  EXPECT_THROW(TrianglePoint(0.5, 0.5), std::domain_error);
  EXPECT_THROW(TrianglePoint(1.2, 0.5), std::domain_error);
  EXPECT_THROW(TrianglePoint(0.5, 0.0), std::domain_error);
  EXPECT_THROW(f_aux(0.4, 0.4), std::domain_error);
}

TEST(B1, PointValues) {
  // (16 - 7 + 8 - 7 + 4 - 1.75)/(16 sqrt(1 * 0.5 * 1)) at (1, 1/2)
  EXPECT_NEAR(b1(TrianglePoint(1.0, 0.5)), 12.25 / (16 * std::sqrt(0.5)), 1e-15);
  EXPECT_GT(grid_min(b1, 400), 1.0);
}

TEST(B2, ComposedAndClearedFormsAgree) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.001, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng), y = u(rng) * x * 0.999;
    const TrianglePoint p(x, y);
    EXPECT_NEAR(b2(p), b2_expanded(p), 1e-10 * b2(p));
  }
}

TEST(B2, GridMinimumAboveNineTenths) {
  const double m = grid_min(b2, 400);
  EXPECT_GT(m, 0.9);
  EXPECT_LT(m, 1.0);  // the bound is not slack by much
}

TEST(Enclosures, ContainPointValues) {
  check_enclosure(b1_enclosure, [](double x, double y) { return b1(TrianglePoint(x, y)); }, 1);
  check_enclosure(b2_enclosure, [](double x, double y) { return b2(TrianglePoint(x, y)); }, 2);
  check_enclosure(f_enclosure, [](double x, double y) { return f_aux(x, y); }, 3);
  check_enclosure(g_enclosure, [](double x, double y) { return g_aux(x, y); }, 4);
}

TEST(Enclosures, ChartFormsContainPointValues) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double x = 0.001 + u(rng) / 16, t = 0.001 + 0.99 * u(rng);
    const Interval e = b2_origin_chart_enclosure(Box2{Interval(x), Interval(t)});
    const double v = b2(TrianglePoint(x, t * x));
    EXPECT_LE(e.lo, v * (1 + 1e-12));
    EXPECT_GE(e.hi, v * (1 - 1e-12));
    const double uu = 0.001 + u(rng) / 16, r = 0.001 + 0.99 * u(rng);
    const double cx = (2 - uu + r * uu) / 2, cy = (2 - uu - r * uu) / 2;
    if (cx > 1.0) continue;
    const Interval c = b2_corner_chart_enclosure(Box2{Interval(uu), Interval(r)});
    const double cv = b2(TrianglePoint(cx, cy));
    EXPECT_LE(c.lo, cv * (1 + 1e-10));
    EXPECT_GE(c.hi, cv * (1 - 1e-10));
  }
}

TEST(Certificates, B1AboveOneProved) {
  const auto l = certify_lemma4();
  EXPECT_TRUE(l.proved());
  EXPECT_TRUE(replay(l.main, b1_enclosure));
  EXPECT_EQ(l.main.epsilon, 1e-4);
}

TEST(Certificates, B2AboveNineTenthsOnAllPieces) {
  const auto l = certify_lemma5();
  EXPECT_EQ(l.status(), Status::Proved);
  EXPECT_EQ(l.boundary.size(), 3U);
  EXPECT_TRUE(replay(l.main, b2_enclosure));
}

TEST(Certificates, B1AtOnePointTwoFails) {
  const auto c = certify_b1_at(1.2);
  ASSERT_EQ(c.status, Status::Failed);
  ASSERT_TRUE(c.witness);
  EXPECT_LE(b1(TrianglePoint(c.witness->x, c.witness->y)), 1.2);
}

TEST(Certificates, DepthLimitGivesInconclusive) {
  // B2 needs depth ~32 near the diagonal at eps = 1e-4
  const auto l = certify_lemma5(0.9, 1e-4, 1, 8);
  EXPECT_EQ(l.main.status, Status::Inconclusive);
  EXPECT_TRUE(l.main.deepest_failing);
}

TEST(Scalar, AllThreeProved) {
  const auto r = scalar_bound_checks();
  ASSERT_EQ(r.bounds.size(), 3U);
  EXPECT_TRUE(r.proved());
  EXPECT_GT(h_high_slope(1e6), 0.7698);
  EXPECT_GT(h_large_alpha(1e6), 0.7698);
  double m = 1e9;
  for (double x = 0; x <= 100; x += 1e-3) m = std::min(m, h_high_slope(x));
  EXPECT_GT(m, clifford_ratio_threshold().hi);
}

TEST(Chains, PositiveWeightCasesHold) {
  std::set<ProofCase> seen;
  for_each_torus(8, [&](const MironovTorus& t) {
    if (t.alpha()[1] == 0) return;
    const auto r = case_chain_check(t);
    seen.insert(r.proof_case);
    for (const auto& s : r.steps) {
      EXPECT_TRUE(s.holds) << t.alpha().str() << " a1=" << t.point().a1 << " a2=" << t.point().a2 << ' '
                           << to_string(t.point().branch) << ' ' << s.id << ": " << s.lhs << ' '
                           << to_string(s.relation) << ' ' << s.rhs;
    }
  });
  EXPECT_TRUE(seen.count(ProofCase::HighSlope));
  EXPECT_TRUE(seen.count(ProofCase::LargeAlpha1));
}

TEST(Chains, ZeroWeightPlusBranchHolds) {
  for_each_torus(8, [](const MironovTorus& t) {
    if (t.alpha()[1] != 0 || t.point().branch != RootBranch::Plus) return;
    const auto r = degenerate_c2_bounds_check(t);
    EXPECT_EQ(r.proof_case, ProofCase::DegeneratePlus);
    for (const auto& s : r.steps) EXPECT_TRUE(s.holds) << s.id << ' ' << s.lhs << ' ' << s.rhs;
  });
}

// The minus-branch estimate for a divides p^2 xy ((x+y)/(2u) - 1) by the upper
// bound of c2. That only bounds from below when the bracket is positive, i.e.
// x + y > 4/3; below that M7 fails, and M9 (its square) can fail with it.
// The energy bound itself (M10 onwards) still holds.
TEST(Chains, ZeroWeightMinusBranchOnlyTheSlopeStepFails) {
  std::set<std::string> failing;
  for_each_torus(8, [&](const MironovTorus& t) {
    if (t.alpha()[1] != 0 || t.point().branch != RootBranch::Minus) return;
    for (const auto& s : degenerate_c2_bounds_check(t).steps) {
      if (!s.holds) failing.insert(s.id);
    }
  });
  for (const auto& id : failing) EXPECT_TRUE(id == "M7" || id == "M9") << id;
  EXPECT_TRUE(failing.count("M7"));
}

TEST(Chains, DispatchAndPreconditions) {
  const MironovTorus z(AlphaTriple(1, 0, -1), ModuliPoint{0.9, 0.4, RootBranch::Plus});
  const MironovTorus p(AlphaTriple(2, 1, -1), ModuliPoint{1.8, 1.2, RootBranch::Plus});
  EXPECT_THROW(case_chain_check(z), std::invalid_argument);
  EXPECT_THROW(degenerate_c2_bounds_check(p), std::invalid_argument);
  EXPECT_EQ(proof_chain_check(z).proof_case, ProofCase::DegeneratePlus);
  EXPECT_EQ(proof_chain_check(p).proof_case, ProofCase::HighSlope);
}
