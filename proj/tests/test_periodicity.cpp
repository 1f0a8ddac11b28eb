#include "support/sweep.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace lagtori;

namespace {

// dG values giving a prescribed mu for alpha = (2, 1, -1): mu = (2 d13 - 3 d23)/(2 pi).
PhaseDifferences with_mu(double mu) { return {mu * std::numbers::pi, 0.0}; }

}  // namespace

TEST(BestRational, ContinuedFractionBasics) {
  EXPECT_EQ(best_rational(1.0 / 3.0, 1000), (Rational{1, 3}));
  EXPECT_EQ(best_rational(0.333333, 1000), (Rational{1, 3}));
  EXPECT_EQ(best_rational(-2.5, 10), (Rational{-5, 2}));
  EXPECT_EQ(best_rational(std::numbers::pi, 100), (Rational{311, 99}));
  EXPECT_EQ(best_rational(std::numbers::pi, 7), (Rational{22, 7}));
  EXPECT_EQ(best_rational(3.0, 5), (Rational{3, 1}));
  EXPECT_THROW(best_rational(NAN, 5), std::domain_error);
}

TEST(BestRational, NoBetterFractionWithSmallerDenominator) {
  const double v = 0.6180339887498949;
  const Rational r = best_rational(v, 50);
  for (std::int64_t q = 1; q <= 50; ++q) {
    const double p = std::round(v * q);
    EXPECT_GE(std::abs(v - p / q) + 1e-15, std::abs(v - r.value())) << q;
  }
}

TEST(RationalFit, SyntheticThirdIsExact) {
  const AlphaTriple al(2, 1, -1);
  const auto res = rational_fit_from(al, with_mu(1.0 / 3.0), 1.0, 1000, 1e-12);
  const auto* L = std::get_if<LatticeData>(&res);
  ASSERT_TRUE(L);
  EXPECT_EQ(L->mu_fit, (Rational{1, 3}));
  EXPECT_LT(L->approx_error, 1e-15);
  // (alpha2 - alpha3) lambda1 - (alpha1 - alpha3) lambda2 = p/q
  EXPECT_NEAR(2 * L->lambda1.value() - 3 * L->lambda2.value(), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(L->N, std::lcm(L->lambda1.den, L->lambda2.den));
  // tau makes lambda1 = (dG13 + A tau)/(2 pi)
  EXPECT_NEAR((L->dg.d13 + 3 * L->tau) / (2 * std::numbers::pi), L->lambda1.value(), 1e-14);
  EXPECT_NEAR((L->dg.d23 + 2 * L->tau) / (2 * std::numbers::pi), L->lambda2.value(), 1e-14);
}

TEST(RationalFit, ToleranceDecides) {
  const AlphaTriple al(2, 1, -1);
  EXPECT_TRUE(std::holds_alternative<LatticeData>(rational_fit_from(al, with_mu(0.333333), 1.0, 1000, 1e-5)));
  const auto np = rational_fit_from(al, with_mu(0.333333), 1.0, 1000, 1e-9);
  ASSERT_TRUE(std::holds_alternative<NotPeriodic>(np));
  EXPECT_EQ(std::get<NotPeriodic>(np).best, (Rational{1, 3}));
}

TEST(RationalFit, RejectsNonCoprimeWeights) {
  EXPECT_THROW(rational_fit_from(AlphaTriple(3, 1, -1), with_mu(0.5), 1.0), std::invalid_argument);
}

TEST(RationalFit, ReducedLambdas) {
  const AlphaTriple al(3, 2, -1);  // A = 4, B = 3
  const auto res = rational_fit_from(al, {0.25, 0.75}, 1.0, 1000, 1.0);
  const auto& L = std::get<LatticeData>(res);
  EXPECT_EQ(std::gcd(L.lambda1.num, L.lambda1.den), 1);
  EXPECT_EQ(std::gcd(L.lambda2.num, L.lambda2.den), 1);
  EXPECT_NEAR(3 * L.lambda1.value() - 4 * L.lambda2.value(), L.mu_fit.value(), 1e-15);
}

TEST(Phases, DifferencesAntisymmetric) {
  const MironovTorus t(AlphaTriple(2, 1, -1), ModuliPoint{1.8, 1.2, RootBranch::Minus});
  const auto d = phase_differences(t);
  const double T = t.constants().T;
  EXPECT_NEAR(d.d13, t.g_phase(T, 0) - t.g_phase(T, 2), 1e-15);
  EXPECT_NEAR(d.d23, t.g_phase(T, 1) - t.g_phase(T, 2), 1e-15);
  EXPECT_NEAR(-d.d13, t.g_phase(T, 2) - t.g_phase(T, 0), 1e-15);
}

TEST(Phases, ProjectiveDistance) {
  const std::array<std::complex<double>, 3> u{std::complex<double>(0.6, 0), 0.8, 0};
  auto w = u;
  for (auto& z : w) z *= std::polar(1.0, 0.7);
  EXPECT_LT(projective_distance(u, w), 1e-15);
  const std::array<std::complex<double>, 3> v{std::complex<double>(0.8, 0), -0.6, 0};
  EXPECT_NEAR(projective_distance(u, v), 1.0, 1e-15);
}
