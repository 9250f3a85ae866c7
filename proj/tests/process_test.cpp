#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "savchaos/process.hpp"
#include "test_util.hpp"

using namespace savchaos;
using boost::multiprecision::cpp_rational;

TEST(Step, BranchesAndTie) {
  const ProcessParams p(-0.5, 1000, 500, 1500);
  EXPECT_EQ(step(p, 1000), 1500);
  EXPECT_EQ(step(p, 1500), 1250);  // x = rho takes the second branch
  EXPECT_EQ(step(p, std::nextafter(1500.0, 0.0)), 0.5 * std::nextafter(1500.0, 0.0) + 1000);
  EXPECT_EQ(step(p, 0), 1000);
}

TEST(Step, Errors) {
  const ProcessParams p(-0.5, 1000, 500, 1500);
  EXPECT_EQ(code_of([&] { step(p, -1e-300); }), ErrorCode::domain);
  EXPECT_EQ(code_of([&] { step(p, INFINITY); }), ErrorCode::domain);
  EXPECT_EQ(code_of([] { ProcessParams(0.0, 1, 1, 1); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { ProcessParams(-1.0, 1, 1, 1); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { ProcessParams(-0.5, -1, 1, 1); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { ProcessParams(-0.5, 1, 1, 0); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { ProcessParams(-0.5, NAN, 1, 1); }), ErrorCode::parameter);
}

TEST(ClosedForm, SmallCase) {
  EXPECT_DOUBLE_EQ(closed_form(500, -0.5, 0, 3), 875.0);
  EXPECT_EQ(closed_form(500, -0.5, 123.0, 0), 123.0);
  EXPECT_DOUBLE_EQ(limit_value(500, -0.5), 1000.0);
}

TEST(ClosedForm, MatchesExactRecurrence) {
  const cpp_rational a(1, 2);
  for (int s0 : {0, 17, 999, 4000}) {
    cpp_rational s = s0;
    for (std::size_t n = 0; n <= 60; ++n) {
      const double exact = static_cast<double>(s);
      EXPECT_NEAR(closed_form(500, -0.5, s0, n), exact, 1e-12 * std::max(1.0, exact)) << s0 << " " << n;
      s = a * s + 500;
    }
  }
}

TEST(ClosedForm, Errors) {
  EXPECT_EQ(code_of([] { closed_form(500, 0.0, 0, 3); }), ErrorCode::singular_rate);
  EXPECT_EQ(code_of([] { closed_form(500, 0.5, 0, 3); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { closed_form(-1, -0.5, 0, 3); }), ErrorCode::domain);
}

TEST(Absorption, BoundAndSteps) {
  const ProcessParams p(-0.5, 1000, 500, 1500);
  EXPECT_EQ(absorbing_bound(p), 4000.0);
  EXPECT_EQ(absorption_steps(p, 100.0), 0u);
  const std::size_t k = absorption_steps(p, 1e9);
  double x = 1e9;
  for (std::size_t i = 0; i < k; ++i) x = step(p, x);
  EXPECT_LE(x, 4000.0);
  EXPECT_EQ(code_of([] { absorbing_bound(ProcessParams(-0.5, 0, 0, 1)); }), ErrorCode::degenerate_process);
}

TEST(Absorption, RandomParametersStayInside) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(-0.999, -0.001), uv(0.0, 1e4), uu(0.0, 1.0);
  std::size_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const double r = ur(rng), v1 = uv(rng), v2 = uv(rng);
    const double m = -2.0 * std::max(v1, v2) / r;
    const ProcessParams p(r, v1, v2, std::max(uu(rng) * m, 1e-9));
    for (int i = 0; i <= 100; ++i) {
      const double y = step(p, m * i / 100.0);
      violations += !(y >= 0.0 && y <= m);
    }
  }
  EXPECT_EQ(violations, 0u);
}

TEST(Chaotic, ThresholdForBase2) {
  const auto c = chaotic_params(2.0, 1e-13);
  EXPECT_NEAR(c.rho, 1709.8034428612913146, 1e-12);
  EXPECT_NEAR(c.delta, 0.64509827856935434268, 1e-16);
  EXPECT_EQ(c.r(), -0.5);
  EXPECT_LE(500.0 * 4.0 / 1.0 * c.truncation_bound, 1e-13);
  EXPECT_GT(c.truncation_bound, 0.0);
  const auto p = c.process();
  EXPECT_EQ(p.v1(), 1000.0);
  EXPECT_EQ(p.v2(), 500.0);
  ASSERT_TRUE(p.chaotic_b());
  EXPECT_EQ(*p.chaotic_b(), 2.0);
}

TEST(Chaotic, AttractorInterval) {
  const auto c = chaotic_params(2.0);
  const Interval K = c.attractor_interval();
  EXPECT_NEAR(K.lo, 1354.9017214306457, 1e-9);
  EXPECT_NEAR(K.hi, 1854.9017214306457, 1e-9);
  for (double b : {1.25, 2.0, 3.0, 7.5}) {
    const auto cb = chaotic_params(b);
    EXPECT_NEAR(cb.attractor_interval().length(), 500.0, 1e-9) << b;
    EXPECT_NEAR(cb.central_gap().length(), cb.gap_length(), 1e-9) << b;
  }
}

TEST(Chaotic, ConjugacyMapsKOntoUnitInterval) {
  const auto c = chaotic_params(2.0);
  const Interval K = c.attractor_interval();
  EXPECT_NEAR(conjugacy_L(c, K.lo), 0.0, 1e-13);
  EXPECT_NEAR(conjugacy_L(c, K.hi), 1.0, 1e-13);
  EXPECT_NEAR(conjugacy_L(c, 1400), 0.0901965571387087, 1e-13);
  EXPECT_NEAR(conjugacy_L(c, c.rho), c.normalized_map().breakpoint, 1e-13);
  EXPECT_NEAR(conjugacy_L_inverse(c, conjugacy_L(c, 1600.25)), 1600.25, 1e-10);
}

TEST(Chaotic, NormalizedMapConjugatesStep) {
  const auto c = chaotic_params(2.0);
  const auto p = c.process();
  const auto m = c.normalized_map();
  for (double x = 1360; x < 1850; x += 7.3) {
    EXPECT_NEAR(conjugacy_L(c, step(p, x)), normalized_step(m, conjugacy_L(c, x)), 1e-12) << x;
  }
}

TEST(Chaotic, Errors) {
  EXPECT_EQ(code_of([] { chaotic_params(1.0); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { chaotic_params(0.5); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { chaotic_params(2.0, 0.0); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { chaotic_params(1.0001, 1e-13); }), ErrorCode::precision_unreachable);
}
