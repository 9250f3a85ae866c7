#include <gtest/gtest.h>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

#include "savchaos/analysis.hpp"
#include "test_util.hpp"

using namespace savchaos;
using boost::multiprecision::cpp_rational;

namespace {

const ProcessParams kTwoCycle(-0.5, 1000, 500, 1500);

// Periodic point of the branch pattern (below, above): x = a(a x + v1) + v2.
std::pair<double, double> exact_two_cycle() {
  const cpp_rational a(1, 2), v1(1000), v2(500);
  const cpp_rational x = (a * v1 + v2) / (1 - a * a);
  const cpp_rational y = a * x + v1;
  EXPECT_TRUE(x < 1500 && y >= 1500 && a * y + v2 == x);
  return {static_cast<double>(x), static_cast<double>(y)};
}

}  // namespace

TEST(DetectCycle, RationalTwoCycle) {
  const auto [x, y] = exact_two_cycle();
  const auto rep = detect_cycle(kTwoCycle, Seed::at(0.0));
  ASSERT_TRUE(rep.found());
  EXPECT_EQ(rep.period, 2u);
  auto pts = rep.cycle_points;
  std::sort(pts.begin(), pts.end());
  EXPECT_NEAR(pts[0], x, 1e-9);
  EXPECT_NEAR(pts[1], y, 1e-9);
  EXPECT_LE(rep.residual, 1e-9);
}

TEST(DetectCycle, EqualDepositsFixedPoint) {
  const auto rep = detect_cycle(ProcessParams(-0.5, 500, 500, 900), Seed::at(3000.0));
  ASSERT_TRUE(rep.found());
  EXPECT_EQ(rep.period, 1u);
  EXPECT_NEAR(rep.cycle_points[0], 1000.0, 1e-9);
}

TEST(DetectCycle, MinimalPeriod) {
  // Period 2 also satisfies every multiple; the smallest must be reported.
  CycleOptions o;
  o.max_period = 50;
  const auto rep = detect_cycle(kTwoCycle, Seed::at(10.0), o);
  EXPECT_EQ(rep.period, 2u);
}

TEST(DetectCycle, ChaoticHasNoCycle) {
  const auto p = chaotic_params(2.0).process();
  CycleOptions o;
  o.max_iter = 100'000;
  o.tol = 1e-9;
  EXPECT_EQ(detect_cycle(p, Seed::at(1450.0), o).status, CycleStatus::not_found);
}

TEST(DetectCycle, Binary64ArtifactIsACycle) {
  const auto p = chaotic_params(2.0).process();
  CycleOptions o;
  o.arithmetic = Arithmetic::binary64;
  const auto rep = detect_cycle(p, Seed::at(1450.0), o);
  ASSERT_TRUE(rep.found());
  EXPECT_EQ(rep.period, 34u);
}

TEST(DetectCycle, SmallBudgetIsInconclusive) {
  CycleOptions o;
  o.max_iter = 5;
  const auto p = chaotic_params(2.0).process();
  EXPECT_EQ(detect_cycle(p, Seed::at(1450.0), o).status, CycleStatus::inconclusive);
  EXPECT_EQ(code_of([] {
              CycleOptions bad;
              bad.tol = -1;
              detect_cycle(kTwoCycle, Seed::at(0), bad);
            }),
            ErrorCode::parameter);
}

TEST(Omega, TwoClustersForTwoCycle) {
  const auto om = omega_limit_approx(kTwoCycle, Seed::at(0.0), 200, 1000, 1.0);
  ASSERT_EQ(om.points.size(), 2u);
  EXPECT_NEAR(om.points[0], 4000.0 / 3.0, 1e-9);
  EXPECT_NEAR(om.points[1], 5000.0 / 3.0, 1e-9);
}

TEST(Omega, ChaoticClustersRefineInsideK) {
  const auto c = chaotic_params(2.0);
  const auto p = c.process();
  const Interval K = c.attractor_interval();
  const std::size_t expected[] = {6, 7, 8, 9, 10};
  const double res[] = {10, 5, 2.5, 1.25, 0.625};
  for (int i = 0; i < 5; ++i) {
    const auto om = omega_limit_approx(p, Seed::at(1450), 1000, 20'000, res[i]);
    EXPECT_EQ(om.points.size(), expected[i]) << res[i];
    for (std::size_t j = 0; j < om.points.size(); ++j) {
      EXPECT_TRUE(K.contains(om.points[j])) << om.points[j];
      if (j) {
        EXPECT_GT(om.points[j] - om.points[j - 1], res[i]);
      }
    }
  }
}

TEST(Omega, ResolutionMustBePositive) {
  EXPECT_EQ(code_of([] { omega_limit_approx(kTwoCycle, Seed::at(0), 10, 10, 0.0); }), ErrorCode::parameter);
}

TEST(Classify, TwoCycleIsPeriodicWithOneCycle) {
  const auto v = classify_dichotomy(kTwoCycle);
  EXPECT_EQ(v.kind, VerdictKind::periodic);
  ASSERT_EQ(v.cycles.size(), 1u);
  EXPECT_EQ(v.cycles[0].period, 2u);
  EXPECT_EQ(v.total_period(), 2u);
}

TEST(Classify, EqualDepositsHaveOneFixedPoint) {
  const auto v = classify_dichotomy(ProcessParams(-0.5, 500, 500, 700));
  EXPECT_EQ(v.kind, VerdictKind::periodic);
  ASSERT_EQ(v.cycles.size(), 1u);
  EXPECT_EQ(v.cycles[0].period, 1u);
}

TEST(Classify, ChaoticIsCantorLike) {
  const auto v = classify_dichotomy(chaotic_params(2.0).process());
  EXPECT_EQ(v.kind, VerdictKind::cantor_like);
  EXPECT_EQ(v.cluster_counts, (std::vector<std::size_t>{6, 7, 8, 9}));
  EXPECT_TRUE(v.cycles.empty());
}

TEST(Classify, TinyBudgetIsInconclusive) {
  ClassifyOptions o;
  o.cycle.max_iter = 3;
  EXPECT_EQ(classify_dichotomy(chaotic_params(2.0).process(), o).kind, VerdictKind::inconclusive);
}

TEST(Classify, NeverMoreThanTwoCycles) {
  for (double rho = 1100; rho <= 1900; rho += 37) {
    for (double v2 = 100; v2 <= 900; v2 += 200) {
      const auto v = classify_dichotomy(ProcessParams(-0.5, 1000, v2, rho));
      EXPECT_LE(v.cycles.size(), 2u) << rho << " " << v2;
    }
  }
}

TEST(Sensitivity, WideIntervalIsImmediate) {
  const auto c = chaotic_params(2.0);
  const auto rep = sensitivity_probe(c, 1500, 600, 100);
  EXPECT_TRUE(rep.found);
  EXPECT_LE(rep.witness_k, 3u);
  EXPECT_GE(rep.achieved_separation, 500.0);
  EXPECT_LE(std::abs(rep.witness_s0prime - 1500), 600.0);
}

TEST(Sensitivity, ClusterSeedsSeparateByGapLength) {
  const auto c = chaotic_params(2.0);
  const auto p = c.process();
  const auto om = omega_limit_approx(p, Seed::at(1450), 1000, 20'000, 0.625);
  for (double s0 : om.points) {
    const auto rep = sensitivity_probe(p, s0, 1e-8, c.gap_length(), 2000);
    EXPECT_TRUE(rep.found) << s0;
    EXPECT_GE(rep.achieved_separation, c.gap_length());
    EXPECT_LE(std::abs(rep.witness_s0prime - s0), 1e-8);
  }
}

// 500 b (1 - 1/b) = 500 is the length of K itself for b = 2; it is
// approached but never reached.
TEST(Sensitivity, QuotedConstantIsASupremum) {
  const auto c = chaotic_params(2.0);
  const auto om = omega_limit_approx(c.process(), Seed::at(1450), 1000, 20'000, 1.25);
  const auto rep = sensitivity_probe(c, om.points[0], 1e-6, 2000);
  EXPECT_FALSE(rep.found);
  EXPECT_GT(rep.deficit, 0.0L);
  EXPECT_LT(rep.deficit, 1e-6L);
  EXPECT_EQ(rep.iterations, 2000u);
}

TEST(Sensitivity, Errors) {
  const auto c = chaotic_params(2.0);
  EXPECT_EQ(code_of([&] { sensitivity_probe(c, 1500, 0.0, 10); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([&] { sensitivity_probe(c.process(), 1500, 1.0, -1.0, 10); }), ErrorCode::parameter);
}

TEST(Frequency, CountsAtN150) {
  const auto p = chaotic_params(2.0).process();
  const double seeds[] = {1450, 1380, 1023, 1900, 800};
  const std::size_t counts[] = {36, 35, 35, 35, 36};
  for (int i = 0; i < 5; ++i) {
    const auto rep = visit_frequency(p, seeds[i], {1400, 1600}, 150);
    EXPECT_EQ(rep.count, counts[i]) << seeds[i];
    EXPECT_EQ(rep.N, 150u);
    EXPECT_DOUBLE_EQ(rep.freq, counts[i] / 150.0);
  }
}

TEST(Frequency, LongRunMatchesPrediction) {
  const auto c = chaotic_params(2.0);
  const auto gs = build_gap_system(RotationParams::golden(), 2.0, 60);
  for (double s0 : {1450.0, 800.0}) {
    const auto rep = visit_frequency(c, gs, s0, {1400, 1600}, 100'000);
    EXPECT_EQ(rep.count, 23607u);
    ASSERT_TRUE(rep.predicted);
    EXPECT_LE(std::abs(rep.freq - rep.predicted->predicted), rep.predicted->truncation_error + 1e-4);
  }
}

TEST(Frequency, WholeLineAndErrors) {
  const auto rep = visit_frequency(kTwoCycle, 5.0, {0, std::numeric_limits<double>::infinity()}, 100);
  EXPECT_EQ(rep.count, 100u);
  EXPECT_EQ(code_of([] { visit_frequency(kTwoCycle, 5.0, {0, 1}, 0); }), ErrorCode::empty_request);
  EXPECT_EQ(code_of([] { visit_frequency(kTwoCycle, 5.0, {2, 1}, 10); }), ErrorCode::parameter);
}
