#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "savchaos/orbit.hpp"
#include "test_util.hpp"

using namespace savchaos;

namespace {

std::size_t count_in(const std::vector<double>& xs, double lo, double hi) {
  return std::count_if(xs.begin(), xs.end(), [&](double x) { return x >= lo && x <= hi; });
}

}  // namespace

TEST(Arithmetic, ParseAndResolve) {
  EXPECT_EQ(parse_arithmetic("adaptive"), Arithmetic::adaptive);
  EXPECT_FALSE(parse_arithmetic("quad"));
  EXPECT_EQ(resolve(Arithmetic::automatic, ProcessParams(-0.5, 1, 2, 3)), Arithmetic::binary64);
  EXPECT_EQ(resolve(Arithmetic::automatic, chaotic_params(2.0).process()), Arithmetic::adaptive);
  EXPECT_EQ(resolve(Arithmetic::extended, chaotic_params(2.0).process()), Arithmetic::extended);
  EXPECT_EQ(adaptive_precision_bits(chaotic_params(2.0).process(), 1000), 1064);
  EXPECT_EQ(adaptive_precision_bits(chaotic_params(2.0).process(), 10), 128);
}

TEST(Simulate, Binary64ReplaysExactly) {
  const ProcessParams p(-0.3, 700, 1200, 2500);
  const auto ts = simulate(p, 10.0, 1000);
  ASSERT_EQ(ts.values.size(), 1001u);
  EXPECT_EQ(ts.arithmetic, Arithmetic::binary64);
  EXPECT_EQ(replay_defect(p, ts), 0.0);
  EXPECT_EQ(simulate(p, 42.0, 0).values, std::vector<double>{42.0});
}

TEST(Simulate, RejectsNegativeSeed) {
  EXPECT_EQ(code_of([] { simulate(ProcessParams(-0.5, 1, 1, 1), -1.0, 3); }), ErrorCode::domain);
}

// Counts from an exact fixed-point integer iteration with N + 64 bits.
TEST(Simulate, ChaoticVisitCountsAtN150) {
  const auto p = chaotic_params(2.0).process();
  const double seeds[] = {1450, 1380, 1023, 1900, 800};
  const std::size_t in_J[] = {36, 35, 35, 35, 36};
  const std::size_t above[] = {92, 92, 92, 93, 92};
  for (int i = 0; i < 5; ++i) {
    const auto ts = simulate(p, seeds[i], 149);
    EXPECT_EQ(count_in(ts.values, 1400, 1600), in_J[i]) << seeds[i];
    const auto high = std::count_if(ts.values.begin(), ts.values.end(), [](double x) { return x > 1600; });
    EXPECT_EQ(static_cast<std::size_t>(high), above[i]) << seeds[i];
  }
}

// binary64 collapses the chaotic orbit onto an exact cycle; the adaptive
// engine does not. Rounded adaptive values still repeat at Fibonacci lags,
// since distinct points of the attractor can be closer than one ulp.
TEST(Simulate, Binary64FallsIntoSpuriousCycle) {
  const auto p = chaotic_params(2.0).process();
  const auto b64 = simulate(p, 1450, 400, Arithmetic::binary64).values;
  for (std::size_t n = 60; n + 34 <= 400; ++n) ASSERT_EQ(b64[n], b64[n + 34]) << n;
  for (std::size_t lag = 1; lag < 34; ++lag) EXPECT_NE(b64[400], b64[400 - lag]) << lag;
}

TEST(Simulate, EnginesAgreeBeforeTheyDiverge) {
  const auto p = chaotic_params(2.0).process();
  const auto b64 = simulate(p, 1450, 30, Arithmetic::binary64).values;
  const auto ada = simulate(p, 1450, 30, Arithmetic::adaptive).values;
  for (std::size_t n = 0; n <= 30; ++n) EXPECT_NEAR(b64[n], ada[n], 1e-9) << n;
}

TEST(RunOrbit, CriticalSeedsAndEarlyStop) {
  const ProcessParams p(-0.5, 1000, 500, 1500);
  std::vector<double> left, right;
  run_orbit(p, Seed::critical_left(), 3, Arithmetic::binary64, [&](const OrbitPoint& pt) {
    left.push_back(pt.value);
    return true;
  });
  run_orbit(p, Seed::critical_right(), 100, Arithmetic::adaptive, [&](const OrbitPoint& pt) {
    right.push_back(pt.value);
    return pt.n < 1;
  });
  EXPECT_EQ(left, (std::vector<double>{1750, 1375, 1687.5, 1343.75}));
  EXPECT_EQ(right, (std::vector<double>{1250, 1625}));
}

TEST(RunOrbit, OffsetTracksValue) {
  const auto p = chaotic_params(2.0).process();
  double worst = 0;
  run_orbit(p, Seed::at(1450), 2000, Arithmetic::adaptive, [&](const OrbitPoint& pt) {
    worst = std::max(worst, static_cast<double>(std::abs(pt.offset - (pt.value - p.rho()))));
    return true;
  });
  EXPECT_LT(worst, 1e-9);
}
