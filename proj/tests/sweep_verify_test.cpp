#include <gtest/gtest.h>

#include <cmath>
#include <tuple>

#include "savchaos/sweep.hpp"
#include "savchaos/verify.hpp"
#include "test_util.hpp"

using namespace savchaos;

TEST(SweepAxis, Values) {
  EXPECT_EQ((SweepAxis{1, 2, 0.5}.values()), (std::vector<double>{1, 1.5, 2}));
  EXPECT_EQ((SweepAxis{3, 3, 1}.values()), (std::vector<double>{3}));
  EXPECT_EQ((SweepAxis{0, 0.3, 0.1}.values()).size(), 4u);
  EXPECT_EQ(code_of([] { SweepAxis{2, 1, 1}.values(); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { SweepAxis{1, 2, 0}.values(); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { SweepAxis{1, INFINITY, 1}.values(); }), ErrorCode::parameter);
}

TEST(Sweep, SingleCellMatchesClassify) {
  SweepSpec s{{-0.5, -0.5, 1}, {1000, 1000, 1}, {500, 500, 1}, {1500, 1500, 1}, {}, 1};
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 1u);
  const auto v = classify_dichotomy(ProcessParams(-0.5, 1000, 500, 1500));
  EXPECT_EQ(rows[0].verdict, v.kind);
  EXPECT_EQ(rows[0].total_period, v.total_period());
}

TEST(Sweep, OrderIsLexicographicAndThreadIndependent) {
  SweepSpec s{{-0.6, -0.4, 0.1}, {1000, 1000, 1}, {300, 500, 200}, {1200, 1800, 200}, {}, 1};
  const auto one = run_sweep(s);
  s.threads = 4;
  const auto four = run_sweep(s);
  ASSERT_EQ(one.size(), 3u * 2u * 4u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].verdict, four[i].verdict);
    EXPECT_EQ(one[i].total_period, four[i].total_period);
    EXPECT_EQ(one[i].rho, four[i].rho);
    if (i) {
      const auto& a = one[i - 1];
      const auto& b = one[i];
      EXPECT_TRUE(std::tie(a.r, a.v1, a.v2, a.rho) < std::tie(b.r, b.v1, b.v2, b.rho));
    }
  }
}

TEST(Sweep, InvalidCellIsRejectedBeforeRunning) {
  SweepSpec s{{-0.5, 0.5, 0.5}, {1000, 1000, 1}, {500, 500, 1}, {1500, 1500, 1}, {}, 1};
  EXPECT_EQ(code_of([&] { run_sweep(s); }), ErrorCode::parameter);
}

TEST(Verify, ZeroToleranceFails) {
  VerifyOptions o;
  o.tol = 0.0;
  std::size_t failed = 0;
  for (const auto& r : run_verify(o)) failed += !r.passed;
  EXPECT_GT(failed, 0u);
}

TEST(Verify, CoarseTruncationFlagsResidual) {
  VerifyOptions o;
  o.gap_order = 5;
  bool flagged = false;
  for (const auto& r : run_verify(o)) {
    if (r.module == "semiconjugacy" && r.name.find("residual") != std::string::npos) flagged = !r.passed;
  }
  EXPECT_TRUE(flagged);
}
