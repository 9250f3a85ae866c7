#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "savchaos/words.hpp"
#include "test_util.hpp"

using namespace savchaos;

namespace {

// Fixed point of 0 -> 01, 1 -> 0, independent of the floor formula.
std::string by_substitution(std::size_t n) {
  std::string w = "0";
  while (w.size() < n) {
    std::string next;
    for (char c : w) next += c == '0' ? "01" : "0";
    w = next;
  }
  return w.substr(0, n);
}

}  // namespace

TEST(FibonacciWord, First51Symbols) {
  EXPECT_EQ(fibonacci_word(51).to_string(), "010010100100101001010010010100100101001010010010100");
}

TEST(FibonacciWord, MatchesSubstitutionFixedPoint) {
  for (std::size_t n : {1u, 2u, 3u, 13u, 89u, 1000u, 100000u}) {
    EXPECT_EQ(fibonacci_word(n).to_string(), by_substitution(n)) << n;
  }
}

TEST(FibonacciWord, PrefixesAreConsistent) {
  const auto small = fibonacci_word(144);
  const auto big = fibonacci_word(233);
  EXPECT_TRUE(small.is_prefix_of(big));
  EXPECT_FALSE(big.is_prefix_of(small));
}

TEST(FibonacciWord, Errors) {
  EXPECT_EQ(code_of([] { fibonacci_word(0); }), ErrorCode::empty_request);
  EXPECT_EQ(code_of([] { fibonacci_word(kMaxFibonacciLength + 1); }), ErrorCode::domain);
  EXPECT_EQ(code_of([] { BinaryWord({0, 1, 2}); }), ErrorCode::domain);
}

TEST(FloorGolden, KnownValues) {
  EXPECT_EQ(floor_golden_multiple(0), 0u);
  EXPECT_EQ(floor_golden_multiple(1), 1u);
  EXPECT_EQ(floor_golden_multiple(10), 16u);
  EXPECT_EQ(floor_golden_multiple(1'000'000'000), 1'618'033'988u);
}

TEST(FloorGolden, AgreesWithLongDoubleForSmallN) {
  const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
  for (std::uint64_t n = 0; n < 100'000; ++n) {
    ASSERT_EQ(floor_golden_multiple(n), static_cast<std::uint64_t>(std::floor(n * phi))) << n;
  }
}

TEST(Rotation, GoldenCodingMinusOneIsFibonacciWord) {
  const auto rp = RotationParams::golden();
  const std::size_t n = 2000;
  const auto code = rotation_coding(rp, rp.alpha(), n);
  const auto word = fibonacci_word(n);
  for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(code[i] - 1, word[i]) << i;
}

TEST(Rotation, StepWrapsAtBoundary) {
  const RotationParams rp(0.25);
  EXPECT_DOUBLE_EQ(rotation_step(0.5, rp), 0.75);
  EXPECT_DOUBLE_EQ(rotation_step(0.75, rp), 0.0);
  EXPECT_DOUBLE_EQ(rotation_step(0.9, rp), 0.15000000000000002);
  EXPECT_EQ(rotation_coding(rp, 0.5, 3), (std::vector<std::uint8_t>{1, 2, 1}));
}

TEST(Rotation, OrbitPointIsDirectNotAccumulated) {
  const auto rp = RotationParams::golden();
  const double direct = rotation_orbit_point(rp, 0.0, 1'000'000);
  const long double expect = std::fmod(1'000'000.0L * static_cast<long double>(rp.alpha()), 1.0L);
  EXPECT_NEAR(direct, static_cast<double>(expect), 1e-15);
  EXPECT_EQ(rotation_orbit_point(rp, 0.3, 0), 0.3);
}

TEST(Rotation, Errors) {
  EXPECT_EQ(code_of([] { RotationParams(0.0); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { RotationParams(1.0); }), ErrorCode::parameter);
  EXPECT_EQ(code_of([] { rotation_step(1.5, RotationParams::golden()); }), ErrorCode::domain);
  EXPECT_EQ(code_of([] { rotation_coding(RotationParams::golden(), 0.1, 0); }), ErrorCode::empty_request);
}
