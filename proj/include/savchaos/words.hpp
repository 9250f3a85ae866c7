#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace savchaos {

/// Finite word over {0,1}.
class BinaryWord {
 public:
  BinaryWord() = default;
  explicit BinaryWord(std::vector<std::uint8_t> digits);

  std::size_t size() const noexcept { return digits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  std::span<const std::uint8_t> digits() const noexcept { return digits_; }

  bool is_prefix_of(const BinaryWord& other) const noexcept;
  std::string to_string() const;

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

/// Largest n accepted by fibonacci_word (keeps 5(n+1)^2 inside 64 bits).
inline constexpr std::size_t kMaxFibonacciLength = 1'000'000'000;

/// floor(n * golden ratio), exact for n <= kMaxFibonacciLength + 1.
std::uint64_t floor_golden_multiple(std::uint64_t n);

/// First n symbols of the Fibonacci word, digit i = 2 + floor((i+1)phi) - floor((i+2)phi).
/// Uses integer square roots, so every floor is exact.
BinaryWord fibonacci_word(std::size_t n);

/// Rotation x -> x + alpha (mod 1) on [0,1], split at 1 - alpha.
class RotationParams {
 public:
  explicit RotationParams(double alpha);

  /// alpha = (3 - sqrt 5) / 2 = 2 - phi.
  static RotationParams golden();

  double alpha() const noexcept { return alpha_; }
  /// Left endpoint of the second branch; belongs to that branch.
  double boundary() const noexcept { return boundary_; }

 private:
  double alpha_;
  double boundary_;
};

double rotation_step(double x, const RotationParams& rp);

/// x0 + n*alpha reduced mod 1, evaluated directly rather than by repeated
/// addition.
double rotation_orbit_point(const RotationParams& rp, double x0, std::uint64_t n);

/// Symbol k is 1 when T^k(x0) lies in [0, 1-alpha), else 2.
std::vector<std::uint8_t> rotation_coding(const RotationParams& rp, double x0, std::size_t n);

}  // namespace savchaos
