#include "savchaos/words.hpp"

#include <cmath>

#include "savchaos/error.hpp"

namespace savchaos {

BinaryWord::BinaryWord(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  for (auto d : digits_) {
    if (d > 1) fail(ErrorCode::domain, "binary word symbols must be 0 or 1");
  }
}

bool BinaryWord::is_prefix_of(const BinaryWord& other) const noexcept {
  if (size() > other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (digits_[i] != other.digits_[i]) return false;
  }
  return true;
}

std::string BinaryWord::to_string() const {
  std::string s;
  s.reserve(digits_.size());
  for (auto d : digits_) s.push_back(static_cast<char>('0' + d));
  return s;
}

namespace {

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  using wide = unsigned __int128;
  while (static_cast<wide>(r) * r > v) --r;
  while (static_cast<wide>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::uint64_t floor_golden_multiple(std::uint64_t n) {
  // n*phi = (n + sqrt(5 n^2)) / 2 and sqrt(5 n^2) is irrational for n > 0,
  // so flooring the integer square root first does not change the result.
  if (n > kMaxFibonacciLength + 1) {
    fail(ErrorCode::domain, "floor_golden_multiple: argument too large");
  }
  return (n + isqrt(5 * n * n)) / 2;
}

BinaryWord fibonacci_word(std::size_t n) {
  if (n == 0) fail(ErrorCode::empty_request, "fibonacci_word: n must be at least 1");
  if (n > kMaxFibonacciLength) fail(ErrorCode::domain, "fibonacci_word: n too large");
  std::vector<std::uint8_t> digits(n);
  std::uint64_t prev = floor_golden_multiple(1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t next = floor_golden_multiple(i + 2);
    digits[i] = static_cast<std::uint8_t>(2 + prev - next);
    prev = next;
  }
  return BinaryWord(std::move(digits));
}

RotationParams::RotationParams(double alpha) : alpha_(alpha), boundary_(1.0 - alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    fail(ErrorCode::parameter, "rotation angle must lie in (0,1)");
  }
}

RotationParams RotationParams::golden() {
  return RotationParams((3.0 - std::sqrt(5.0)) / 2.0);
}

double rotation_step(double x, const RotationParams& rp) {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::domain, "rotation_step: x outside [0,1]");
  if (x < rp.boundary()) return x + rp.alpha();
  const double y = x + rp.alpha() - 1.0;
  return y < 0.0 ? 0.0 : y;
}

double rotation_orbit_point(const RotationParams& rp, double x0, std::uint64_t n) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) fail(ErrorCode::domain, "rotation orbit: x0 outside [0,1]");
  if (n == 0) return x0;
  const long double a = rp.alpha();
  long double y = std::fmod(static_cast<long double>(x0) + static_cast<long double>(n) * a, 1.0L);
  return static_cast<double>(y);
}

std::vector<std::uint8_t> rotation_coding(const RotationParams& rp, double x0, std::size_t n) {
  if (n == 0) fail(ErrorCode::empty_request, "rotation_coding: n must be at least 1");
  std::vector<std::uint8_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = rotation_orbit_point(rp, x0, k) < rp.boundary() ? 1 : 2;
  }
  return out;
}

}  // namespace savchaos
