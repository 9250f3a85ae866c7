#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstddef>
#include <cstdint>
#include <span>

namespace savchaos::detail {

/// 128-bit significand software float.
using Wide = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// sum_{k} word[k] b^{-k}, by Horner from the last term.
template <class Real>
Real word_series(const Real& b, std::span<const std::uint8_t> word) {
  Real s = 0;
  for (std::size_t k = word.size(); k-- > 0;) {
    s = s / b + static_cast<int>(word[k]);
  }
  return s;
}

/// delta = 1 - 1/b + (1/b)(1 - 1/b) * series
template <class Real>
Real chaotic_delta(const Real& b, const Real& series) {
  const Real inv = Real(1) / b;
  return 1 - inv + inv * (1 - inv) * series;
}

/// rho = 500b/(b-1) * (b(1 - delta) + 1)
template <class Real>
Real chaotic_rho(const Real& b, const Real& delta) {
  return Real(500) * b / (b - 1) * (b * (1 - delta) + 1);
}

}  // namespace savchaos::detail
