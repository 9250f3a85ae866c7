#include "savchaos/process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "savchaos/error.hpp"
#include "savchaos/words.hpp"
#include "wide.hpp"

namespace savchaos {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

ProcessParams::ProcessParams(double r, double v1, double v2, double rho)
    : r_(r), v1_(v1), v2_(v2), rho_(rho) {
  if (!(finite(r) && r > -1.0 && r < 0.0)) {
    fail(ErrorCode::parameter, "rate r must lie in (-1, 0)");
  }
  if (!(finite(v1) && v1 >= 0.0) || !(finite(v2) && v2 >= 0.0)) {
    fail(ErrorCode::parameter, "deposits v1, v2 must be finite and non-negative");
  }
  if (!(finite(rho) && rho > 0.0)) {
    fail(ErrorCode::parameter, "threshold rho must be positive");
  }
}

double step(const ProcessParams& p, double x) {
  if (!(x >= 0.0) || std::isinf(x)) fail(ErrorCode::domain, "step: balance must be finite and >= 0");
  return (1.0 + p.r()) * x + p.deposit_at(x);
}

double closed_form(double v, double r, double s0, std::size_t n) {
  if (r == 0.0) fail(ErrorCode::singular_rate, "closed_form: r = 0 divides by zero");
  if (!(r > -1.0 && r < 0.0)) fail(ErrorCode::parameter, "closed_form: r must lie in (-1, 0)");
  if (!(v >= 0.0) || !(s0 >= 0.0)) fail(ErrorCode::domain, "closed_form: v and s0 must be >= 0");
  const double g = std::pow(1.0 + r, static_cast<double>(n));
  return g * s0 + (g - 1.0) / r * v;
}

double limit_value(double v, double r) {
  if (!(r > -1.0 && r < 0.0)) fail(ErrorCode::parameter, "limit_value: r must lie in (-1, 0)");
  return -v / r;
}

double absorbing_bound(const ProcessParams& p) {
  const double vmax = std::max(p.v1(), p.v2());
  if (vmax <= 0.0) fail(ErrorCode::degenerate_process, "absorbing_bound: v1 = v2 = 0");
  return -2.0 * vmax / p.r();
}

std::size_t absorption_steps(const ProcessParams& p, double s0) {
  const double m = absorbing_bound(p);
  if (s0 <= m) return 0;
  const double k = std::ceil(std::log(m / (2.0 * s0)) / std::log(1.0 + p.r()));
  return static_cast<std::size_t>(std::max(0.0, k)) + 1;
}

NormalizedMap NormalizedMap::make(double b, double delta) {
  if (!(finite(b) && b > 1.0)) fail(ErrorCode::parameter, "normalized map: b must exceed 1");
  const double x1 = b * (1.0 - delta);
  if (!(x1 > 0.0 && x1 < 1.0)) {
    fail(ErrorCode::parameter, "normalized map: breakpoint b(1-delta) must lie in (0,1)");
  }
  return NormalizedMap{b, delta, x1};
}

double normalized_step(const NormalizedMap& m, double x) {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::domain, "normalized_step: x outside [0,1]");
  const double y = x < m.breakpoint ? x / m.b + m.delta : x / m.b + m.delta - 1.0;
  return std::clamp(y, 0.0, 1.0);
}

ProcessParams ChaoticConfig::process() const {
  ProcessParams p(r(), kChaoticDepositBelow, kChaoticDepositAbove, rho);
  p.chaotic_b_ = b;
  return p;
}

Interval ChaoticConfig::attractor_interval() const noexcept {
  const double c = 500.0 * b / (b - 1.0);
  return {c * (2.0 - delta), c * (3.0 - delta - 1.0 / b)};
}

Interval ChaoticConfig::central_gap() const noexcept {
  return {conjugacy_L_inverse(*this, 1.0 / b + delta - 1.0), conjugacy_L_inverse(*this, delta)};
}

ChaoticConfig chaotic_params(double b, double precision_target) {
  using detail::Wide;
  if (!(finite(b) && b > 1.0)) fail(ErrorCode::parameter, "chaotic_params: b must exceed 1");
  if (!(finite(precision_target) && precision_target > 0.0)) {
    fail(ErrorCode::parameter, "chaotic_params: precision_target must be positive");
  }

  const Wide wb = b;
  const Wide inv = Wide(1) / wb;
  // Tail of the delta series after term K: (1/b)(1 - 1/b) b^-K / (b - 1).
  // rho moves by 500 b^2/(b-1) per unit of delta.
  const Wide rho_gain = Wide(500) * wb * wb / (wb - 1);
  Wide tail = inv * (1 - inv) / (wb - 1);
  std::size_t order = 0;
  while (rho_gain * tail > precision_target) {
    if (++order > kMaxTruncationOrder) {
      fail(ErrorCode::precision_unreachable,
           "chaotic_params: truncation order would exceed " + std::to_string(kMaxTruncationOrder));
    }
    tail *= inv;
  }

  const BinaryWord word = fibonacci_word(order + 1);
  const Wide delta = detail::chaotic_delta(wb, detail::word_series(wb, word.digits()));
  const Wide rho = detail::chaotic_rho(wb, delta);

  ChaoticConfig c;
  c.b = b;
  c.delta = static_cast<double>(delta);
  c.rho = static_cast<double>(rho);
  c.truncation_order = order;
  double bound = static_cast<double>(tail);
  if (Wide(bound) < tail) bound = std::nextafter(bound, INFINITY);
  c.truncation_bound = bound;
  return c;
}

double conjugacy_L(const ChaoticConfig& c, double x) {
  return x / 500.0 + c.b * (c.delta - 2.0) / (c.b - 1.0);
}

double conjugacy_L_inverse(const ChaoticConfig& c, double y) {
  return 500.0 * (y - c.b * (c.delta - 2.0) / (c.b - 1.0));
}

}  // namespace savchaos
