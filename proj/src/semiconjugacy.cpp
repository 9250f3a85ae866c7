#include "savchaos/semiconjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "savchaos/error.hpp"

namespace savchaos {

namespace {

// Error of L(x) = x/500 + const in binary64 for balances of order 10^3..10^4.
constexpr double kMappingSlack = 1e-15;

}  // namespace

const GapEntry& GapSystem::gap(std::size_t k) const {
  if (k == 0 || k > entries_.size()) fail(ErrorCode::domain, "gap index outside 1..K");
  return entries_[by_index_[k - 1]];
}

std::optional<std::size_t> GapSystem::find(long double x) const noexcept {
  auto it = std::upper_bound(entries_.begin(), entries_.end(), x,
                             [](long double v, const GapEntry& e) { return v < e.inf; });
  if (it == entries_.begin()) return std::nullopt;
  --it;
  if (x > it->sup()) return std::nullopt;
  return static_cast<std::size_t>(it - entries_.begin());
}

GapSystem build_gap_system(const RotationParams& rotation, double b, std::size_t order) {
  if (order == 0) fail(ErrorCode::empty_request, "build_gap_system: order must be at least 1");
  if (order > kMaxGapOrder) {
    fail(ErrorCode::precision_unreachable, "build_gap_system: order exceeds cap");
  }
  if (!(std::isfinite(b) && b > 1.0)) fail(ErrorCode::parameter, "build_gap_system: b must exceed 1");

  GapSystem gs;
  gs.rotation_ = rotation;
  gs.b_ = b;
  const long double inv = 1.0L / static_cast<long double>(b);
  const long double alpha = rotation.alpha();

  std::vector<GapEntry> raw(order);
  long double eps = 1.0L - inv;
  for (std::size_t k = 1; k <= order; ++k) {
    raw[k - 1].k = k;
    raw[k - 1].p = std::fmod(static_cast<long double>(k) * alpha, 1.0L);
    raw[k - 1].eps = eps;
    eps *= inv;
  }
  gs.tail_mass_ = std::pow(inv, static_cast<long double>(order));

  std::sort(raw.begin(), raw.end(), [](const GapEntry& a, const GapEntry& b) { return a.p < b.p; });
  long double acc = 0;
  for (auto& e : raw) {
    e.inf = acc;
    acc += e.eps;
  }
  gs.by_index_.resize(order);
  for (std::size_t i = 0; i < order; ++i) gs.by_index_[raw[i].k - 1] = i;
  gs.entries_ = std::move(raw);
  return gs;
}

double h_evaluate(const GapSystem& gs, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const auto& es = gs.entries();
  auto it = std::upper_bound(es.begin(), es.end(), static_cast<long double>(x),
                             [](long double v, const GapEntry& e) { return v < e.inf; });
  if (it == es.begin()) return 0.0;
  return static_cast<double>(std::prev(it)->p);
}

namespace {

HBracket bracket_with_slack(const GapSystem& gs, double x, long double slack) {
  if (x <= 0.0) return {0.0, 0.0};
  if (x >= 1.0) return {1.0, 1.0};
  const auto& es = gs.entries();
  const long double lx = x;
  const long double shift = gs.tail_mass() + slack;
  // Untruncated gaps sit in [inf, sup + tail_mass]; h(x) >= p_k once the
  // gap surely starts left of x and h(x) <= p_k while it surely ends right of x.
  auto lo_it = std::upper_bound(es.begin(), es.end(), lx,
                                [&](long double v, const GapEntry& e) { return v < e.inf + shift; });
  auto hi_it = std::lower_bound(es.begin(), es.end(), lx,
                                [&](const GapEntry& e, long double v) { return e.sup() - slack < v; });
  HBracket br;
  br.lo = lo_it == es.begin() ? 0.0 : static_cast<double>(std::prev(lo_it)->p);
  br.hi = hi_it == es.end() ? 1.0 : static_cast<double>(hi_it->p);
  if (br.hi < br.lo) br.hi = br.lo;
  return br;
}

}  // namespace

HBracket h_bracket(const GapSystem& gs, double x) { return bracket_with_slack(gs, x, 0.0L); }

std::optional<double> semiconjugacy_residual(const GapSystem& gs, const NormalizedMap& m, double x) {
  if (gs.b() != m.b) fail(ErrorCode::parameter, "semiconjugacy_residual: gap system and map disagree on b");
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::domain, "semiconjugacy_residual: x outside [0,1]");
  if (std::abs(static_cast<long double>(x) - m.breakpoint) < gs.tail_mass()) return std::nullopt;
  if (!gs.find(x)) return std::nullopt;
  const double lhs = h_evaluate(gs, normalized_step(m, x));
  const double rhs = rotation_step(h_evaluate(gs, x), gs.rotation());
  return std::abs(lhs - rhs);
}

double breakpoint_from_gaps(const GapSystem& gs) {
  const long double boundary = gs.rotation().boundary();
  long double sum = 0;
  for (const auto& e : gs.entries()) {
    if (e.p < boundary) sum += e.eps;
  }
  return static_cast<double>(sum);
}

FrequencyPrediction predict_frequency(const GapSystem& gs, const ChaoticConfig& c, Interval J) {
  if (gs.b() != c.b) fail(ErrorCode::parameter, "predict_frequency: gap system and config disagree on b");
  if (!(J.lo <= J.hi)) fail(ErrorCode::parameter, "predict_frequency: interval must satisfy lo <= hi");

  FrequencyPrediction out;
  out.J = J;
  const Interval K = c.attractor_interval();
  const double lo = std::max(J.lo, K.lo);
  const double hi = std::min(J.hi, K.hi);
  if (!(lo < hi)) return out;

  const bool from_start = lo <= K.lo;
  const bool to_end = hi >= K.hi;
  const double a = conjugacy_L(c, lo);
  const double b = conjugacy_L(c, hi);
  const double ha = from_start ? 0.0 : h_evaluate(gs, a);
  const double hb = to_end ? 1.0 : h_evaluate(gs, b);
  const double wa = from_start ? 0.0 : bracket_with_slack(gs, a, kMappingSlack).width();
  const double wb = to_end ? 0.0 : bracket_with_slack(gs, b, kMappingSlack).width();

  out.predicted = std::clamp(hb - ha, 0.0, 1.0);
  out.truncation_error = wa + wb + 2.0 * static_cast<double>(gs.tail_mass());
  return out;
}

}  // namespace savchaos
