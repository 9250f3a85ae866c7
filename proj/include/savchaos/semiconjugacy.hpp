#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "savchaos/process.hpp"
#include "savchaos/words.hpp"

namespace savchaos {

/// One gap G_k of the truncated family: it has length eps_k and h maps all
/// of it to the rotation orbit point p_k = T^k(0).
struct GapEntry {
  std::size_t k = 0;
  long double p = 0;    // T^k(0)
  long double eps = 0;  // (1 - 1/b) b^{-(k-1)}
  long double inf = 0;  // sum of eps_l over l <= K with p_l < p_k

  long double sup() const noexcept { return inf + eps; }
};

/// Truncation G_1..G_K of the gap system realising the semiconjugacy h
/// between the normalized map g and the rotation T. Entries are sorted by
/// position, which is also the order of their rotation points.
class GapSystem {
 public:
  const RotationParams& rotation() const noexcept { return rotation_; }
  double b() const noexcept { return b_; }
  std::size_t order() const noexcept { return entries_.size(); }
  /// b^{-K}: total length not covered by G_1..G_K.
  long double tail_mass() const noexcept { return tail_mass_; }

  /// Sorted by inf.
  const std::vector<GapEntry>& entries() const noexcept { return entries_; }
  /// Entry for gap index k (1-based).
  const GapEntry& gap(std::size_t k) const;
  /// Position of the gap containing x, if any.
  std::optional<std::size_t> find(long double x) const noexcept;

 private:
  friend GapSystem build_gap_system(const RotationParams&, double, std::size_t);

  RotationParams rotation_ = RotationParams::golden();
  double b_ = 2.0;
  long double tail_mass_ = 1;
  std::vector<GapEntry> entries_;
  std::vector<std::size_t> by_index_;  // k-1 -> position in entries_
};

inline constexpr std::size_t kMaxGapOrder = 10'000;

GapSystem build_gap_system(const RotationParams& rotation, double b, std::size_t order);

/// Left-continuous evaluation of h: p_k inside G_k, otherwise the largest
/// p_k of the gaps to the left. h(0) = 0, h(1) = 1.
double h_evaluate(const GapSystem& gs, double x);

/// Interval guaranteed to contain the untruncated h(x), accounting for the
/// omitted gaps and for the up-to-tail_mass shift of the truncated ones.
struct HBracket {
  double lo = 0.0;
  double hi = 1.0;
  double width() const noexcept { return hi - lo; }
};
HBracket h_bracket(const GapSystem& gs, double x);

/// |h(g(x)) - T(h(x))|, or nullopt when x is inside the exclusion band of
/// width tail_mass around the breakpoint or outside every truncated gap.
std::optional<double> semiconjugacy_residual(const GapSystem& gs, const NormalizedMap& m, double x);

/// Sum of eps_k over p_k in [0, 1 - alpha), which should equal b(1 - delta).
double breakpoint_from_gaps(const GapSystem& gs);

struct FrequencyPrediction {
  Interval J;
  double predicted = 0.0;
  double truncation_error = 0.0;
};

/// length(h(L(J))) for the part of J inside the attractor interval K.
FrequencyPrediction predict_frequency(const GapSystem& gs, const ChaoticConfig& c, Interval J);

}  // namespace savchaos
