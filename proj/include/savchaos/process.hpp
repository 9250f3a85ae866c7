#pragma once

#include <cstddef>
#include <optional>

namespace savchaos {

/// Closed interval [lo, hi] of balances or normalized coordinates.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  double length() const noexcept { return hi - lo; }
};

/// Parameters of the savings process S_n = (1+r) S_{n-1} + d_n, where the
/// deposit d_n is v1 below the threshold rho and v2 at or above it.
class ProcessParams {
 public:
  /// Requires -1 < r < 0, v1 >= 0, v2 >= 0, rho > 0.
  ProcessParams(double r, double v1, double v2, double rho);

  double r() const noexcept { return r_; }
  double v1() const noexcept { return v1_; }
  double v2() const noexcept { return v2_; }
  double rho() const noexcept { return rho_; }
  double slope() const noexcept { return 1.0 + r_; }
  double deposit_at(double x) const noexcept { return x < rho_ ? v1_ : v2_; }

  /// Set when the parameters were derived from b by chaotic_params(); lets
  /// the high precision orbit engines rebuild r and rho at their own
  /// working precision instead of starting from the rounded doubles.
  std::optional<double> chaotic_b() const noexcept { return chaotic_b_; }

  friend bool operator==(const ProcessParams&, const ProcessParams&) = default;

 private:
  friend struct ChaoticConfig;

  double r_;
  double v1_;
  double v2_;
  double rho_;
  std::optional<double> chaotic_b_;
};

/// One month of the process: (1+r)x + v1 if x < rho, else (1+r)x + v2.
double step(const ProcessParams& p, double x);

/// (1+r)^n s0 + ((1+r)^n - 1)/r * v, the solution when v1 = v2 = v.
double closed_form(double v, double r, double s0, std::size_t n);

/// -v/r, the limit of closed_form as n grows.
double limit_value(double v, double r);

/// M = -2 max(v1,v2) / r; step maps [0, M] into itself.
double absorbing_bound(const ProcessParams& p);

/// Number of steps after which an orbit from s0 is guaranteed inside [0, M].
std::size_t absorption_steps(const ProcessParams& p, double s0);

/// g(x) = x/b + delta on [0, x1), x/b + delta - 1 on [x1, 1], x1 = b(1 - delta).
struct NormalizedMap {
  double b = 2.0;
  double delta = 0.5;
  double breakpoint = 1.0;

  static NormalizedMap make(double b, double delta);
};

double normalized_step(const NormalizedMap& m, double x);

inline constexpr double kChaoticDepositBelow = 1000.0;
inline constexpr double kChaoticDepositAbove = 500.0;
inline constexpr std::size_t kMaxTruncationOrder = 10'000;

/// Chaotic parameter set built from b > 1 and the Fibonacci word.
struct ChaoticConfig {
  double b = 2.0;
  double delta = 0.0;
  double rho = 0.0;
  /// Index of the last series term included (terms 0..K).
  std::size_t truncation_order = 0;
  /// Upper bound on the omitted tail of delta, rounded upward.
  double truncation_bound = 0.0;

  double r() const noexcept { return 1.0 / b - 1.0; }
  ProcessParams process() const;
  NormalizedMap normalized_map() const { return NormalizedMap::make(b, delta); }

  /// 500 b (1 - 1/b), the sensitivity constant quoted for the construction.
  double eta() const noexcept { return 500.0 * b * (1.0 - 1.0 / b); }
  /// 500 (1 - 1/b), the length of the gap K \ f(K).
  double gap_length() const noexcept { return 500.0 * (1.0 - 1.0 / b); }

  /// K = [500b/(b-1) (2 - delta), 500b/(b-1) (3 - delta - 1/b)], mapped onto
  /// [0,1] by conjugacy_L.
  Interval attractor_interval() const noexcept;
  /// L^{-1} of the gap (1/b + delta - 1, delta) left by f(K) inside K.
  Interval central_gap() const noexcept;
};

/// Derives delta and rho from b with enough series terms that the tail,
/// propagated to rho, is at most precision_target.
ChaoticConfig chaotic_params(double b, double precision_target = 1e-13);

/// L(x) = x/500 + b(delta - 2)/(b - 1).
double conjugacy_L(const ChaoticConfig& c, double x);
double conjugacy_L_inverse(const ChaoticConfig& c, double y);

}  // namespace savchaos
