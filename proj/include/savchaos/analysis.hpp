#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "savchaos/orbit.hpp"
#include "savchaos/process.hpp"
#include "savchaos/semiconjugacy.hpp"

namespace savchaos {

// ---------------------------------------------------------------------------
// Cycle detection

enum class CycleStatus {
  found,
  not_found,     // budget covered absorption, settling and 4 * max_period steps
  inconclusive,  // budget too small to decide
};

const char* to_string(CycleStatus s) noexcept;

struct CycleOptions {
  std::size_t max_iter = 100'000;
  double tol = 1e-9;
  std::size_t max_period = 1000;
  Arithmetic arithmetic = Arithmetic::automatic;
};

struct CycleReport {
  CycleStatus status = CycleStatus::inconclusive;
  std::size_t period = 0;
  std::vector<double> cycle_points;  // one period, in orbit order
  std::size_t transient_length = 0;  // first index of the sustained recurrence
  double residual = 0.0;             // max |S_{n+N} - S_n| over the reported period

  bool found() const noexcept { return status == CycleStatus::found; }
};

/// Searches for the smallest N <= max_period with |S_{n+N} - S_n| <= tol for
/// 3N consecutive n.
CycleReport detect_cycle(const ProcessParams& p, const Seed& seed, const CycleOptions& opt = {});

/// True when both reports describe the same periodic orbit within tol.
bool same_cycle(const CycleReport& a, const CycleReport& b, double tol);

// ---------------------------------------------------------------------------
// Omega-limit approximation

struct OmegaApprox {
  std::vector<double> points;  // median sample of each cluster, ascending
  double resolution = 0.0;
  std::size_t burn_in = 0;
  std::size_t samples = 0;
};

/// Single-linkage clustering of S_burn_in .. S_{burn_in + samples} with a
/// fixed linkage radius.
OmegaApprox omega_limit_approx(const ProcessParams& p, const Seed& seed, std::size_t burn_in,
                               std::size_t samples, double resolution,
                               Arithmetic arithmetic = Arithmetic::automatic);

/// Cluster representatives of an already collected sample.
std::vector<double> cluster_points(std::vector<double> samples, double resolution);

// ---------------------------------------------------------------------------
// Dichotomy

enum class VerdictKind { periodic, cantor_like, inconclusive };

const char* to_string(VerdictKind v) noexcept;

struct ClassifyOptions {
  CycleOptions cycle{20'000, 1e-9, 1000, Arithmetic::automatic};
  std::size_t burn_in = 1000;
  std::size_t samples = 20'000;
  /// Linkage radii, coarse to fine. Empty: (M/400) * {1, 1/2, 1/4, 1/8}.
  std::vector<double> resolutions;
};

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::vector<CycleReport> cycles;       // at most two distinct cycles
  CycleReport left;                      // from f(rho-)
  CycleReport right;                     // from f(rho)
  std::vector<double> resolutions;
  std::vector<std::size_t> cluster_counts;
  std::string evidence;

  std::size_t total_period() const noexcept;
};

Verdict classify_dichotomy(const ProcessParams& p, const ClassifyOptions& opt = {});

// ---------------------------------------------------------------------------
// Sensitive dependence

inline constexpr std::size_t kSensitivityGrid = 1000;

struct SensitivityReport {
  double s0 = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
  bool found = false;
  double witness_s0prime = 0.0;
  std::size_t witness_k = 0;
  double achieved_separation = 0.0;  // at the witness, or the best pair otherwise
  /// eta minus the best separation seen, evaluated without cancellation;
  /// <= 0 exactly when some pair reached eta.
  long double deficit = 0.0L;
  std::size_t iterations = 0;
};

/// Co-iterates 1000 evenly spaced S0' in [s0 - eps, s0 + eps] (clipped at 0)
/// against the orbit of s0 and reports the first (k, S0') with
/// |S_k' - S_k| >= eta. Differences are tracked directly rather than as a
/// difference of rounded balances.
SensitivityReport sensitivity_probe(const ProcessParams& p, double s0, double epsilon, double eta,
                                    std::size_t max_iter,
                                    Arithmetic arithmetic = Arithmetic::automatic);

/// Uses eta = 500 b (1 - 1/b).
SensitivityReport sensitivity_probe(const ChaoticConfig& c, double s0, double epsilon,
                                    std::size_t max_iter);

// ---------------------------------------------------------------------------
// Visit frequencies

struct FrequencyReport {
  Interval J;
  std::size_t N = 0;
  std::size_t count = 0;
  double freq = 0.0;
  std::optional<FrequencyPrediction> predicted;
};

/// Counts 0 <= n < N with S_n in the closed interval J.
FrequencyReport visit_frequency(const ProcessParams& p, double s0, Interval J, std::size_t N,
                                Arithmetic arithmetic = Arithmetic::automatic);

/// Same, with the semiconjugacy prediction attached.
FrequencyReport visit_frequency(const ChaoticConfig& c, const GapSystem& gs, double s0, Interval J,
                                std::size_t N, Arithmetic arithmetic = Arithmetic::automatic);

}  // namespace savchaos
