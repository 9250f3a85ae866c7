#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "savchaos/analysis.hpp"

namespace savchaos {

/// Values min, min + step, ... up to max (inclusive within 1e-9 steps).
struct SweepAxis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

struct SweepSpec {
  SweepAxis r, v1, v2, rho;
  ClassifyOptions options;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepRow {
  double r, v1, v2, rho;
  VerdictKind verdict;
  std::size_t total_period;
};

/// Rows come out in lexicographic order of (r, v1, v2, rho) regardless of
/// how the cells were scheduled. Every cell is validated before any runs.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

}  // namespace savchaos
