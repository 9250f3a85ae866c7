#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace savchaos {

struct VerifyOptions {
  /// Replaces every comparison tolerance; 0 makes the suite fail on purpose.
  std::optional<double> tol;
  /// Gap count for the semiconjugacy checks.
  std::size_t gap_order = 60;
};

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

using CheckSink = std::function<void(const CheckResult&)>;

/// Runs the invariant checks of every module. Each result is passed to sink
/// as soon as it is known. A check that throws is reported as failed.
std::vector<CheckResult> run_verify(const VerifyOptions& opt = {}, const CheckSink& sink = {});

}  // namespace savchaos
