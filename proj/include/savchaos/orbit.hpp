#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "savchaos/process.hpp"

namespace savchaos {

/// Arithmetic used to iterate the process.
///
/// A fixed precision turns the Cantor attractor of the chaotic parameters
/// into a spurious cycle once the orbit passes closer to rho than the
/// working precision can resolve (binary64 falls into a 34-cycle, 128 bits
/// into a 55-cycle). `adaptive` sizes an MPFR significand to the requested
/// horizon so every branch decision along the orbit is the exact one.
enum class Arithmetic {
  automatic,  // adaptive for parameters built from b, binary64 otherwise
  binary64,
  extended,   // 128-bit significand
  adaptive,   // MPFR, horizon * log2(1/(1+r)) + 64 bits
};

const char* to_string(Arithmetic a) noexcept;
std::optional<Arithmetic> parse_arithmetic(std::string_view name) noexcept;
Arithmetic resolve(Arithmetic a, const ProcessParams& p) noexcept;

/// Significand bits the adaptive engine uses for an orbit of `steps` steps.
long adaptive_precision_bits(const ProcessParams& p, std::size_t steps);

/// Where an orbit starts. The critical seeds are the one-sided images of the
/// discontinuity, f(rho-) and f(rho), evaluated in the working precision.
struct Seed {
  enum class Kind { value, critical_left, critical_right };
  Kind kind = Kind::value;
  double value = 0.0;

  static Seed at(double s0) { return {Kind::value, s0}; }
  static Seed critical_left() { return {Kind::critical_left, 0.0}; }
  static Seed critical_right() { return {Kind::critical_right, 0.0}; }
};

struct OrbitPoint {
  std::size_t n;
  double value;         // S_n rounded to binary64
  long double offset;   // S_n - rho, computed before rounding
};

/// Return false to stop early.
using OrbitVisitor = std::function<bool(const OrbitPoint&)>;

/// Visits S_0 .. S_steps.
void run_orbit(const ProcessParams& p, const Seed& seed, std::size_t steps,
               Arithmetic arithmetic, const OrbitVisitor& visit);

struct TimeSeries {
  double s0 = 0.0;
  Arithmetic arithmetic = Arithmetic::binary64;
  std::vector<double> values;  // S_0 .. S_n
};

/// S_0 .. S_n. With binary64 every term equals step() of the previous one.
TimeSeries simulate(const ProcessParams& p, double s0, std::size_t n,
                    Arithmetic arithmetic = Arithmetic::automatic);

/// Largest |values[i+1] - step(values[i])|; zero for binary64 series.
double replay_defect(const ProcessParams& p, const TimeSeries& ts);

}  // namespace savchaos
