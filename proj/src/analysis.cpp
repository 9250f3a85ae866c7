#include "savchaos/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "savchaos/error.hpp"

namespace savchaos {

const char* to_string(CycleStatus s) noexcept {
  switch (s) {
    case CycleStatus::found: return "found";
    case CycleStatus::not_found: return "not_found";
    case CycleStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(VerdictKind v) noexcept {
  switch (v) {
    case VerdictKind::periodic: return "periodic";
    case VerdictKind::cantor_like: return "cantor_like";
    case VerdictKind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

constexpr std::size_t kCheckStride = 8;

double seed_upper_estimate(const ProcessParams& p, const Seed& seed) {
  if (seed.kind == Seed::Kind::value) return seed.value;
  return p.slope() * p.rho() + std::max(p.v1(), p.v2());
}

/// Fixed-capacity history indexed by absolute step number.
class History {
 public:
  explicit History(std::size_t capacity) : buf_(capacity) {}
  void push(std::size_t n, double x) { buf_[n % buf_.size()] = x; }
  double at(std::size_t n) const { return buf_[n % buf_.size()]; }
  std::size_t capacity() const noexcept { return buf_.size(); }

 private:
  std::vector<double> buf_;
};

}  // namespace

CycleReport detect_cycle(const ProcessParams& p, const Seed& seed, const CycleOptions& opt) {
  if (!(opt.tol >= 0.0)) fail(ErrorCode::parameter, "detect_cycle: tol must be >= 0");
  if (opt.max_period == 0) fail(ErrorCode::parameter, "detect_cycle: max_period must be >= 1");

  const double m = absorbing_bound(p);
  const std::size_t absorb = absorption_steps(p, std::max(seed_upper_estimate(p, seed), 0.0));
  std::size_t settle = 0;
  if (opt.tol > 0.0 && opt.tol < 2.0 * m) {
    settle = static_cast<std::size_t>(std::ceil(std::log(opt.tol / (2.0 * m)) / std::log(p.slope())));
  }
  const std::size_t needed = absorb + settle + 4 * opt.max_period;

  const std::size_t P = opt.max_period;
  History hist(4 * P + 1);
  CycleReport report;

  run_orbit(p, seed, opt.max_iter, opt.arithmetic, [&](const OrbitPoint& pt) {
    const std::size_t n = pt.n;
    hist.push(n, pt.value);
    if (n < absorb || n % kCheckStride != 0) return true;
    for (std::size_t N = 1; N <= P && 4 * N <= n + 1; ++N) {
      bool held = true;
      for (std::size_t j = 0; j < 3 * N; ++j) {
        if (!(std::abs(hist.at(n - j) - hist.at(n - j - N)) <= opt.tol)) {
          held = false;
          break;
        }
      }
      if (!held) continue;

      report.status = CycleStatus::found;
      report.period = N;
      report.cycle_points.resize(N);
      double residual = 0.0;
      for (std::size_t j = 0; j < N; ++j) {
        const std::size_t idx = n - N + 1 + j;
        report.cycle_points[j] = hist.at(idx);
        residual = std::max(residual, std::abs(hist.at(idx) - hist.at(idx - N)));
      }
      report.residual = residual;
      // Walk back through the history while the recurrence still holds.
      std::size_t start = n - 3 * N + 1;
      const std::size_t oldest = n + 1 - std::min(hist.capacity(), n + 1);
      while (start > oldest + N &&
             std::abs(hist.at(start - 1) - hist.at(start - 1 - N)) <= opt.tol) {
        --start;
      }
      report.transient_length = start - N;
      return false;
    }
    return true;
  });

  if (!report.found()) {
    report.status = opt.max_iter >= needed ? CycleStatus::not_found : CycleStatus::inconclusive;
  }
  return report;
}

bool same_cycle(const CycleReport& a, const CycleReport& b, double tol) {
  if (!a.found() || !b.found() || a.period != b.period) return false;
  const double match = 10.0 * tol + 1e-12;
  for (double x : a.cycle_points) {
    const bool hit = std::any_of(b.cycle_points.begin(), b.cycle_points.end(),
                                 [&](double y) { return std::abs(x - y) <= match; });
    if (!hit) return false;
  }
  return true;
}

std::vector<double> cluster_points(std::vector<double> samples, double resolution) {
  if (!(resolution > 0.0)) fail(ErrorCode::parameter, "cluster resolution must be positive");
  std::vector<double> reps;
  if (samples.empty()) return reps;
  std::sort(samples.begin(), samples.end());
  // The median sample, not the midpoint: a midpoint can fall inside a gap of
  // the attractor, where no perturbation ever reaches the threshold.
  std::size_t first = 0;
  for (std::size_t i = 1; i <= samples.size(); ++i) {
    if (i == samples.size() || samples[i] - samples[i - 1] > resolution) {
      reps.push_back(samples[first + (i - 1 - first) / 2]);
      first = i;
    }
  }
  return reps;
}

namespace {

std::vector<double> collect(const ProcessParams& p, const Seed& seed, std::size_t burn_in,
                            std::size_t samples, Arithmetic arithmetic) {
  std::vector<double> out;
  out.reserve(samples + 1);
  run_orbit(p, seed, burn_in + samples, arithmetic, [&](const OrbitPoint& pt) {
    if (pt.n >= burn_in) out.push_back(pt.value);
    return true;
  });
  return out;
}

}  // namespace

OmegaApprox omega_limit_approx(const ProcessParams& p, const Seed& seed, std::size_t burn_in,
                               std::size_t samples, double resolution, Arithmetic arithmetic) {
  if (!(resolution > 0.0)) fail(ErrorCode::parameter, "omega_limit_approx: resolution must be positive");
  OmegaApprox out;
  out.resolution = resolution;
  out.burn_in = burn_in;
  out.samples = samples;
  out.points = cluster_points(collect(p, seed, burn_in, samples, arithmetic), resolution);
  return out;
}

std::size_t Verdict::total_period() const noexcept {
  std::size_t total = 0;
  for (const auto& c : cycles) total += c.period;
  return total;
}

Verdict classify_dichotomy(const ProcessParams& p, const ClassifyOptions& opt) {
  Verdict v;
  v.left = detect_cycle(p, Seed::critical_left(), opt.cycle);
  v.right = detect_cycle(p, Seed::critical_right(), opt.cycle);

  v.resolutions = opt.resolutions;
  if (v.resolutions.empty()) {
    const double base = absorbing_bound(p) / 400.0;
    v.resolutions = {base, base / 2, base / 4, base / 8};
  }
  const auto sample = collect(p, Seed::critical_right(), opt.burn_in, opt.samples, opt.cycle.arithmetic);
  for (double res : v.resolutions) v.cluster_counts.push_back(cluster_points(sample, res).size());

  std::ostringstream ev;
  ev << "f(rho-): " << to_string(v.left.status);
  if (v.left.found()) ev << " period " << v.left.period;
  ev << "; f(rho): " << to_string(v.right.status);
  if (v.right.found()) ev << " period " << v.right.period;
  ev << "; clusters";
  for (auto c : v.cluster_counts) ev << ' ' << c;

  if (v.left.found() && v.right.found()) {
    v.kind = VerdictKind::periodic;
    v.cycles.push_back(v.left);
    if (!same_cycle(v.left, v.right, opt.cycle.tol)) v.cycles.push_back(v.right);
  } else if (v.left.status == CycleStatus::not_found && v.right.status == CycleStatus::not_found) {
    const bool grows = std::adjacent_find(v.cluster_counts.begin(), v.cluster_counts.end(),
                                          [](std::size_t a, std::size_t b) { return b <= a; }) ==
                       v.cluster_counts.end();
    v.kind = grows ? VerdictKind::cantor_like : VerdictKind::inconclusive;
  } else {
    v.kind = VerdictKind::inconclusive;
  }
  v.evidence = ev.str();
  return v;
}

namespace {

/// eta - |a + dv| rearranged so that a tiny |a| against dv = +-eta does not
/// round away.
long double separation_deficit(long double eta, long double a, long double dv) {
  const long double aa = std::abs(a);
  const long double adv = std::abs(dv);
  if (dv == 0) return eta - aa;
  if (a == 0 || std::signbit(a) == std::signbit(dv)) return (eta - adv) - aa;
  if (adv >= aa) return (eta - adv) + aa;
  return (eta + adv) - aa;
}

}  // namespace

SensitivityReport sensitivity_probe(const ProcessParams& p, double s0, double epsilon, double eta,
                                    std::size_t max_iter, Arithmetic arithmetic) {
  if (!(s0 >= 0.0)) fail(ErrorCode::domain, "sensitivity_probe: s0 must be >= 0");
  if (!(epsilon > 0.0)) fail(ErrorCode::parameter, "sensitivity_probe: epsilon must be positive");
  if (!(eta > 0.0)) fail(ErrorCode::parameter, "sensitivity_probe: eta must be positive");

  SensitivityReport rep;
  rep.s0 = s0;
  rep.epsilon = epsilon;
  rep.eta = eta;

  const long double leta = eta;
  const long double lo = std::max(0.0L, static_cast<long double>(s0) - epsilon);
  const long double hi = static_cast<long double>(s0) + epsilon;
  std::vector<long double> start(kSensitivityGrid), diff(kSensitivityGrid);
  for (std::size_t j = 0; j < kSensitivityGrid; ++j) {
    start[j] = lo + (hi - lo) * static_cast<long double>(j) / (kSensitivityGrid - 1);
    diff[j] = start[j] - s0;
  }

  long double best = leta;  // smallest deficit seen
  auto record = [&](std::size_t k, std::size_t j, long double deficit) {
    if (deficit < best) best = deficit;
    if (deficit <= 0 && !rep.found) {
      rep.found = true;
      rep.witness_k = k;
      rep.witness_s0prime = static_cast<double>(start[j]);
      rep.achieved_separation = static_cast<double>(std::abs(diff[j]));
    }
  };

  for (std::size_t j = 0; j < kSensitivityGrid; ++j) record(0, j, leta - std::abs(diff[j]));
  if (!rep.found) {
    const long double slope =
        p.chaotic_b() ? 1.0L / static_cast<long double>(*p.chaotic_b()) : 1.0L + p.r();
    const long double v1 = p.v1(), v2 = p.v2();
    run_orbit(p, Seed::at(s0), max_iter, arithmetic, [&](const OrbitPoint& pt) {
      if (pt.n == max_iter) return false;
      const bool base_below = pt.offset < 0;
      const long double base_dep = base_below ? v1 : v2;
      for (std::size_t j = 0; j < kSensitivityGrid; ++j) {
        const bool below = pt.offset + diff[j] < 0;
        const long double dv = (below ? v1 : v2) - base_dep;
        const long double a = slope * diff[j];
        diff[j] = a + dv;
        record(pt.n + 1, j, separation_deficit(leta, a, dv));
        if (rep.found) break;
      }
      rep.iterations = pt.n + 1;
      return !rep.found;
    });
  }
  rep.deficit = best;
  if (!rep.found) rep.achieved_separation = static_cast<double>(leta - best);
  return rep;
}

SensitivityReport sensitivity_probe(const ChaoticConfig& c, double s0, double epsilon,
                                    std::size_t max_iter) {
  return sensitivity_probe(c.process(), s0, epsilon, c.eta(), max_iter, Arithmetic::automatic);
}

FrequencyReport visit_frequency(const ProcessParams& p, double s0, Interval J, std::size_t N,
                                Arithmetic arithmetic) {
  if (N == 0) fail(ErrorCode::empty_request, "visit_frequency: N must be at least 1");
  if (!(J.lo <= J.hi)) fail(ErrorCode::parameter, "visit_frequency: interval must satisfy lo <= hi");
  FrequencyReport rep;
  rep.J = J;
  rep.N = N;
  run_orbit(p, Seed::at(s0), N - 1, arithmetic, [&](const OrbitPoint& pt) {
    if (J.contains(pt.value)) ++rep.count;
    return true;
  });
  rep.freq = static_cast<double>(rep.count) / static_cast<double>(N);
  return rep;
}

FrequencyReport visit_frequency(const ChaoticConfig& c, const GapSystem& gs, double s0, Interval J,
                                std::size_t N, Arithmetic arithmetic) {
  FrequencyReport rep = visit_frequency(c.process(), s0, J, N, arithmetic);
  rep.predicted = predict_frequency(gs, c, J);
  return rep;
}

}  // namespace savchaos
