#include "savchaos/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "savchaos/analysis.hpp"
#include "savchaos/error.hpp"
#include "savchaos/orbit.hpp"
#include "savchaos/process.hpp"
#include "savchaos/semiconjugacy.hpp"
#include "savchaos/words.hpp"

namespace savchaos {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

class Suite {
 public:
  Suite(const VerifyOptions& opt, const CheckSink& sink) : opt_(opt), sink_(sink) {}

  double tol(double fallback) const { return opt_.tol.value_or(fallback); }
  const VerifyOptions& options() const { return opt_; }

  template <class Fn>
  void run(const char* module, const char* name, Fn&& fn) {
    CheckResult res;
    res.module = module;
    res.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = fn();
      res.passed = o.passed;
      res.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      res.passed = false;
      res.detail = std::string("threw: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (sink_) sink_(res);
    results_.push_back(std::move(res));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const VerifyOptions& opt_;
  const CheckSink& sink_;
  std::vector<CheckResult> results_;
};

// Substitution 0 -> 01, 1 -> 0 iterated from "0".
std::string substitution_word(std::size_t n) {
  std::string w = "0";
  while (w.size() < n) {
    std::string next;
    next.reserve(2 * w.size());
    for (char c : w) next += c == '0' ? "01" : "0";
    w = std::move(next);
  }
  w.resize(n);
  return w;
}

void words_checks(Suite& s) {
  s.run("words", "fibonacci word is the substitution fixed point", [] {
    const std::size_t n = 100'000;
    const bool ok = fibonacci_word(n).to_string() == substitution_word(n);
    return Outcome{ok, "n=" + std::to_string(n)};
  });
  s.run("words", "golden rotation coding minus one gives the fibonacci word", [] {
    const std::size_t n = 1000;
    const auto rp = RotationParams::golden();
    const auto code = rotation_coding(rp, rp.alpha(), n);
    const auto word = fibonacci_word(n);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) bad += code[i] - 1 != word[i];
    return Outcome{bad == 0, std::to_string(bad) + " mismatches in " + std::to_string(n)};
  });
  s.run("words", "floor(n phi) increments are 1 or 2", [] {
    std::size_t bad = 0;
    for (std::uint64_t n = 1; n < 200'000; ++n) {
      const auto d = floor_golden_multiple(n + 1) - floor_golden_multiple(n);
      bad += d != 1 && d != 2;
    }
    return Outcome{bad == 0, std::to_string(bad) + " bad increments"};
  });
}

void process_checks(Suite& s) {
  s.run("process-core", "step maps [0,M] into itself (1000 parameter sets)", [] {
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> ur(-0.999, -0.001), uv(0.0, 5000.0), uu(0.0, 1.0);
    std::size_t violations = 0;
    for (int t = 0; t < 1000; ++t) {
      const double r = ur(rng), v1 = uv(rng), v2 = uv(rng);
      const ProcessParams probe(r, v1, v2, 1.0);
      const double m = absorbing_bound(probe);
      const ProcessParams p(r, v1, v2, std::max(uu(rng) * m, 1e-9));
      const double xs[] = {0.0, m, p.rho(), std::nextafter(p.rho(), 0.0), uu(rng) * m};
      for (double x : xs) {
        const double y = step(p, x);
        violations += !(y >= 0.0 && y <= m);
      }
    }
    return Outcome{violations == 0, std::to_string(violations) + " violations"};
  });
  s.run("process-core", "simulate matches the closed form (v1=v2)", [&] {
    const double rel = s.tol(1e-9);
    const ProcessParams p(-0.5, 500, 500, 1500);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> us(0.0, 4000.0);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const double s0 = us(rng);
      const auto ts = simulate(p, s0, 1000, Arithmetic::binary64);
      for (std::size_t n = 0; n < ts.values.size(); ++n) {
        const double cf = closed_form(500, -0.5, s0, n);
        worst = std::max(worst, std::abs(ts.values[n] - cf) / std::max(std::abs(cf), 1.0));
      }
    }
    return Outcome{worst <= rel, "max relative error " + fmt(worst)};
  });
  s.run("process-core", "binary64 series replays through step", [] {
    const ProcessParams p(-0.5, 1000, 500, 1500);
    const auto ts = simulate(p, 123.456, 500, Arithmetic::binary64);
    const double d = replay_defect(p, ts);
    return Outcome{d == 0.0, "defect " + fmt(d)};
  });
  s.run("process-core", "chaotic rho for b=2", [&] {
    const auto c = chaotic_params(2.0, 1e-13);
    const double err = std::abs(c.rho - 1709.8034428612914);
    return Outcome{err <= s.tol(1e-12), "rho=" + fmt(c.rho) + " err " + fmt(err)};
  });
  s.run("process-core", "attractor interval has length 500 and f(K) inside K", [&] {
    const double t = s.tol(1e-9);
    bool ok = true;
    std::string worst;
    for (double b : {1.5, 2.0, 3.0, 5.0}) {
      const auto c = chaotic_params(b);
      const Interval K = c.attractor_interval();
      const auto p = c.process();
      const double len_err = std::abs(K.length() - 500.0);
      const double l_lo = conjugacy_L(c, K.lo), l_hi = conjugacy_L(c, K.hi) - 1.0;
      const double img_hi = step(p, std::nextafter(c.rho, 0.0));
      const double img_lo = step(p, c.rho);
      const bool inside = img_lo >= K.lo - t && img_hi <= K.hi + t && step(p, K.lo) <= K.hi + t &&
                          step(p, K.hi) >= K.lo - t;
      if (len_err > t || std::abs(l_lo) > t || std::abs(l_hi) > t || !inside) {
        ok = false;
        worst += " b=" + fmt(b);
      }
    }
    return Outcome{ok, ok ? "b in {1.5,2,3,5}" : "failed for" + worst};
  });
}

void semiconjugacy_checks(Suite& s) {
  const std::size_t order = s.options().gap_order;
  s.run("semiconjugacy", "residual |h(g(x)) - T(h(x))| over 1000 samples", [&] {
    const auto c = chaotic_params(2.0);
    const auto gs = build_gap_system(RotationParams::golden(), 2.0, order);
    const auto m = c.normalized_map();
    const double bound = 2.0 * static_cast<double>(gs.tail_mass()) + s.tol(1e-9);
    double worst = 0.0;
    std::size_t used = 0;
    for (int i = 0; i < 1000; ++i) {
      const double x = (i + 0.5) / 1000.0;
      if (auto r = semiconjugacy_residual(gs, m, x)) {
        worst = std::max(worst, *r);
        ++used;
      }
    }
    const bool ok = worst <= bound && used > 0;
    return Outcome{ok, "K=" + std::to_string(order) + " max " + fmt(worst) + " bound " + fmt(bound) +
                           " over " + std::to_string(used) + " samples"};
  });
  s.run("semiconjugacy", "breakpoint from gaps equals b(1 - delta)", [&] {
    const auto c = chaotic_params(2.0);
    const double x1 = c.normalized_map().breakpoint;
    bool ok = true;
    std::ostringstream d;
    for (std::size_t k : {std::size_t{20}, order}) {
      const auto gs = build_gap_system(RotationParams::golden(), 2.0, k);
      const double err = std::abs(breakpoint_from_gaps(gs) - x1);
      const double bound = 2.0 * static_cast<double>(gs.tail_mass()) + s.tol(1e-15);
      ok = ok && err <= bound;
      d << "K=" << k << " err " << fmt(err) << " ";
    }
    return Outcome{ok, d.str()};
  });
  s.run("semiconjugacy", "h is monotone with h(0)=0 and h(1)=1", [&] {
    const auto gs = build_gap_system(RotationParams::golden(), 2.0, order);
    double prev = h_evaluate(gs, 0.0);
    bool ok = prev == 0.0 && h_evaluate(gs, 1.0) == 1.0;
    for (int i = 1; i <= 10'000 && ok; ++i) {
      const double h = h_evaluate(gs, i / 10'000.0);
      ok = h >= prev;
      prev = h;
    }
    return Outcome{ok, "10^4 samples"};
  });
}

void analysis_checks(Suite& s) {
  const ProcessParams two_cycle(-0.5, 1000, 500, 1500);
  s.run("analysis", "detect_cycle finds the rational 2-cycle", [&] {
    CycleOptions o;
    o.tol = s.tol(1e-9);
    const auto rep = detect_cycle(two_cycle, Seed::at(0.0), o);
    if (!rep.found() || rep.period != 2) return Outcome{false, std::string("status ") + to_string(rep.status)};
    auto pts = rep.cycle_points;
    std::sort(pts.begin(), pts.end());
    const double err = std::max(std::abs(pts[0] - 4000.0 / 3.0), std::abs(pts[1] - 5000.0 / 3.0));
    return Outcome{err <= s.tol(1e-6), "max error " + fmt(err)};
  });
  s.run("analysis", "equal deposits converge to -v/r", [&] {
    CycleOptions o;
    o.tol = s.tol(1e-9);
    const auto rep = detect_cycle(ProcessParams(-0.5, 500, 500, 700), Seed::at(3000.0), o);
    const bool ok = rep.found() && rep.period == 1 && std::abs(rep.cycle_points[0] - 1000.0) <= s.tol(1e-6);
    return Outcome{ok, std::string("status ") + to_string(rep.status) + " period " + std::to_string(rep.period)};
  });
  s.run("analysis", "classify: periodic side, at most two cycles", [&] {
    ClassifyOptions o;
    o.cycle.tol = s.tol(1e-9);
    const auto v = classify_dichotomy(two_cycle, o);
    const bool ok = v.kind == VerdictKind::periodic && v.cycles.size() == 1 && v.total_period() == 2;
    return Outcome{ok, std::string(to_string(v.kind)) + ", " + v.evidence};
  });

  const auto chaos = chaotic_params(2.0);
  const auto chaos_p = chaos.process();
  s.run("analysis", "classify: chaotic b=2 is cantor-like", [&] {
    ClassifyOptions o;
    o.cycle.tol = s.tol(1e-9);
    const auto v = classify_dichotomy(chaos_p, o);
    return Outcome{v.kind == VerdictKind::cantor_like, std::string(to_string(v.kind)) + ", " + v.evidence};
  });
  s.run("analysis", "chaotic b=2 has no cycle within 10^5 steps", [&] {
    CycleOptions o;
    o.tol = s.tol(1e-9);
    const auto rep = detect_cycle(chaos_p, Seed::at(1450.0), o);
    return Outcome{rep.status == CycleStatus::not_found, to_string(rep.status)};
  });

  std::vector<double> clusters;
  s.run("analysis", "clusters of the chaotic orbit lie in K, avoid the gap and refine", [&] {
    const Interval K = chaos.attractor_interval();
    const Interval gap = chaos.central_gap();
    const double t = s.tol(1e-9);
    std::vector<double> sample;
    run_orbit(chaos_p, Seed::at(1450.0), 21'000, Arithmetic::automatic, [&](const OrbitPoint& pt) {
      if (pt.n >= 1000) sample.push_back(pt.value);
      return true;
    });
    std::vector<std::size_t> counts;
    for (double res : {10.0, 5.0, 2.5, 1.25}) counts.push_back(cluster_points(sample, res).size());
    clusters = cluster_points(sample, 1.25);
    bool inside = true, avoids = true;
    for (double x : sample) {
      inside = inside && x >= K.lo - t && x <= K.hi + t;
      avoids = avoids && !(x > gap.lo + t && x < gap.hi - t);
    }
    bool grows = true;
    for (std::size_t i = 1; i < counts.size(); ++i) grows = grows && counts[i] > counts[i - 1];
    std::ostringstream d;
    d << "counts";
    for (auto c : counts) d << ' ' << c;
    d << (inside ? "; inside K" : "; outside K") << (avoids ? "; gap empty" : "; gap hit");
    return Outcome{inside && avoids && grows, d.str()};
  });
  s.run("analysis", "sensitive dependence with the gap-length constant", [&] {
    if (clusters.empty()) return Outcome{false, "no clusters"};
    const double eta = chaos.gap_length();
    std::size_t found = 0, tried = 0;
    for (std::size_t i = 0; i < clusters.size() && tried < 10; i += std::max<std::size_t>(1, clusters.size() / 10)) {
      ++tried;
      found += sensitivity_probe(chaos_p, clusters[i], 1e-8, eta, 2000).found;
    }
    return Outcome{found == tried, std::to_string(found) + "/" + std::to_string(tried) +
                                       " witnesses at eps=1e-8, eta=" + fmt(eta)};
  });
  s.run("analysis", "separation approaches 500 b (1 - 1/b) from below", [&] {
    if (clusters.empty()) return Outcome{false, "no clusters"};
    const auto rep = sensitivity_probe(chaos, clusters.front(), 1e-6, 2000);
    const double deficit = static_cast<double>(rep.deficit);
    const bool ok = deficit >= 0.0 && deficit < s.tol(1e-6);
    return Outcome{ok, "best separation " + fmt(rep.achieved_separation) + ", deficit " + fmt(deficit)};
  });
  s.run("analysis", "visit frequencies agree with each other and with the prediction", [&] {
    const auto gs = build_gap_system(RotationParams::golden(), 2.0, 60);
    const Interval J{1400, 1600};
    const std::size_t N = 100'000;
    std::vector<double> f;
    std::optional<FrequencyPrediction> pred;
    for (double s0 : {1450.0, 1380.0, 1023.0, 1900.0, 800.0}) {
      const auto rep = visit_frequency(chaos, gs, s0, J, N);
      f.push_back(rep.freq);
      pred = rep.predicted;
    }
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    double worst = 0.0;
    for (double x : f) worst = std::max(worst, std::abs(x - pred->predicted));
    const bool ok = *hi - *lo <= s.tol(2e-3) && worst <= pred->truncation_error + s.tol(10.0 / N);
    return Outcome{ok, "spread " + fmt(*hi - *lo) + ", predicted " + fmt(pred->predicted) +
                           ", max deviation " + fmt(worst)};
  });
  s.run("analysis", "every balance is counted in [0, inf)", [] {
    const auto rep = visit_frequency(ProcessParams(-0.3, 200, 900, 1000), 50.0,
                                     {0.0, std::numeric_limits<double>::infinity()}, 100);
    return Outcome{rep.count == 100, std::to_string(rep.count) + "/100"};
  });
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt, const CheckSink& sink) {
  if (opt.tol && !(*opt.tol >= 0.0)) fail(ErrorCode::parameter, "verify: tol must be >= 0");
  Suite s(opt, sink);
  words_checks(s);
  process_checks(s);
  semiconjugacy_checks(s);
  analysis_checks(s);
  return s.take();
}

}  // namespace savchaos
