// savchaos: command-line front end over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "savchaos/savchaos.h"

namespace {

enum Exit { kOk = 0, kConfig = 1, kIo = 2, kVerify = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(savchaos_status s) {
  if (s == SAVCHAOS_OK) return;
  std::string msg = savchaos_status_string(s);
  if (*savchaos_last_error()) msg += std::string(": ") + savchaos_last_error();
  if (s == SAVCHAOS_E_INTERNAL) throw std::runtime_error(msg);
  throw ConfigError(msg);
}

std::string num(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct Config {
  std::optional<double> r, v1, v2, rho, chaotic_b;
  double precision_target = 1e-13;
  std::vector<double> s0;
  std::size_t n = 150;
  std::size_t N = 150;
  std::string J;
  std::size_t burn_in = 1000;
  std::size_t samples = 20'000;
  std::vector<double> resolution;
  double epsilon = 1e-6;
  std::optional<double> eta;
  std::optional<std::size_t> max_iter;
  std::optional<double> tol;
  std::size_t max_period = 1000;
  std::size_t order = 60;
  std::string precision = "auto";
  std::string out;
  std::string r_axis, v1_axis, v2_axis, rho_axis;
  unsigned threads = 0;
};

using ProcessPtr = std::unique_ptr<savchaos_process, decltype(&savchaos_process_destroy)>;
using GapsPtr = std::unique_ptr<savchaos_gaps, decltype(&savchaos_gaps_destroy)>;
using VerdictPtr = std::unique_ptr<savchaos_verdict, decltype(&savchaos_verdict_destroy)>;

savchaos_arithmetic arithmetic(const Config& c) {
  if (c.precision == "auto") return SAVCHAOS_ARITH_AUTO;
  if (c.precision == "binary64") return SAVCHAOS_ARITH_BINARY64;
  if (c.precision == "extended") return SAVCHAOS_ARITH_EXTENDED;
  if (c.precision == "adaptive") return SAVCHAOS_ARITH_ADAPTIVE;
  throw ConfigError("--precision must be auto, binary64, extended or adaptive");
}

ProcessPtr make_process(const Config& c) {
  const bool any_explicit = c.r || c.v1 || c.v2 || c.rho;
  const bool all_explicit = c.r && c.v1 && c.v2 && c.rho;
  if (c.chaotic_b && any_explicit) throw ConfigError("give either --chaotic-b or --r/--v1/--v2/--rho, not both");
  if (!c.chaotic_b && !all_explicit) throw ConfigError("need --chaotic-b or all of --r --v1 --v2 --rho");
  savchaos_process* p = nullptr;
  if (c.chaotic_b) {
    check(savchaos_process_create_chaotic(*c.chaotic_b, c.precision_target, &p));
  } else {
    check(savchaos_process_create(*c.r, *c.v1, *c.v2, *c.rho, &p));
  }
  return ProcessPtr(p, &savchaos_process_destroy);
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ConfigError(std::string(flag) + ": cannot parse '" + s + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::pair<double, double> parse_interval(const std::string& s) {
  if (s.empty()) throw ConfigError("--J lo,hi is required");
  const auto v = parse_list(s, "--J");
  if (v.size() != 2 || !(v[0] <= v[1])) throw ConfigError("--J must be lo,hi with lo <= hi");
  return {v[0], v[1]};
}

savchaos_cycle_options cycle_options(const Config& c, std::size_t default_iter) {
  savchaos_cycle_options o;
  savchaos_cycle_options_default(&o);
  o.max_iter = c.max_iter.value_or(default_iter);
  if (c.tol) o.tol = *c.tol;
  o.max_period = c.max_period;
  o.arithmetic = arithmetic(c);
  return o;
}

savchaos_classify_options classify_options(const Config& c) {
  savchaos_classify_options o;
  savchaos_classify_options_default(&o);
  o.cycle = cycle_options(c, o.cycle.max_iter);
  o.burn_in = c.burn_in;
  o.samples = c.samples;
  if (!c.resolution.empty()) {
    o.resolutions = c.resolution.data();
    o.resolution_count = c.resolution.size();
  }
  return o;
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + c.out + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing " + c.out);
}

const char* cycle_status(savchaos_cycle_status s) {
  switch (s) {
    case SAVCHAOS_CYCLE_FOUND: return "found";
    case SAVCHAOS_CYCLE_NOT_FOUND: return "not_found";
    case SAVCHAOS_CYCLE_INCONCLUSIVE: break;
  }
  return "inconclusive";
}

const char* verdict_name(savchaos_verdict_kind k) {
  switch (k) {
    case SAVCHAOS_PERIODIC: return "periodic";
    case SAVCHAOS_CANTOR_LIKE: return "cantor_like";
    case SAVCHAOS_INCONCLUSIVE: break;
  }
  return "inconclusive";
}

nlohmann::ordered_json params_json(const savchaos_process* p) {
  savchaos_params q;
  check(savchaos_process_params(p, &q));
  nlohmann::ordered_json j;
  j["r"] = q.r;
  j["v1"] = q.v1;
  j["v2"] = q.v2;
  j["rho"] = q.rho;
  if (q.chaotic) j["b"] = q.b;
  return j;
}

// ---------------------------------------------------------------------------

std::string cmd_simulate(const Config& c) {
  if (c.s0.size() != 1) throw ConfigError("simulate takes exactly one --s0");
  auto p = make_process(c);
  std::vector<double> xs(c.n + 1);
  check(savchaos_simulate(p.get(), c.s0[0], c.n, arithmetic(c), xs.data()));
  std::string out = "n,balance\n";
  for (std::size_t i = 0; i < xs.size(); ++i) out += std::to_string(i) + "," + num(xs[i]) + "\n";
  return out;
}

std::string cmd_classify(const Config& c) {
  auto p = make_process(c);
  const auto opt = classify_options(c);
  savchaos_verdict* raw = nullptr;
  check(savchaos_classify(p.get(), &opt, &raw));
  VerdictPtr v(raw, &savchaos_verdict_destroy);

  nlohmann::ordered_json j;
  j["params"] = params_json(p.get());
  j["verdict"] = verdict_name(savchaos_verdict_get_kind(v.get()));
  auto periods = nlohmann::ordered_json::array();
  auto cycles = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < savchaos_verdict_cycle_count(v.get()); ++i) {
    savchaos_cycle cy;
    const double* pts = nullptr;
    check(savchaos_verdict_cycle(v.get(), i, &cy, &pts));
    periods.push_back(cy.period);
    cycles.push_back({{"period", cy.period},
                      {"points", std::vector<double>(pts, pts + cy.period)},
                      {"transient_length", cy.transient_length},
                      {"residual", cy.residual}});
  }
  j["periods"] = periods;
  j["cycles"] = cycles;
  for (int which : {0, 1}) {
    savchaos_cycle cy;
    check(savchaos_verdict_critical(v.get(), which, &cy));
    j[which == 0 ? "orbit_of_f_rho_minus" : "orbit_of_f_rho"] = {{"status", cycle_status(cy.status)},
                                                                  {"period", cy.period}};
  }
  auto clusters = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < savchaos_verdict_resolution_count(v.get()); ++i) {
    double res;
    std::size_t count;
    check(savchaos_verdict_clusters(v.get(), i, &res, &count));
    clusters.push_back({{"resolution", res}, {"count", count}});
  }
  j["clusters"] = clusters;
  j["evidence"] = savchaos_verdict_evidence(v.get());
  return j.dump(2) + "\n";
}

std::string cmd_freq(const Config& c) {
  if (c.s0.empty()) throw ConfigError("freq needs at least one --s0");
  const auto [lo, hi] = parse_interval(c.J);
  auto p = make_process(c);
  GapsPtr gaps(nullptr, &savchaos_gaps_destroy);
  if (c.chaotic_b) {
    savchaos_gaps* g = nullptr;
    check(savchaos_gaps_create((3.0 - std::sqrt(5.0)) / 2.0, *c.chaotic_b, c.order, &g));
    gaps.reset(g);
  }
  std::string out = "s0,count,N,freq,predicted,prediction_error\n";
  for (double s0 : c.s0) {
    savchaos_frequency f;
    check(savchaos_visit_frequency(p.get(), gaps.get(), s0, lo, hi, c.N, arithmetic(c), &f));
    out += num(s0) + "," + std::to_string(f.count) + "," + std::to_string(f.n) + "," + num(f.freq) + ",";
    if (f.has_prediction) out += num(f.predicted) + "," + num(f.truncation_error);
    else out += ",";
    out += "\n";
  }
  return out;
}

std::string cmd_sensitivity(const Config& c) {
  if (c.s0.empty()) throw ConfigError("sensitivity needs at least one --s0");
  auto p = make_process(c);
  if (!c.chaotic_b && !c.eta) throw ConfigError("--eta is required for explicit parameters");
  std::string out = "s0,epsilon,eta,found,witness_s0prime,witness_k,achieved_separation,deficit,iterations\n";
  for (double s0 : c.s0) {
    savchaos_sensitivity r;
    check(savchaos_sensitivity_probe(p.get(), s0, c.epsilon, c.eta.value_or(0.0),
                                     c.max_iter.value_or(2000), arithmetic(c), &r));
    out += num(r.s0) + "," + num(r.epsilon) + "," + num(r.eta) + "," + (r.found ? "true" : "false") + ",";
    out += (r.found ? num(r.witness_s0prime) + "," + std::to_string(r.witness_k) : std::string(","));
    out += "," + num(r.achieved_separation) + "," + num(r.deficit) + "," + std::to_string(r.iterations) + "\n";
  }
  return out;
}

std::string cmd_chaotic_params(const Config& c) {
  if (!c.chaotic_b) throw ConfigError("chaotic-params needs --chaotic-b");
  auto p = make_process(c);
  savchaos_chaotic_info info;
  check(savchaos_process_chaotic_info(p.get(), &info));
  nlohmann::ordered_json j;
  j["b"] = info.b;
  j["r"] = info.r;
  j["v1"] = 1000.0;
  j["v2"] = 500.0;
  j["delta"] = info.delta;
  j["rho"] = info.rho;
  j["truncation_order"] = info.truncation_order;
  j["truncation_bound"] = info.truncation_bound;
  j["attractor_interval"] = {info.k_lo, info.k_hi};
  j["central_gap"] = {info.gap_lo, info.gap_hi};
  j["breakpoint"] = info.breakpoint;
  j["eta"] = info.eta;
  j["gap_length"] = info.gap_length;
  return j.dump(2) + "\n";
}

savchaos_axis axis(const std::string& spec, std::optional<double> point, const char* flag) {
  if (spec.empty()) {
    if (!point) throw ConfigError(std::string(flag) + " min,max,step (or the single-value flag) is required");
    return {*point, *point, 1.0};
  }
  const auto v = parse_list(spec, flag);
  if (v.size() != 3) throw ConfigError(std::string(flag) + " must be min,max,step");
  return {v[0], v[1], v[2]};
}

std::string cmd_sweep(const Config& c) {
  if (c.chaotic_b) throw ConfigError("sweep takes explicit parameter axes, not --chaotic-b");
  savchaos_sweep_spec spec;
  spec.r = axis(c.r_axis, c.r, "--r-axis");
  spec.v1 = axis(c.v1_axis, c.v1, "--v1-axis");
  spec.v2 = axis(c.v2_axis, c.v2, "--v2-axis");
  spec.rho = axis(c.rho_axis, c.rho, "--rho-axis");
  spec.options = classify_options(c);
  spec.threads = c.threads;
  std::string out = "r,v1,v2,rho,verdict,total_period\n";
  check(savchaos_sweep(
      &spec,
      [](const savchaos_sweep_row* row, void* user) {
        auto& s = *static_cast<std::string*>(user);
        s += num(row->r) + "," + num(row->v1) + "," + num(row->v2) + "," + num(row->rho) + "," +
             verdict_name(row->verdict) + "," + std::to_string(row->total_period) + "\n";
      },
      &out));
  return out;
}

int cmd_verify(const Config& c) {
  savchaos_verify_options o;
  savchaos_verify_options_default(&o);
  if (c.tol) {
    o.override_tol = 1;
    o.tol = *c.tol;
  }
  o.gap_order = c.order;
  std::ostringstream report;
  std::size_t failures = 0;
  auto sink = [](const savchaos_check* ch, void* user) {
    auto& os = *static_cast<std::ostringstream*>(user);
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", ch->seconds);
    const std::string line = std::string(ch->passed ? "PASS " : "FAIL ") + ch->module + ": " + ch->name +
                             " (" + ch->detail + ") [" + secs + " s]\n";
    os << line;
    std::cout << line << std::flush;
  };
  check(savchaos_verify(&o, sink, &report, &failures));
  const std::string tail = failures == 0 ? "all checks passed\n" : std::to_string(failures) + " check(s) failed\n";
  std::cout << tail;
  report << tail;
  if (!c.out.empty()) emit(c, report.str());
  return failures == 0 ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-deposit savings process under negative interest"};
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  app.require_subcommand(1);

  Config c;
  app.add_option("--r", c.r, "Real interest rate, -1 < r < 0");
  app.add_option("--v1", c.v1, "Deposit below the threshold");
  app.add_option("--v2", c.v2, "Deposit at or above the threshold");
  app.add_option("--rho", c.rho, "Threshold");
  app.add_option("--chaotic-b", c.chaotic_b, "Derive chaotic parameters from b > 1");
  app.add_option("--precision-target", c.precision_target, "Error target for the derived threshold");
  app.add_option("--s0", c.s0, "Initial balance (repeatable)");
  app.add_option("--n", c.n, "Steps to simulate");
  app.add_option("--N", c.N, "Window length for visit counts");
  app.add_option("--J", c.J, "Closed interval lo,hi");
  app.add_option("--burn-in", c.burn_in, "Steps discarded before clustering");
  app.add_option("--samples", c.samples, "Steps clustered after burn-in");
  app.add_option("--resolution", c.resolution, "Cluster radius (repeatable, coarse to fine)");
  app.add_option("--epsilon", c.epsilon, "Perturbation radius for the sensitivity probe");
  app.add_option("--eta", c.eta, "Separation threshold (default 500 b (1 - 1/b))");
  app.add_option("--max-iter", c.max_iter, "Iteration budget");
  app.add_option("--tol", c.tol, "Cycle tolerance; for verify, overrides every tolerance");
  app.add_option("--max-period", c.max_period, "Longest period searched");
  app.add_option("--order", c.order, "Number of gaps in the semiconjugacy");
  app.add_option("--precision", c.precision, "auto | binary64 | extended | adaptive");
  app.add_option("--out", c.out, "Output file (default stdout)");

  auto* sim = app.add_subcommand("simulate", "Write S_0..S_n as CSV");
  auto* cls = app.add_subcommand("classify", "Periodic / Cantor-like verdict as JSON");
  auto* frq = app.add_subcommand("freq", "Visit counts in J, one row per s0");
  auto* sen = app.add_subcommand("sensitivity", "Sensitive-dependence probe, one row per s0");
  auto* chp = app.add_subcommand("chaotic-params", "Parameters derived from b as JSON");
  auto* swp = app.add_subcommand("sweep", "Classify every cell of a parameter grid");
  auto* ver = app.add_subcommand("verify", "Run the invariant checks of every module");
  swp->add_option("--r-axis", c.r_axis, "min,max,step");
  swp->add_option("--v1-axis", c.v1_axis, "min,max,step");
  swp->add_option("--v2-axis", c.v2_axis, "min,max,step");
  swp->add_option("--rho-axis", c.rho_axis, "min,max,step");
  swp->add_option("--threads", c.threads, "Worker threads (0: all cores)");
  for (auto* s : {sim, cls, frq, sen, chp, swp, ver}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*ver) return cmd_verify(c);
    std::string text;
    if (*sim) text = cmd_simulate(c);
    else if (*cls) text = cmd_classify(c);
    else if (*frq) text = cmd_freq(c);
    else if (*sen) text = cmd_sensitivity(c);
    else if (*chp) text = cmd_chaotic_params(c);
    else text = cmd_sweep(c);
    emit(c, text);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}
