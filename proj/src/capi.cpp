#include "savchaos/savchaos.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "savchaos/analysis.hpp"
#include "savchaos/error.hpp"
#include "savchaos/semiconjugacy.hpp"
#include "savchaos/sweep.hpp"
#include "savchaos/verify.hpp"
#include "savchaos/words.hpp"

using namespace savchaos;

struct savchaos_process {
  ProcessParams params;
  std::optional<ChaoticConfig> chaotic;
};

struct savchaos_gaps {
  GapSystem gs;
};

struct savchaos_verdict {
  Verdict v;
};

namespace {

thread_local std::string g_last_error;

savchaos_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::domain: return SAVCHAOS_E_DOMAIN;
    case ErrorCode::parameter: return SAVCHAOS_E_PARAMETER;
    case ErrorCode::empty_request: return SAVCHAOS_E_EMPTY_REQUEST;
    case ErrorCode::singular_rate: return SAVCHAOS_E_SINGULAR_RATE;
    case ErrorCode::degenerate_process: return SAVCHAOS_E_DEGENERATE;
    case ErrorCode::precision_unreachable: return SAVCHAOS_E_PRECISION;
  }
  return SAVCHAOS_E_INTERNAL;
}

savchaos_status set_error(savchaos_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class Fn>
savchaos_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SAVCHAOS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SAVCHAOS_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(SAVCHAOS_E_INTERNAL, "unknown exception");
  }
}

#define SAVCHAOS_REQUIRE(ptr) \
  if (!(ptr)) return set_error(SAVCHAOS_E_NULL, #ptr " must not be NULL")

Arithmetic arith(savchaos_arithmetic a) {
  switch (a) {
    case SAVCHAOS_ARITH_AUTO: return Arithmetic::automatic;
    case SAVCHAOS_ARITH_BINARY64: return Arithmetic::binary64;
    case SAVCHAOS_ARITH_EXTENDED: return Arithmetic::extended;
    case SAVCHAOS_ARITH_ADAPTIVE: return Arithmetic::adaptive;
  }
  fail(ErrorCode::parameter, "unknown arithmetic mode");
}

savchaos_cycle_status cstatus(CycleStatus s) {
  switch (s) {
    case CycleStatus::found: return SAVCHAOS_CYCLE_FOUND;
    case CycleStatus::not_found: return SAVCHAOS_CYCLE_NOT_FOUND;
    case CycleStatus::inconclusive: break;
  }
  return SAVCHAOS_CYCLE_INCONCLUSIVE;
}

savchaos_verdict_kind ckind(VerdictKind k) {
  switch (k) {
    case VerdictKind::periodic: return SAVCHAOS_PERIODIC;
    case VerdictKind::cantor_like: return SAVCHAOS_CANTOR_LIKE;
    case VerdictKind::inconclusive: break;
  }
  return SAVCHAOS_INCONCLUSIVE;
}

savchaos_cycle summary(const CycleReport& r) {
  return {cstatus(r.status), r.period, r.transient_length, r.residual};
}

CycleOptions to_cpp(const savchaos_cycle_options& o) {
  return {o.max_iter, o.tol, o.max_period, arith(o.arithmetic)};
}

ClassifyOptions to_cpp(const savchaos_classify_options& o) {
  ClassifyOptions c;
  c.cycle = to_cpp(o.cycle);
  c.burn_in = o.burn_in;
  c.samples = o.samples;
  if (o.resolutions) c.resolutions.assign(o.resolutions, o.resolutions + o.resolution_count);
  return c;
}

const ChaoticConfig& chaotic_of(const savchaos_process* p) {
  if (!p->chaotic) fail(ErrorCode::parameter, "process was not built from b");
  return *p->chaotic;
}

}  // namespace

extern "C" {

const char* savchaos_status_string(savchaos_status s) {
  switch (s) {
    case SAVCHAOS_OK: return "ok";
    case SAVCHAOS_E_DOMAIN: return "domain error";
    case SAVCHAOS_E_PARAMETER: return "parameter error";
    case SAVCHAOS_E_EMPTY_REQUEST: return "empty request";
    case SAVCHAOS_E_SINGULAR_RATE: return "singular rate";
    case SAVCHAOS_E_DEGENERATE: return "degenerate process";
    case SAVCHAOS_E_PRECISION: return "precision unreachable";
    case SAVCHAOS_E_NULL: return "null argument";
    case SAVCHAOS_E_BUFFER: return "buffer too small";
    case SAVCHAOS_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* savchaos_last_error(void) { return g_last_error.c_str(); }

const char* savchaos_version(void) { return "0.1.0"; }

savchaos_status savchaos_fibonacci_word(size_t n, char* buf, size_t buflen) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(buf);
    if (buflen < n + 1) return set_error(SAVCHAOS_E_BUFFER, "buffer must hold n + 1 bytes");
    const auto w = fibonacci_word(n);
    for (size_t i = 0; i < n; ++i) buf[i] = static_cast<char>('0' + w[i]);
    buf[n] = '\0';
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_rotation_coding(double alpha, double x0, size_t n, unsigned char* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(out);
    const auto code = rotation_coding(RotationParams(alpha), x0, n);
    std::memcpy(out, code.data(), code.size());
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_process_create(double r, double v1, double v2, double rho,
                                        savchaos_process** out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(out);
    *out = new savchaos_process{ProcessParams(r, v1, v2, rho), std::nullopt};
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_process_create_chaotic(double b, double precision_target,
                                                savchaos_process** out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(out);
    const ChaoticConfig c = chaotic_params(b, precision_target);
    *out = new savchaos_process{c.process(), c};
    return SAVCHAOS_OK;
  });
}

void savchaos_process_destroy(savchaos_process* p) { delete p; }

savchaos_status savchaos_process_params(const savchaos_process* p, savchaos_params* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    const auto& q = p->params;
    *out = {q.r(), q.v1(), q.v2(), q.rho(), p->chaotic ? 1 : 0, p->chaotic ? p->chaotic->b : 0.0};
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_process_chaotic_info(const savchaos_process* p, savchaos_chaotic_info* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    const ChaoticConfig& c = chaotic_of(p);
    const Interval K = c.attractor_interval();
    const Interval gap = c.central_gap();
    *out = {c.b,   c.delta,          c.rho,  c.r(), c.truncation_order, c.truncation_bound,
            c.eta(), c.gap_length(), K.lo,   K.hi,  gap.lo,             gap.hi,
            c.normalized_map().breakpoint};
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_step(const savchaos_process* p, double x, double* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    *out = step(p->params, x);
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_closed_form(double v, double r, double s0, size_t n, double* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(out);
    *out = closed_form(v, r, s0, n);
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_absorbing_bound(const savchaos_process* p, double* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    *out = absorbing_bound(p->params);
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_simulate(const savchaos_process* p, double s0, size_t n,
                                  savchaos_arithmetic arithmetic, double* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    run_orbit(p->params, Seed::at(s0), n, arith(arithmetic), [&](const OrbitPoint& pt) {
      out[pt.n] = pt.value;
      return true;
    });
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_gaps_create(double alpha, double b, size_t order, savchaos_gaps** out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(out);
    *out = new savchaos_gaps{build_gap_system(RotationParams(alpha), b, order)};
    return SAVCHAOS_OK;
  });
}

void savchaos_gaps_destroy(savchaos_gaps* g) { delete g; }

savchaos_status savchaos_gaps_tail_mass(const savchaos_gaps* g, double* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(g);
    SAVCHAOS_REQUIRE(out);
    *out = static_cast<double>(g->gs.tail_mass());
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_h_evaluate(const savchaos_gaps* g, double x, double* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(g);
    SAVCHAOS_REQUIRE(out);
    *out = h_evaluate(g->gs, x);
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_semiconjugacy_residual(const savchaos_gaps* g, const savchaos_process* chaotic,
                                                double x, double* out, int* defined) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(g);
    SAVCHAOS_REQUIRE(chaotic);
    SAVCHAOS_REQUIRE(out);
    SAVCHAOS_REQUIRE(defined);
    const auto r = semiconjugacy_residual(g->gs, chaotic_of(chaotic).normalized_map(), x);
    *defined = r.has_value();
    *out = r.value_or(0.0);
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_breakpoint_from_gaps(const savchaos_gaps* g, double* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(g);
    SAVCHAOS_REQUIRE(out);
    *out = breakpoint_from_gaps(g->gs);
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_predict_frequency(const savchaos_gaps* g, const savchaos_process* chaotic,
                                           double lo, double hi, double* predicted,
                                           double* truncation_error) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(g);
    SAVCHAOS_REQUIRE(chaotic);
    SAVCHAOS_REQUIRE(predicted);
    SAVCHAOS_REQUIRE(truncation_error);
    const auto fp = predict_frequency(g->gs, chaotic_of(chaotic), {lo, hi});
    *predicted = fp.predicted;
    *truncation_error = fp.truncation_error;
    return SAVCHAOS_OK;
  });
}

void savchaos_cycle_options_default(savchaos_cycle_options* o) {
  if (!o) return;
  const CycleOptions d;
  *o = {d.max_iter, d.tol, d.max_period, SAVCHAOS_ARITH_AUTO};
}

savchaos_status savchaos_detect_cycle(const savchaos_process* p, double s0,
                                      const savchaos_cycle_options* o, savchaos_cycle* out,
                                      double* points, size_t capacity) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    savchaos_cycle_options opts;
    savchaos_cycle_options_default(&opts);
    if (o) opts = *o;
    const auto rep = detect_cycle(p->params, Seed::at(s0), to_cpp(opts));
    *out = summary(rep);
    if (rep.cycle_points.size() > capacity || (!points && !rep.cycle_points.empty())) {
      return set_error(SAVCHAOS_E_BUFFER, "cycle point buffer too small");
    }
    std::copy(rep.cycle_points.begin(), rep.cycle_points.end(), points);
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_omega_limit(const savchaos_process* p, double s0, size_t burn_in,
                                     size_t samples, double resolution, savchaos_arithmetic arithmetic,
                                     double* points, size_t capacity, size_t* count) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(count);
    const auto om = omega_limit_approx(p->params, Seed::at(s0), burn_in, samples, resolution, arith(arithmetic));
    *count = om.points.size();
    if (om.points.size() > capacity || !points) {
      return set_error(SAVCHAOS_E_BUFFER, "cluster buffer too small");
    }
    std::copy(om.points.begin(), om.points.end(), points);
    return SAVCHAOS_OK;
  });
}

void savchaos_classify_options_default(savchaos_classify_options* o) {
  if (!o) return;
  const ClassifyOptions d;
  o->cycle = {d.cycle.max_iter, d.cycle.tol, d.cycle.max_period, SAVCHAOS_ARITH_AUTO};
  o->burn_in = d.burn_in;
  o->samples = d.samples;
  o->resolutions = nullptr;
  o->resolution_count = 0;
}

savchaos_status savchaos_classify(const savchaos_process* p, const savchaos_classify_options* o,
                                  savchaos_verdict** out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    savchaos_classify_options opts;
    savchaos_classify_options_default(&opts);
    if (o) opts = *o;
    *out = new savchaos_verdict{classify_dichotomy(p->params, to_cpp(opts))};
    return SAVCHAOS_OK;
  });
}

void savchaos_verdict_destroy(savchaos_verdict* v) { delete v; }

savchaos_verdict_kind savchaos_verdict_get_kind(const savchaos_verdict* v) {
  return v ? ckind(v->v.kind) : SAVCHAOS_INCONCLUSIVE;
}

size_t savchaos_verdict_cycle_count(const savchaos_verdict* v) { return v ? v->v.cycles.size() : 0; }

savchaos_status savchaos_verdict_cycle(const savchaos_verdict* v, size_t i, savchaos_cycle* out,
                                       const double** points) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(v);
    SAVCHAOS_REQUIRE(out);
    if (i >= v->v.cycles.size()) return set_error(SAVCHAOS_E_DOMAIN, "cycle index out of range");
    const auto& c = v->v.cycles[i];
    *out = summary(c);
    if (points) *points = c.cycle_points.data();
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_verdict_critical(const savchaos_verdict* v, int which, savchaos_cycle* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(v);
    SAVCHAOS_REQUIRE(out);
    if (which != 0 && which != 1) return set_error(SAVCHAOS_E_DOMAIN, "which must be 0 or 1");
    *out = summary(which == 0 ? v->v.left : v->v.right);
    return SAVCHAOS_OK;
  });
}

size_t savchaos_verdict_resolution_count(const savchaos_verdict* v) {
  return v ? v->v.resolutions.size() : 0;
}

savchaos_status savchaos_verdict_clusters(const savchaos_verdict* v, size_t i, double* resolution,
                                          size_t* count) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(v);
    SAVCHAOS_REQUIRE(resolution);
    SAVCHAOS_REQUIRE(count);
    if (i >= v->v.resolutions.size()) return set_error(SAVCHAOS_E_DOMAIN, "resolution index out of range");
    *resolution = v->v.resolutions[i];
    *count = v->v.cluster_counts[i];
    return SAVCHAOS_OK;
  });
}

const char* savchaos_verdict_evidence(const savchaos_verdict* v) { return v ? v->v.evidence.c_str() : ""; }

savchaos_status savchaos_sensitivity_probe(const savchaos_process* p, double s0, double epsilon,
                                           double eta, size_t max_iter, savchaos_arithmetic arithmetic,
                                           savchaos_sensitivity* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    if (!(eta > 0.0)) eta = chaotic_of(p).eta();
    const auto rep = sensitivity_probe(p->params, s0, epsilon, eta, max_iter, arith(arithmetic));
    *out = {rep.s0,
            rep.epsilon,
            rep.eta,
            rep.found ? 1 : 0,
            rep.witness_s0prime,
            rep.witness_k,
            rep.achieved_separation,
            static_cast<double>(rep.deficit),
            rep.iterations};
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_visit_frequency(const savchaos_process* p, const savchaos_gaps* gaps,
                                         double s0, double lo, double hi, size_t n,
                                         savchaos_arithmetic arithmetic, savchaos_frequency* out) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(p);
    SAVCHAOS_REQUIRE(out);
    const Interval J{lo, hi};
    const FrequencyReport rep =
        gaps ? visit_frequency(chaotic_of(p), gaps->gs, s0, J, n, arith(arithmetic))
             : visit_frequency(p->params, s0, J, n, arith(arithmetic));
    *out = {lo,
            hi,
            rep.N,
            rep.count,
            rep.freq,
            rep.predicted ? 1 : 0,
            rep.predicted ? rep.predicted->predicted : 0.0,
            rep.predicted ? rep.predicted->truncation_error : 0.0};
    return SAVCHAOS_OK;
  });
}

savchaos_status savchaos_sweep(const savchaos_sweep_spec* spec, savchaos_sweep_sink sink, void* user) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(spec);
    SAVCHAOS_REQUIRE(sink);
    SweepSpec s;
    auto axis = [](const savchaos_axis& a) { return SweepAxis{a.min, a.max, a.step}; };
    s.r = axis(spec->r);
    s.v1 = axis(spec->v1);
    s.v2 = axis(spec->v2);
    s.rho = axis(spec->rho);
    s.options = to_cpp(spec->options);
    s.threads = spec->threads;
    for (const auto& row : run_sweep(s)) {
      const savchaos_sweep_row c{row.r, row.v1, row.v2, row.rho, ckind(row.verdict), row.total_period};
      sink(&c, user);
    }
    return SAVCHAOS_OK;
  });
}

void savchaos_verify_options_default(savchaos_verify_options* o) {
  if (!o) return;
  *o = {0, 0.0, VerifyOptions{}.gap_order};
}

savchaos_status savchaos_verify(const savchaos_verify_options* o, savchaos_check_sink sink, void* user,
                                size_t* failures) {
  return guarded([&] {
    SAVCHAOS_REQUIRE(failures);
    savchaos_verify_options opts;
    savchaos_verify_options_default(&opts);
    if (o) opts = *o;
    VerifyOptions vo;
    if (opts.override_tol) vo.tol = opts.tol;
    vo.gap_order = opts.gap_order;
    size_t failed = 0;
    run_verify(vo, [&](const CheckResult& r) {
      failed += !r.passed;
      if (sink) {
        const savchaos_check c{r.module.c_str(), r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds};
        sink(&c, user);
      }
    });
    *failures = failed;
    return SAVCHAOS_OK;
  });
}

}  // extern "C"
