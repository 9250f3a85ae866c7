#include "savchaos/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "savchaos/error.hpp"

namespace savchaos {

std::vector<double> SweepAxis::values() const {
  if (!(std::isfinite(min) && std::isfinite(max) && std::isfinite(step))) {
    fail(ErrorCode::parameter, "sweep axis bounds must be finite");
  }
  if (!(step > 0.0)) fail(ErrorCode::parameter, "sweep axis step must be positive");
  if (max < min) fail(ErrorCode::parameter, "sweep axis is empty (max < min)");
  const double span = (max - min) / step;
  if (span > 1e6) fail(ErrorCode::parameter, "sweep axis has more than 10^6 points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = min + static_cast<double>(i) * step;
  return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  const auto rs = spec.r.values();
  const auto v1s = spec.v1.values();
  const auto v2s = spec.v2.values();
  const auto rhos = spec.rho.values();

  std::vector<ProcessParams> cells;
  cells.reserve(rs.size() * v1s.size() * v2s.size() * rhos.size());
  for (double r : rs)
    for (double v1 : v1s)
      for (double v2 : v2s)
        for (double rho : rhos) {
          ProcessParams p(r, v1, v2, rho);
          absorbing_bound(p);  // rejects v1 = v2 = 0 up front
          cells.push_back(p);
        }

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cells.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const ProcessParams& p = cells[i];
      try {
        const Verdict v = classify_dichotomy(p, spec.options);
        rows[i] = {p.r(), p.v1(), p.v2(), p.rho(), v.kind,
                   v.kind == VerdictKind::periodic ? v.total_period() : 0};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned n = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, cells.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace savchaos
