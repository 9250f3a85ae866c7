#include "savchaos/orbit.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "savchaos/error.hpp"
#include "savchaos/words.hpp"
#include "wide.hpp"

namespace savchaos {

const char* to_string(Arithmetic a) noexcept {
  switch (a) {
    case Arithmetic::automatic: return "auto";
    case Arithmetic::binary64: return "binary64";
    case Arithmetic::extended: return "extended";
    case Arithmetic::adaptive: return "adaptive";
  }
  return "auto";
}

std::optional<Arithmetic> parse_arithmetic(std::string_view name) noexcept {
  if (name == "auto") return Arithmetic::automatic;
  if (name == "binary64") return Arithmetic::binary64;
  if (name == "extended") return Arithmetic::extended;
  if (name == "adaptive") return Arithmetic::adaptive;
  return std::nullopt;
}

Arithmetic resolve(Arithmetic a, const ProcessParams& p) noexcept {
  if (a != Arithmetic::automatic) return a;
  return p.chaotic_b() ? Arithmetic::adaptive : Arithmetic::binary64;
}

long adaptive_precision_bits(const ProcessParams& p, std::size_t steps) {
  const double shrink = p.chaotic_b() ? std::log2(*p.chaotic_b()) : -std::log2(p.slope());
  const double bits = 64.0 + std::ceil(static_cast<double>(steps) * shrink);
  return static_cast<long>(std::max(128.0, bits));
}

namespace {

void check_seed(const Seed& seed) {
  if (seed.kind == Seed::Kind::value && !(seed.value >= 0.0 && std::isfinite(seed.value))) {
    fail(ErrorCode::domain, "orbit seed must be finite and >= 0");
  }
}

class Binary64Kernel {
 public:
  Binary64Kernel(const ProcessParams& p, const Seed& seed)
      : a_(1.0 + p.r()), v1_(p.v1()), v2_(p.v2()), rho_(p.rho()) {
    switch (seed.kind) {
      case Seed::Kind::value: x_ = seed.value; break;
      case Seed::Kind::critical_left: x_ = a_ * rho_ + v1_; break;
      case Seed::Kind::critical_right: x_ = a_ * rho_ + v2_; break;
    }
  }
  void advance() { x_ = a_ * x_ + (x_ < rho_ ? v1_ : v2_); }
  double value() const { return x_; }
  long double offset() const {
    return static_cast<long double>(x_) - static_cast<long double>(rho_);
  }

 private:
  double a_, v1_, v2_, rho_;
  double x_ = 0.0;
};

class ExtendedKernel {
 public:
  using Wide = detail::Wide;

  ExtendedKernel(const ProcessParams& p, const Seed& seed) : v1_(p.v1()), v2_(p.v2()) {
    if (auto b = p.chaotic_b()) {
      const Wide wb = *b;
      const auto order = static_cast<std::size_t>(std::ceil(136.0 / std::log2(*b))) + 2;
      const BinaryWord word = fibonacci_word(order + 1);
      a_ = Wide(1) / wb;
      rho_ = detail::chaotic_rho(wb, detail::chaotic_delta(wb, detail::word_series(wb, word.digits())));
    } else {
      a_ = Wide(1) + Wide(p.r());
      rho_ = p.rho();
    }
    switch (seed.kind) {
      case Seed::Kind::value: x_ = seed.value; break;
      case Seed::Kind::critical_left: x_ = a_ * rho_ + v1_; break;
      case Seed::Kind::critical_right: x_ = a_ * rho_ + v2_; break;
    }
  }
  void advance() { x_ = a_ * x_ + (x_ < rho_ ? v1_ : v2_); }
  double value() const { return static_cast<double>(x_); }
  long double offset() const { return static_cast<long double>(Wide(x_ - rho_)); }

 private:
  Wide a_, v1_, v2_, rho_, x_;
};

/// Owning mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

class AdaptiveKernel {
 public:
  AdaptiveKernel(const ProcessParams& p, const Seed& seed, mpfr_prec_t bits)
      : v1_(p.v1()), v2_(p.v2()), rate_(p.r()), rho_(bits), x_(bits), tmp_(bits) {
    if (auto b = p.chaotic_b()) {
      chaotic_ = true;
      b_ = *b;
      build_chaotic_rho(bits);
    } else {
      mpfr_set_d(rho_.get(), p.rho(), MPFR_RNDN);
    }
    switch (seed.kind) {
      case Seed::Kind::value:
        mpfr_set_d(x_.get(), seed.value, MPFR_RNDN);
        break;
      case Seed::Kind::critical_left:
        mpfr_set(x_.get(), rho_.get(), MPFR_RNDN);
        contract();
        mpfr_add_d(x_.get(), x_.get(), v1_, MPFR_RNDN);
        break;
      case Seed::Kind::critical_right:
        mpfr_set(x_.get(), rho_.get(), MPFR_RNDN);
        contract();
        mpfr_add_d(x_.get(), x_.get(), v2_, MPFR_RNDN);
        break;
    }
  }

  void advance() {
    const bool below = mpfr_less_p(x_.get(), rho_.get());
    contract();
    mpfr_add_d(x_.get(), x_.get(), below ? v1_ : v2_, MPFR_RNDN);
  }
  double value() const { return mpfr_get_d(x_.get(), MPFR_RNDN); }
  long double offset() {
    mpfr_sub(tmp_.get(), x_.get(), rho_.get(), MPFR_RNDN);
    return mpfr_get_ld(tmp_.get(), MPFR_RNDN);
  }

 private:
  // x <- (1 + r) x, as x / b for the chaotic family and x + r x otherwise;
  // both forms cost one single-limb operation.
  void contract() {
    if (chaotic_) {
      divide_by_b(x_.get());
    } else {
      mpfr_mul_d(tmp_.get(), x_.get(), rate_, MPFR_RNDN);
      mpfr_add(x_.get(), x_.get(), tmp_.get(), MPFR_RNDN);
    }
  }

  void divide_by_b(mpfr_ptr v) {
    if (b_ == 2.0) {
      mpfr_div_2ui(v, v, 1, MPFR_RNDN);
    } else {
      mpfr_div_d(v, v, b_, MPFR_RNDN);
    }
  }

  void build_chaotic_rho(mpfr_prec_t bits) {
    const auto order =
        static_cast<std::size_t>(std::ceil(static_cast<double>(bits + 8) / std::log2(b_))) + 2;
    const BinaryWord word = fibonacci_word(order + 1);
    mpfr_ptr s = tmp_.get();
    mpfr_set_ui(s, 0, MPFR_RNDN);
    for (std::size_t k = word.size(); k-- > 0;) {
      divide_by_b(s);
      if (word[k]) mpfr_add_ui(s, s, 1, MPFR_RNDN);
    }
    // delta = 1 - 1/b + (1/b)(1 - 1/b) s, kept as 1 - delta.
    Mpfr inv(bits), one_minus_delta(bits), w(bits);
    mpfr_set_d(inv.get(), b_, MPFR_RNDN);
    mpfr_ui_div(inv.get(), 1, inv.get(), MPFR_RNDN);
    mpfr_ui_sub(w.get(), 1, inv.get(), MPFR_RNDN);       // 1 - 1/b
    mpfr_mul(w.get(), w.get(), inv.get(), MPFR_RNDN);    // (1/b)(1 - 1/b)
    mpfr_mul(w.get(), w.get(), s, MPFR_RNDN);            // ... * s
    mpfr_sub(one_minus_delta.get(), inv.get(), w.get(), MPFR_RNDN);
    // rho = 500 b/(b-1) (b (1 - delta) + 1)
    mpfr_mul_d(rho_.get(), one_minus_delta.get(), b_, MPFR_RNDN);
    mpfr_add_ui(rho_.get(), rho_.get(), 1, MPFR_RNDN);
    mpfr_mul_d(rho_.get(), rho_.get(), 500.0 * b_, MPFR_RNDN);
    mpfr_div_d(rho_.get(), rho_.get(), b_ - 1.0, MPFR_RNDN);
  }

  double v1_, v2_, rate_;
  bool chaotic_ = false;
  double b_ = 0.0;
  Mpfr rho_, x_, tmp_;
};

template <class Kernel>
void drive(Kernel& kernel, std::size_t steps, const OrbitVisitor& visit) {
  for (std::size_t n = 0;; ++n) {
    if (!visit(OrbitPoint{n, kernel.value(), kernel.offset()})) return;
    if (n == steps) return;
    kernel.advance();
  }
}

}  // namespace

void run_orbit(const ProcessParams& p, const Seed& seed, std::size_t steps,
               Arithmetic arithmetic, const OrbitVisitor& visit) {
  check_seed(seed);
  switch (resolve(arithmetic, p)) {
    case Arithmetic::binary64: {
      Binary64Kernel k(p, seed);
      drive(k, steps, visit);
      return;
    }
    case Arithmetic::extended: {
      ExtendedKernel k(p, seed);
      drive(k, steps, visit);
      return;
    }
    case Arithmetic::automatic:
    case Arithmetic::adaptive: {
      AdaptiveKernel k(p, seed, adaptive_precision_bits(p, steps));
      drive(k, steps, visit);
      return;
    }
  }
}

TimeSeries simulate(const ProcessParams& p, double s0, std::size_t n, Arithmetic arithmetic) {
  TimeSeries ts;
  ts.s0 = s0;
  ts.arithmetic = resolve(arithmetic, p);
  ts.values.reserve(n + 1);
  run_orbit(p, Seed::at(s0), n, ts.arithmetic, [&](const OrbitPoint& pt) {
    ts.values.push_back(pt.value);
    return true;
  });
  return ts;
}

double replay_defect(const ProcessParams& p, const TimeSeries& ts) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < ts.values.size(); ++i) {
    worst = std::max(worst, std::abs(ts.values[i + 1] - step(p, ts.values[i])));
  }
  return worst;
}

}  // namespace savchaos
