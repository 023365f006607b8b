#include "subfeas/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subfeas/errors.hpp"

namespace subfeas {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_step(double a, const char* what) {
  if (!std::isfinite(a) || a < 0.0) {
    throw PreconditionError(std::string(what) + ": step sizes must be finite and nonnegative");
  }
}

// Smallest n >= 1 with n * d > remaining, or empty past the cap.
std::optional<std::uint64_t> constant_tail_count(double remaining, double d, std::uint64_t cap) {
  if (remaining < 0.0) return 1;
  if (d <= 0.0) return std::nullopt;
  const double n = std::floor(remaining / d) + 1.0;
  if (!(n <= static_cast<double>(cap))) return std::nullopt;
  return static_cast<std::uint64_t>(n);
}

// psi(x) - psi(y) and psi'(x) for x, y >= kAsymptoticStart via the
// asymptotic series; the truncation error is below 1e-30 there.
double digamma_difference(double x, double y) {
  auto tail = [](double t) { return -1.0 / (2 * t) - 1.0 / (12 * t * t) + 1.0 / (120 * t * t * t * t); };
  return std::log1p((x - y) / y) + tail(x) - tail(y);
}

double trigamma(double x) { return 1.0 / x + 1.0 / (2 * x * x) + 1.0 / (6 * x * x * x) - 1.0 / (30 * std::pow(x, 5)); }

constexpr std::uint64_t kAsymptoticStart = 1ULL << 20;

// Harmonic steps: explicit partial sums until the deltas are positive and
// k >= kAsymptoticStart, then bisection on the closed-form tail
//   S(n) = S(N) + 2 sigma (psi(n+c) - psi(N+c)) - L^2 (psi'(N+c) - psi'(n+c)),
// which is increasing in n once every delta_k > 0.
std::optional<std::uint64_t> harmonic_bound(double dist, double c, const SlaterCertificate& cert) {
  const double two_sigma = 2.0 * cert.sigma;
  const double L2 = cert.L * cert.L;
  auto d = [&](std::uint64_t k) {
    const double a = 1.0 / (static_cast<double>(k) + c);
    return a * (two_sigma - a * L2);
  };
  const double first_positive = std::max(0.0, std::ceil(L2 / two_sigma - c) + 1.0);
  const std::uint64_t explicit_end =
      first_positive >= static_cast<double>(kIterationBoundCap)
          ? kIterationBoundCap
          : std::min(kIterationBoundCap, std::max(kAsymptoticStart, static_cast<std::uint64_t>(first_positive)));

  double sum = 0.0;
  std::uint64_t k = 0;
  for (; k < explicit_end; ++k) {
    sum += d(k);
    if (sum > dist) return k + 1;
  }
  if (k >= kIterationBoundCap) return std::nullopt;

  const double base = static_cast<double>(k) + c;
  auto partial = [&](std::uint64_t n) {
    const double top = static_cast<double>(n) + c;
    return sum + two_sigma * digamma_difference(top, base) - L2 * (trigamma(base) - trigamma(top));
  };
  if (!(partial(kIterationBoundCap) > dist)) return std::nullopt;
  std::uint64_t lo = k, hi = kIterationBoundCap;  // partial(lo) <= dist < partial(hi)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (partial(mid) > dist) hi = mid;
    else lo = mid;
  }
  return hi;
}

}  // namespace

StepSchedule::StepSchedule(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const ConstantStep& c) { require_step(c.alpha, "constant"); },
                 [](const HarmonicStep& h) {
                   if (!std::isfinite(h.offset) || h.offset <= 0.0)
                     throw PreconditionError("harmonic: offset must be positive");
                 },
                 [](const ExplicitSteps& e) {
                   for (double a : e.alphas) require_step(a, "explicit");
                   if (e.alphas.empty() && e.tail == TailRule::repeat_last)
                     throw PreconditionError("explicit: repeat_last needs at least one step");
                 },
                 [](const NormalizedStep& n) {
                   if (!n.inner) throw PreconditionError("normalized: missing inner schedule");
                 },
             },
             kind_);
}

StepSchedule StepSchedule::constant(double a) { return StepSchedule(ConstantStep{a}); }
StepSchedule StepSchedule::harmonic(double offset) { return StepSchedule(HarmonicStep{offset}); }
StepSchedule StepSchedule::explicit_list(std::vector<double> alphas, TailRule tail) {
  return StepSchedule(ExplicitSteps{std::move(alphas), tail});
}
StepSchedule StepSchedule::normalized(StepSchedule inner) {
  return StepSchedule(NormalizedStep{std::make_shared<const StepSchedule>(std::move(inner))});
}

std::string StepSchedule::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const ConstantStep& c) { os << "constant:" << c.alpha; },
                 [&](const HarmonicStep& h) { os << "harmonic:" << h.offset; },
                 [&](const ExplicitSteps& e) {
                   os << "explicit[" << e.alphas.size() << " steps, tail="
                      << (e.tail == TailRule::none ? "none" : e.tail == TailRule::zero ? "zero" : "repeat_last")
                      << "]";
                 },
                 [&](const NormalizedStep& n) { os << "normalized:" << n.inner->describe(); },
             },
             kind_);
  return os.str();
}

double alpha(const StepSchedule& sched, std::uint64_t k, double g_norm) {
  return std::visit(overloaded{
                        [](const ConstantStep& c) { return c.alpha; },
                        [k](const HarmonicStep& h) { return 1.0 / (static_cast<double>(k) + h.offset); },
                        [k](const ExplicitSteps& e) {
                          if (k < e.alphas.size()) return e.alphas[k];
                          switch (e.tail) {
                            case TailRule::repeat_last:
                              return e.alphas.back();
                            case TailRule::zero:
                              return 0.0;
                            case TailRule::none:
                              break;
                          }
                          throw ScheduleExhausted("explicit schedule exhausted at step " + std::to_string(k) +
                                                  " (" + std::to_string(e.alphas.size()) + " steps given)");
                        },
                        [k, g_norm](const NormalizedStep& n) {
                          return alpha(*n.inner, k, g_norm) / std::max(1.0, g_norm);
                        },
                    },
                    sched.kind());
}

double delta_for_alpha(double a, const SlaterCertificate& cert) {
  return a * (2.0 * cert.sigma - a * cert.L * cert.L);
}

double delta(const StepSchedule& sched, std::uint64_t k, const SlaterCertificate& cert, double g_norm) {
  return delta_for_alpha(alpha(sched, k, g_norm), cert);
}

double delta(const StepSchedule& sched, std::uint64_t k, const std::optional<SlaterCertificate>& cert,
             double g_norm) {
  if (!cert) throw PreconditionError("delta requires a Slater certificate");
  return delta(sched, k, *cert, g_norm);
}

bool validate_constant(double a, const SlaterCertificate& cert) {
  return a > 0.0 && a < 2.0 * cert.sigma / (cert.L * cert.L);
}

std::optional<std::uint64_t> iteration_bound(const Vector& x0, const SlaterCertificate& cert,
                                             const StepSchedule& sched) {
  if (sched.depends_on_gradient()) return std::nullopt;
  const double dist = distance_sq(x0, cert.s);

  if (const auto* c = std::get_if<ConstantStep>(&sched.kind())) {
    return constant_tail_count(dist, delta_for_alpha(c->alpha, cert), kIterationBoundCap);
  }

  if (const auto* h = std::get_if<HarmonicStep>(&sched.kind())) return harmonic_bound(dist, h->offset, cert);

  const auto* list = std::get_if<ExplicitSteps>(&sched.kind());
  const std::uint64_t listed = list->alphas.size();

  double sum = 0.0;
  for (std::uint64_t n = 0; n < std::min(listed, kIterationBoundCap); ++n) {
    sum += delta(sched, n, cert);
    if (sum > dist) return n + 1;
  }
  if (list->tail == TailRule::repeat_last && listed < kIterationBoundCap) {
    const auto more = constant_tail_count(dist - sum, delta_for_alpha(list->alphas.back(), cert),
                                          kIterationBoundCap - listed);
    if (more) return listed + *more;
  }
  return std::nullopt;
}

}  // namespace subfeas
