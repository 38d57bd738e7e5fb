#include "axgd/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axgd/error.hpp"

namespace axgd {

AlphaSpec AlphaSpec::quadratic() {
  return {[](double t) { return t * t; }, [](double t) { return 2.0 * t; }};
}

std::vector<FlowSample> integrate_amd_flow(
    const FunctionOracle& oracle, const ProxSetup& setup,
    const AlphaSpec& alpha, const Vector& x0, const FlowOptions& options,
    const std::optional<ReferenceOptimum>& reference) {
  if (!(options.dt > 0.0)) throw UsageError("flow: dt must be positive");
  if (!(options.t_end >= options.t0)) throw UsageError("flow: t_end < t0");
  if (options.sample_every < 1) throw UsageError("flow: sample_every < 1");
  const double nan = std::numeric_limits<double>::quiet_NaN();

  const double alpha0 = alpha.alpha(options.t0);
  Vector x = x0;
  Vector z = setup.grad_psi(x0);
  const Vector z0 = z;
  const double penalty =
      reference ? bregman(setup, reference->point, x0) : nan;

  // Riemann sums of the lower-bound integrals, accumulated with the same
  // increments that drive z, so z = z0 - grad_sum at every step.
  double mass = 0.0;
  double sum_af = 0.0;
  double sum_gx = 0.0;
  Vector grad_sum = Vector::Zero(x0.size());

  std::vector<FlowSample> out;
  const long steps =
      std::lround(std::floor((options.t_end - options.t0) / options.dt + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double t = options.t0 + static_cast<double>(i) * options.dt;
    const double alpha_t = alpha.alpha(t);
    const double fx = eval_value(oracle, x);
    const Vector g = eval_gradient(oracle, x);

    if (i % options.sample_every == 0 || i == steps) {
      FlowSample s;
      s.t = t;
      s.x = x;
      s.z = z;
      s.f = fx;
      if (reference) {
        const Vector u = setup.grad_psi_star(z0 - grad_sum);
        const double inner = grad_sum.dot(u) - sum_gx + bregman(setup, u, x0);
        const double scaled_lower =
            sum_af + inner + (alpha_t - mass) * reference->value - penalty;
        s.upper = fx;
        s.lower = scaled_lower / alpha_t;
        s.gap = s.upper - s.lower;
        s.alpha_gap = alpha_t * fx - scaled_lower;
        s.rate_bound = (alpha0 * (eval_value(oracle, x0) - reference->value) +
                        penalty) /
                       alpha_t;
      } else {
        s.upper = fx;
        s.lower = s.gap = s.alpha_gap = s.rate_bound = nan;
      }
      out.push_back(std::move(s));
    }
    if (i == steps) break;

    const double w = alpha.alpha_dot(t) * options.dt;
    mass += w;
    sum_af += w * fx;
    sum_gx += w * g.dot(x);
    grad_sum += w * g;
    const Vector x_next = x + w * (setup.grad_psi_star(z) - x) / alpha_t;
    z -= w * g;
    x = x_next;
    if (!x.allFinite() || !z.allFinite()) {
      throw NumericDomainError("flow: non-finite state", i + 1);
    }
  }
  return out;
}

double certificate_violation(const std::vector<FlowSample>& trajectory) {
  if (trajectory.empty()) return 0.0;
  const double base = trajectory.front().alpha_gap;
  double worst = 0.0;
  for (const auto& s : trajectory) worst = std::max(worst, s.alpha_gap - base);
  return worst;
}

}  // namespace axgd
