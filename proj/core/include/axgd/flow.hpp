#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "axgd/mirror_maps.hpp"
#include "axgd/oracle.hpp"

namespace axgd {

// Continuously differentiable, positive, increasing weight alpha(t).
struct AlphaSpec {
  std::function<double(double)> alpha;
  std::function<double(double)> alpha_dot;

  static AlphaSpec quadratic();  // alpha(t) = t^2
};

struct FlowSample {
  double t = 0.0;
  Vector x;
  Vector z;
  double f = 0.0;
  // Certificate terms; NaN when no reference optimum was supplied.
  double upper = 0.0;
  double lower = 0.0;
  double gap = 0.0;
  double alpha_gap = 0.0;  // alpha(t) G_t, constant along the exact flow
  // Right-hand side of the continuous-time rate bound at t.
  double rate_bound = 0.0;
};

struct FlowOptions {
  double t0 = 1.0;
  double t_end = 10.0;
  double dt = 1e-3;
  long sample_every = 1;
};

/// Forward-Euler integration of the accelerated mirror-descent dynamics
///   z' = -alpha' grad f(x),  x' = alpha' (grad psi*(z) - x) / alpha,
///   z(t0) = grad psi(x(t0)).
/// This is a diagnostic for the continuous-time analysis, not a solver.
std::vector<FlowSample> integrate_amd_flow(
    const FunctionOracle& oracle, const ProxSetup& setup,
    const AlphaSpec& alpha, const Vector& x0, const FlowOptions& options,
    const std::optional<ReferenceOptimum>& reference = std::nullopt);

/// max over samples of alpha(t) G_t - alpha(t0) G_t0, floored at 0. Zero for
/// the exact flow; forward Euler makes it O(dt).
double certificate_violation(const std::vector<FlowSample>& trajectory);

}  // namespace axgd
