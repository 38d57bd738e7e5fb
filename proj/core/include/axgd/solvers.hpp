#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "axgd/mirror_maps.hpp"
#include "axgd/oracle.hpp"
#include "axgd/schedules.hpp"

namespace axgd {

// Iterate bundle shared by the AXGD, AGD and implicit-Euler steppers.
//
//   x             primal iterate x^(k)
//   z             dual accumulator z^(k) = grad psi(x0) - sum a_i grad f(x^(i))
//   x_hat, z_hat  AXGD intermediate point of the last step
//   x_grad_point  AGD output point Grad(x^(k))
//   A             running weight sum A_k (A_0 = 0)
struct SolverState {
  Vector x;
  Vector z;
  Vector x_hat;
  Vector z_hat;
  Vector x_grad_point;
  double A = 0.0;
  long k = 0;
};

/// z = grad psi(x0), A = 0, k = 0, x = x_hat = x_grad_point = x0.
/// Throws UsageError when x0 is outside the domain and NumericDomainError
/// when x0 lies on the entropy boundary.
SolverState init_state(const Vector& x0, const ProxSetup& setup);

// What one step did, beyond the new state.
struct StepResult {
  SolverState state;
  double a = 0.0;              // a_{k+1}
  Vector z_prev;               // z^(k)
  Vector hyperplane_point;     // point whose gradient entered z
  Vector gradient;             // that gradient
  Vector gradient_hat;         // grad f(x_hat) (extra-gradient steppers only)
  Vector upper_point;          // point whose value is the upper bound
  int gradient_queries = 0;
};

/// One AXGD iteration with a = a_{k+1}, A+ = A + a:
///   x_hat = A/A+ x + a/A+ grad psi*(z),   z_hat = z - a grad f(x_hat)
///   x+    = A/A+ x + a/A+ grad psi*(z_hat), z+ = z - a grad f(x+)
StepResult axgd_step(const SolverState& state, const FunctionOracle& oracle,
                     const ProxSetup& setup, const StepSchedule& schedule);

/// One AGD iteration; the gradient step uses `smoothness` (defaults to the
/// oracle's L metadata) and the l2 norm in every geometry.
///   x+ = A/A+ x_grad + a/A+ grad psi*(z),  z+ = z - a grad f(x+),
///   x_grad+ = Grad(x+)
StepResult agd_step(const SolverState& state, const FunctionOracle& oracle,
                    const ProxSetup& setup, const StepSchedule& schedule,
                    std::optional<double> smoothness = std::nullopt);

/// argmin_{y in X} <grad f(x), y - x> + L/2 |y - x|_2^2.
Vector grad_step(const FunctionOracle& oracle, double smoothness,
                 const Vector& x, const Domain& domain);

/// Iterates x0, x1, ..., x_steps of repeated grad_step.
std::vector<Vector> gd_run(const FunctionOracle& oracle, double smoothness,
                           const Vector& x0, const Domain& domain, long steps);

struct InnerReport {
  int iterations = 0;       // corrector sweeps after the predictor
  double residual = 0.0;    // primal-norm change of the last sweep
  bool converged = false;
};

struct ImplicitStepResult {
  StepResult step;
  InnerReport report;
};

inline constexpr double kDefaultInnerTolerance = 1e-12;
inline constexpr int kDefaultMaxInner = 50;

/// Fixed-point solve of x+ = A/A+ x + a/A+ grad psi*(z - a grad f(x+)),
/// started from the AXGD predictor. `max_inner` caps the total number of
/// sweeps including the predictor, so max_inner = 2 is exactly axgd_step.
/// Non-convergence is reported, not thrown.
ImplicitStepResult implicit_euler_step(const SolverState& state,
                                       const FunctionOracle& oracle,
                                       const ProxSetup& setup,
                                       const StepSchedule& schedule,
                                       double tol = kDefaultInnerTolerance,
                                       int max_inner = kDefaultMaxInner);

enum class Method { kAxgd, kAgd, kGd, kImplicit };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

/// Gradient queries per iteration; the implicit stepper varies.
std::optional<int> queries_per_step(Method method);

// Per-iteration record passed to observers.
struct IterationRecord {
  long k = 0;
  double a = 0.0;
  double A = 0.0;
  Vector hyperplane_point;
  double hyperplane_value = 0.0;
  Vector gradient;
  Vector upper_point;
  double upper_value = 0.0;
  long grad_queries = 0;  // cumulative
  long wall_time_ns = 0;  // cumulative, 0 unless RunOptions::record_wall_time
  // Extra-gradient internals (AXGD / implicit); empty otherwise.
  Vector z_prev;
  Vector z_hat;
  Vector z_next;
  Vector gradient_hat;
  std::optional<InnerReport> inner;
};

using Observer = std::function<void(const IterationRecord&)>;

struct RunOptions {
  std::optional<double> smoothness;  // Grad/GD step; defaults to oracle's L
  double inner_tol = kDefaultInnerTolerance;
  int max_inner = kDefaultMaxInner;
  bool record_wall_time = false;
  bool keep_records = true;
};

struct RunResult {
  SolverState final_state;
  std::vector<IterationRecord> records;
};

/// Drives `steps` iterations of `method` from x0, calling `observer` once per
/// iteration. GD uses the schedule only for the certificate weights.
RunResult run(Method method, const FunctionOracle& oracle,
              const ProxSetup& setup, const StepSchedule& schedule,
              const Vector& x0, long steps, const Observer& observer = {},
              const RunOptions& options = {});

}  // namespace axgd
