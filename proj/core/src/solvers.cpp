#include "axgd/solvers.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "axgd/error.hpp"

namespace axgd {

namespace {

// A/A+ x + a/A+ y. Every stepper goes through this one expression so the
// implicit stepper with two sweeps reproduces AXGD bit for bit.
Vector Mix(double A, double a, double A_next, const Vector& x,
           const Vector& y) {
  return (A / A_next) * x + (a / A_next) * y;
}

void RequireFinite(const Vector& v, const char* what, long iteration) {
  if (!v.allFinite()) {
    throw NumericDomainError(std::string("non-finite ") + what, iteration);
  }
}

double ResolveSmoothness(const FunctionOracle& oracle,
                         std::optional<double> smoothness) {
  if (smoothness) {
    if (!(*smoothness > 0.0)) throw UsageError("L must be positive");
    return *smoothness;
  }
  if (!oracle.info().smoothness) {
    throw UsageError(
        "gradient step needs L; the oracle has no smoothness metadata");
  }
  return *oracle.info().smoothness;
}

Vector GradFromGradient(double smoothness, const Vector& x, const Vector& g,
                        const Domain& domain) {
  return project(domain, x - g / smoothness);
}

}  // namespace

SolverState init_state(const Vector& x0, const ProxSetup& setup) {
  if (!setup.domain().contains(x0, 1e-12)) {
    throw UsageError("initial point is outside the domain");
  }
  SolverState s;
  s.z = setup.grad_psi(x0);
  s.x = x0;
  s.x_hat = x0;
  s.z_hat = s.z;
  s.x_grad_point = x0;
  s.A = 0.0;
  s.k = 0;
  return s;
}

StepResult axgd_step(const SolverState& state, const FunctionOracle& oracle,
                     const ProxSetup& setup, const StepSchedule& schedule) {
  const long iteration = state.k + 1;
  const double a = schedule.weight(iteration);
  const double A_next = state.A + a;

  StepResult r;
  r.a = a;
  r.z_prev = state.z;
  SolverState& next = r.state;

  next.x_hat = Mix(state.A, a, A_next, state.x, setup.grad_psi_star(state.z));
  r.gradient_hat = eval_gradient(oracle, next.x_hat);
  next.z_hat = state.z - a * r.gradient_hat;
  next.x = Mix(state.A, a, A_next, state.x, setup.grad_psi_star(next.z_hat));
  r.gradient = eval_gradient(oracle, next.x);
  next.z = state.z - a * r.gradient;
  RequireFinite(next.x, "AXGD iterate", iteration);
  RequireFinite(next.z, "AXGD dual iterate", iteration);

  next.x_grad_point = next.x;
  next.A = A_next;
  next.k = iteration;
  r.hyperplane_point = next.x;
  r.upper_point = next.x;
  r.gradient_queries = 2;
  return r;
}

StepResult agd_step(const SolverState& state, const FunctionOracle& oracle,
                    const ProxSetup& setup, const StepSchedule& schedule,
                    std::optional<double> smoothness) {
  const double L = ResolveSmoothness(oracle, smoothness);
  const long iteration = state.k + 1;
  const double a = schedule.weight(iteration);
  const double A_next = state.A + a;

  StepResult r;
  r.a = a;
  r.z_prev = state.z;
  SolverState& next = r.state;

  next.x = Mix(state.A, a, A_next, state.x_grad_point,
               setup.grad_psi_star(state.z));
  r.gradient = eval_gradient(oracle, next.x);
  next.z = state.z - a * r.gradient;
  // Grad issues its own query so noisy oracles draw independent noise.
  next.x_grad_point = grad_step(oracle, L, next.x, setup.domain());
  RequireFinite(next.x_grad_point, "AGD iterate", iteration);
  RequireFinite(next.z, "AGD dual iterate", iteration);

  next.x_hat = next.x;
  next.z_hat = next.z;
  next.A = A_next;
  next.k = iteration;
  r.hyperplane_point = next.x;
  r.upper_point = next.x_grad_point;
  r.gradient_queries = 2;
  return r;
}

Vector grad_step(const FunctionOracle& oracle, double smoothness,
                 const Vector& x, const Domain& domain) {
  if (!(smoothness > 0.0)) throw UsageError("grad_step: L must be positive");
  return GradFromGradient(smoothness, x, eval_gradient(oracle, x), domain);
}

std::vector<Vector> gd_run(const FunctionOracle& oracle, double smoothness,
                           const Vector& x0, const Domain& domain, long steps) {
  if (steps < 1) throw UsageError("gd_run: steps must be >= 1");
  std::vector<Vector> iterates;
  iterates.reserve(static_cast<std::size_t>(steps) + 1);
  iterates.push_back(x0);
  for (long k = 1; k <= steps; ++k) {
    iterates.push_back(grad_step(oracle, smoothness, iterates.back(), domain));
  }
  return iterates;
}

ImplicitStepResult implicit_euler_step(const SolverState& state,
                                       const FunctionOracle& oracle,
                                       const ProxSetup& setup,
                                       const StepSchedule& schedule,
                                       double tol, int max_inner) {
  if (!(tol >= 0.0)) throw UsageError("implicit step: tol must be >= 0");
  if (max_inner < 2) throw UsageError("implicit step: max_inner must be >= 2");
  const long iteration = state.k + 1;
  const double a = schedule.weight(iteration);
  const double A_next = state.A + a;

  ImplicitStepResult out;
  StepResult& r = out.step;
  InnerReport& report = out.report;
  r.a = a;
  r.z_prev = state.z;
  SolverState& next = r.state;

  // Sweep 1 is the predictor; each further sweep re-evaluates the gradient
  // at the previous sweep's point.
  Vector previous = Mix(state.A, a, A_next, state.x, setup.grad_psi_star(state.z));
  Vector current;
  Vector z_trial;
  Vector g_trial;
  int queries = 0;
  for (int sweep = 2; sweep <= max_inner; ++sweep) {
    g_trial = eval_gradient(oracle, previous);
    ++queries;
    z_trial = state.z - a * g_trial;
    current = Mix(state.A, a, A_next, state.x, setup.grad_psi_star(z_trial));
    RequireFinite(current, "implicit-Euler inner iterate", iteration);
    report.iterations = sweep - 1;
    report.residual = setup.norm(current - previous);
    if (report.residual <= tol) {
      report.converged = true;
      break;
    }
    if (sweep < max_inner) previous = std::move(current);
  }

  next.x_hat = previous;
  next.z_hat = z_trial;
  r.gradient_hat = g_trial;
  next.x = current;
  r.gradient = eval_gradient(oracle, next.x);
  ++queries;
  next.z = state.z - a * r.gradient;
  RequireFinite(next.z, "implicit-Euler dual iterate", iteration);

  next.x_grad_point = next.x;
  next.A = A_next;
  next.k = iteration;
  r.hyperplane_point = next.x;
  r.upper_point = next.x;
  r.gradient_queries = queries;
  return out;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::kAxgd:
      return "axgd";
    case Method::kAgd:
      return "agd";
    case Method::kGd:
      return "gd";
    case Method::kImplicit:
      return "implicit";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "axgd") return Method::kAxgd;
  if (name == "agd") return Method::kAgd;
  if (name == "gd") return Method::kGd;
  if (name == "implicit") return Method::kImplicit;
  throw UsageError("unknown method '" + name + "'");
}

std::optional<int> queries_per_step(Method method) {
  switch (method) {
    case Method::kAxgd:
    case Method::kAgd:
      return 2;
    case Method::kGd:
      return 1;
    case Method::kImplicit:
      return std::nullopt;
  }
  return std::nullopt;
}

RunResult run(Method method, const FunctionOracle& oracle,
              const ProxSetup& setup, const StepSchedule& schedule,
              const Vector& x0, long steps, const Observer& observer,
              const RunOptions& options) {
  if (steps < 1) throw UsageError("run: steps must be >= 1");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  RunResult result;
  SolverState state = init_state(x0, setup);
  const double L = method == Method::kAgd || method == Method::kGd
                       ? ResolveSmoothness(oracle, options.smoothness)
                       : 0.0;
  long queries = 0;
  if (options.keep_records) result.records.reserve(static_cast<std::size_t>(steps));

  for (long k = 1; k <= steps; ++k) {
    IterationRecord rec;
    rec.k = k;
    switch (method) {
      case Method::kAxgd:
      case Method::kAgd:
      case Method::kImplicit: {
        StepResult step;
        if (method == Method::kAxgd) {
          step = axgd_step(state, oracle, setup, schedule);
        } else if (method == Method::kAgd) {
          step = agd_step(state, oracle, setup, schedule, L);
        } else {
          ImplicitStepResult ir = implicit_euler_step(
              state, oracle, setup, schedule, options.inner_tol,
              options.max_inner);
          rec.inner = ir.report;
          step = std::move(ir.step);
        }
        rec.a = step.a;
        rec.hyperplane_point = step.hyperplane_point;
        rec.gradient = step.gradient;
        rec.upper_point = step.upper_point;
        queries += step.gradient_queries;
        if (method != Method::kAgd) {
          rec.z_prev = std::move(step.z_prev);
          rec.z_hat = step.state.z_hat;
          rec.z_next = step.state.z;
          rec.gradient_hat = std::move(step.gradient_hat);
        }
        state = std::move(step.state);
        break;
      }
      case Method::kGd: {
        const double a = schedule.weight(k);
        rec.a = a;
        rec.hyperplane_point = state.x;
        rec.gradient = eval_gradient(oracle, state.x);
        ++queries;
        Vector next = GradFromGradient(L, state.x, rec.gradient, setup.domain());
        RequireFinite(next, "GD iterate", k);
        state.z -= a * rec.gradient;
        state.A += a;
        state.k = k;
        state.x = next;
        state.x_hat = next;
        state.x_grad_point = std::move(next);
        rec.upper_point = state.x;
        break;
      }
    }
    rec.A = state.A;
    rec.hyperplane_value = eval_value(oracle, rec.hyperplane_point);
    rec.upper_value = method == Method::kAxgd || method == Method::kImplicit
                          ? rec.hyperplane_value
                          : eval_value(oracle, rec.upper_point);
    rec.grad_queries = queries;
    if (options.record_wall_time) {
      rec.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                             Clock::now() - start)
                             .count();
    }
    if (observer) observer(rec);
    if (options.keep_records) result.records.push_back(std::move(rec));
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace axgd
