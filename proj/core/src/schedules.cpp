#include "axgd/schedules.hpp"

#include <cmath>
#include <utility>

#include "axgd/error.hpp"

namespace axgd {

namespace {

void RequirePositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kSmooth:
      return "smooth";
    case ScheduleKind::kHoelder:
      return "hoelder";
    case ScheduleKind::kLipschitz:
      return "lipschitz";
    case ScheduleKind::kCustom:
      return "custom";
  }
  return "unknown";
}

StepSchedule::StepSchedule(ScheduleKind kind, ScheduleParams params,
                           WeightFn weight)
    : kind_(kind), params_(params), weight_(std::move(weight)) {}

double StepSchedule::weight(long k) const {
  if (k < 1) throw UsageError("schedule index must be >= 1");
  const double a = weight_(k);
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw UsageError("schedule produced a nonpositive weight at k=" +
                     std::to_string(k));
  }
  return a;
}

std::vector<double> StepSchedule::running_sums(long k_max) const {
  std::vector<double> sums(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (long k = 1; k <= k_max; ++k) sums[k] = sums[k - 1] + weight(k);
  return sums;
}

StepSchedule smooth_schedule(double sigma, double smoothness) {
  RequirePositive(sigma, "sigma");
  RequirePositive(smoothness, "L");
  ScheduleParams p;
  p.sigma = sigma;
  p.smoothness = smoothness;
  const double ratio = sigma / smoothness;
  return StepSchedule(ScheduleKind::kSmooth, p, [ratio](long k) {
    return 0.5 * static_cast<double>(k + 1) * ratio;
  });
}

double hoelder_original_constant(double nu) {
  return std::exp2((3.0 * nu * (nu + 1.0) - 1.0) / 2.0);
}

double hoelder_default_constant(double nu) {
  return std::exp2(-(3.0 * nu * (nu + 1.0) + 1.0) / 2.0);
}

StepSchedule hoelder_schedule(double sigma, double holder_constant, double nu,
                              double diameter,
                              std::optional<double> c_override) {
  RequirePositive(sigma, "sigma");
  RequirePositive(holder_constant, "L_nu");
  RequirePositive(diameter, "D");
  if (!(nu > 0.0 && nu <= 1.0)) throw UsageError("nu must lie in (0, 1]");
  if (c_override) RequirePositive(*c_override, "c_override");
  const double c = c_override ? *c_override : hoelder_default_constant(nu);
  ScheduleParams p;
  p.sigma = sigma;
  p.holder_constant = holder_constant;
  p.holder_exponent = nu;
  p.diameter = diameter;
  p.c = c;
  const double scale =
      c * sigma / holder_constant * std::pow(diameter, 1.0 - nu);
  const double exponent = (3.0 * nu - 1.0) / 2.0;
  return StepSchedule(ScheduleKind::kHoelder, p, [scale, exponent](long k) {
    return scale * std::pow(static_cast<double>(k), exponent);
  });
}

StepSchedule lipschitz_schedule(double sigma, double lipschitz, double radius) {
  RequirePositive(sigma, "sigma");
  RequirePositive(lipschitz, "L_lip");
  RequirePositive(radius, "R");
  ScheduleParams p;
  p.sigma = sigma;
  p.lipschitz = lipschitz;
  p.radius = radius;
  const double scale =
      std::sqrt(sigma) / (2.0 * std::sqrt(2.0) * lipschitz) * std::sqrt(radius);
  return StepSchedule(ScheduleKind::kLipschitz, p, [scale](long k) {
    return scale / std::sqrt(static_cast<double>(k));
  });
}

StepSchedule custom_schedule(StepSchedule::WeightFn weight) {
  return StepSchedule(ScheduleKind::kCustom, {}, std::move(weight));
}

bool validate_smooth_condition(const StepSchedule& schedule, long k_max,
                               double sigma, double smoothness) {
  if (k_max < 1) throw UsageError("k_max must be >= 1");
  const double limit = sigma / smoothness + 1e-12;
  double A = 0.0;
  for (long k = 1; k <= k_max; ++k) {
    const double a = schedule.weight(k);
    A += a;
    if (a * a / A > limit) return false;
  }
  return true;
}

}  // namespace axgd
