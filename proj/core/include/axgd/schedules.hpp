#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace axgd {

enum class ScheduleKind { kSmooth, kHoelder, kLipschitz, kCustom };

std::string to_string(ScheduleKind kind);

// Constants a schedule was built from; unused entries stay empty.
struct ScheduleParams {
  std::optional<double> sigma;
  std::optional<double> smoothness;       // L
  std::optional<double> holder_exponent;  // nu
  std::optional<double> holder_constant;  // L_nu
  std::optional<double> diameter;         // D
  std::optional<double> c;                // leading constant actually used
  std::optional<double> lipschitz;        // L for the Lipschitz regime
  std::optional<double> radius;           // R >= D_psi(x*, x0)
};

// Step weights a_k (k >= 1). A_k is always the literal running sum of the
// emitted weights, A_0 = 0; see running_sums.
class StepSchedule {
 public:
  using WeightFn = std::function<double(long)>;

  StepSchedule(ScheduleKind kind, ScheduleParams params, WeightFn weight);

  ScheduleKind kind() const { return kind_; }
  const ScheduleParams& params() const { return params_; }

  // a_k for k >= 1. Throws UsageError for k < 1 or a nonpositive weight.
  double weight(long k) const;

  // {A_0, A_1, ..., A_kmax}.
  std::vector<double> running_sums(long k_max) const;

 private:
  ScheduleKind kind_;
  ScheduleParams params_;
  WeightFn weight_;
};

/// a_k = (k+1)/2 * sigma/L.
StepSchedule smooth_schedule(double sigma, double smoothness);

/// Leading constant as originally stated for the Hoelder rate, 2^((3nu(nu+1)-1)/2).
double hoelder_original_constant(double nu);

/// Default leading constant 2^(-(3nu(nu+1)+1)/2): the largest dyadic c with
/// c^2 2^(3nu(nu+1)) <= 1/2, which is what the nonpositivity step of the
/// proof needs. hoelder_original_constant is available through c_override.
double hoelder_default_constant(double nu);

/// a_k = c * sigma/L_nu * D^(1-nu) * k^((3nu-1)/2).
StepSchedule hoelder_schedule(double sigma, double holder_constant, double nu,
                              double diameter,
                              std::optional<double> c_override = std::nullopt);

/// a_k = sqrt(sigma) / (2 sqrt(2) L) * sqrt(R / k). The convergence
/// guarantee for this schedule assumes sigma >= L; that is not enforced.
StepSchedule lipschitz_schedule(double sigma, double lipschitz, double radius);

StepSchedule custom_schedule(StepSchedule::WeightFn weight);

/// True iff a_k^2 / A_k <= sigma/L + 1e-12 for all 1 <= k <= k_max.
bool validate_smooth_condition(const StepSchedule& schedule, long k_max,
                               double sigma, double smoothness);

}  // namespace axgd
