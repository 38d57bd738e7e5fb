#pragma once

#include <optional>
#include <span>
#include <utility>

#include "axgd/mirror_maps.hpp"
#include "axgd/oracle.hpp"
#include "axgd/solvers.hpp"

namespace axgd {

// Running sums behind the regularized lower bound
//
//   A_k L_k = sum a_i f(x_i) + min_u { sum a_i <g_i, u - x_i> + D_psi(u, x0) }
//             - penalty,
//
// whose minimizer is u* = grad psi*(z_anchor - grad_sum). With a discrete
// weight measure the f(x*) mixing term of the continuous-time bound is zero.
struct GapAccumulator {
  double sum_af = 0.0;    // sum a_i f(x_i)
  Vector grad_sum;        // sum a_i g_i
  double sum_a_gx = 0.0;  // sum a_i <g_i, x_i>
  double A = 0.0;         // sum a_i
  Vector x_anchor;        // x_hat^(0)
  Vector z_anchor;        // grad psi(x_hat^(0))

  GapAccumulator() = default;
  GapAccumulator(const Vector& x0, const ProxSetup& setup);

  void update(double a, const Vector& x, const Vector& g, double fx);

  // z_anchor - grad_sum; equals the solver's z_k.
  Vector dual_point() const { return z_anchor - grad_sum; }
};

// Functional form of GapAccumulator::update.
GapAccumulator update(GapAccumulator acc, double a, const Vector& x,
                      const Vector& g, double fx);

// How the unobservable D_psi(x*, x0) term of the lower bound is supplied.
struct GapMode {
  enum class Variant { kOracleOptimum, kRadiusBound };

  Variant variant = Variant::kOracleOptimum;
  Vector x_star;
  double f_star = 0.0;
  double radius = 0.0;  // R >= D_psi(x*, x0)

  static GapMode oracle_optimum(Vector x_star, double f_star);
  static GapMode radius_bound(double radius);
};

/// D_psi(x*, x_anchor) or R.
double penalty(const GapAccumulator& acc, const ProxSetup& setup,
               const GapMode& mode);

/// U_k = f(x_k).
inline double upper_bound(double fx_k) { return fx_k; }

/// A_k * L_k, without the final division.
double scaled_lower_bound(const GapAccumulator& acc, const ProxSetup& setup,
                          const GapMode& mode);

/// L_k. Throws UsageError before the first update.
double lower_bound(const GapAccumulator& acc, const ProxSetup& setup,
                   const GapMode& mode);

inline double gap(double upper, double lower) { return upper - lower; }

/// E_{k+1} = A_{k+1} G_{k+1} - A_k G_k.
inline double discretization_error(double A_prev, double G_prev, double A_next,
                                   double G_next) {
  return A_next * G_next - A_prev * G_prev;
}

/// True iff A_{k+1}G_{k+1} <= A_kG_k + tolerance |A_kG_k| for consecutive
/// entries of `series` = (A_k, G_k).
bool check_invariance(std::span<const std::pair<double, double>> series,
                      double tolerance);

/// Upper bound on E_{k+1} for an extra-gradient step:
///   a <g_next - g_hat, grad psi*(z_hat) - grad psi*(z_next)>
///   - D_psi*(z_hat, z_next) - D_psi*(z, z_hat).
double extragradient_error_bound(const ProxSetup& setup, double a,
                                 const Vector& g_next, const Vector& g_hat,
                                 const Vector& z, const Vector& z_hat,
                                 const Vector& z_next);

// One row of certificate bookkeeping per iteration.
struct GapRow {
  long k = 0;
  double a = 0.0;
  double A = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double gap = 0.0;
  double scaled_gap = 0.0;   // A_k G_k
  double error = 0.0;        // E_k; NaN at k = 1
  double exact_gap = 0.0;    // NaN without a reference value
  double error_bound = 0.0;  // extragradient_error_bound; NaN if unavailable
  double z_mismatch = 0.0;   // |dual_point - solver z|_inf; NaN if unavailable
};

// Feeds IterationRecords through a GapAccumulator and reports a GapRow per
// iteration.
class GapMonitor {
 public:
  GapMonitor(const ProxSetup& setup, const Vector& x0, GapMode mode,
             std::optional<double> f_star = std::nullopt);

  GapRow observe(const IterationRecord& record);

  // Same, with the exact gap measured as exact_value - f_star instead of
  // the record's upper value (used when the exact-gap objective differs).
  GapRow observe(const IterationRecord& record, double exact_value);

  const GapAccumulator& accumulator() const { return acc_; }

 private:
  ProxSetup setup_;
  GapMode mode_;
  std::optional<double> f_star_;
  GapAccumulator acc_;
  std::optional<double> previous_scaled_gap_;
};

}  // namespace axgd
