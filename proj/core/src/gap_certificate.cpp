#include "axgd/gap_certificate.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "axgd/error.hpp"

namespace axgd {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

GapAccumulator::GapAccumulator(const Vector& x0, const ProxSetup& setup)
    : grad_sum(Vector::Zero(x0.size())),
      x_anchor(x0),
      z_anchor(setup.grad_psi(x0)) {}

void GapAccumulator::update(double a, const Vector& x, const Vector& g,
                            double fx) {
  if (!(a > 0.0)) throw UsageError("gap update: weight must be positive");
  sum_af += a * fx;
  grad_sum += a * g;
  sum_a_gx += a * g.dot(x);
  A += a;
}

GapAccumulator update(GapAccumulator acc, double a, const Vector& x,
                      const Vector& g, double fx) {
  acc.update(a, x, g, fx);
  return acc;
}

GapMode GapMode::oracle_optimum(Vector x_star, double f_star) {
  GapMode m;
  m.variant = Variant::kOracleOptimum;
  m.x_star = std::move(x_star);
  m.f_star = f_star;
  return m;
}

GapMode GapMode::radius_bound(double radius) {
  if (!(radius >= 0.0)) throw UsageError("radius bound must be >= 0");
  GapMode m;
  m.variant = Variant::kRadiusBound;
  m.radius = radius;
  return m;
}

double penalty(const GapAccumulator& acc, const ProxSetup& setup,
               const GapMode& mode) {
  if (mode.variant == GapMode::Variant::kRadiusBound) return mode.radius;
  return bregman(setup, mode.x_star, acc.x_anchor);
}

double scaled_lower_bound(const GapAccumulator& acc, const ProxSetup& setup,
                          const GapMode& mode) {
  if (!(acc.A > 0.0)) {
    throw UsageError("lower bound needs at least one update (A > 0)");
  }
  const Vector u = setup.grad_psi_star(acc.dual_point());
  const double linear = acc.grad_sum.dot(u) - acc.sum_a_gx;
  return acc.sum_af + linear + bregman(setup, u, acc.x_anchor) -
         penalty(acc, setup, mode);
}

double lower_bound(const GapAccumulator& acc, const ProxSetup& setup,
                   const GapMode& mode) {
  return scaled_lower_bound(acc, setup, mode) / acc.A;
}

bool check_invariance(std::span<const std::pair<double, double>> series,
                      double tolerance) {
  if (series.size() < 2) throw UsageError("invariance check needs >= 2 entries");
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double prev = series[i - 1].first * series[i - 1].second;
    const double next = series[i].first * series[i].second;
    if (next > prev + tolerance * std::abs(prev)) return false;
  }
  return true;
}

double extragradient_error_bound(const ProxSetup& setup, double a,
                                 const Vector& g_next, const Vector& g_hat,
                                 const Vector& z, const Vector& z_hat,
                                 const Vector& z_next) {
  const Vector diff =
      setup.grad_psi_star(z_hat) - setup.grad_psi_star(z_next);
  return a * (g_next - g_hat).dot(diff) -
         bregman_conjugate(setup, z_hat, z_next) -
         bregman_conjugate(setup, z, z_hat);
}

GapMonitor::GapMonitor(const ProxSetup& setup, const Vector& x0, GapMode mode,
                       std::optional<double> f_star)
    : setup_(setup), mode_(std::move(mode)), f_star_(f_star), acc_(x0, setup) {
  if (!f_star_ && mode_.variant == GapMode::Variant::kOracleOptimum) {
    f_star_ = mode_.f_star;
  }
}

GapRow GapMonitor::observe(const IterationRecord& record) {
  return observe(record, record.upper_value);
}

GapRow GapMonitor::observe(const IterationRecord& record, double exact_value) {
  acc_.update(record.a, record.hyperplane_point, record.gradient,
              record.hyperplane_value);
  GapRow row;
  row.k = record.k;
  row.a = record.a;
  row.A = acc_.A;
  row.upper = upper_bound(record.upper_value);
  const double scaled_lower = scaled_lower_bound(acc_, setup_, mode_);
  row.lower = scaled_lower / acc_.A;
  row.gap = gap(row.upper, row.lower);
  row.scaled_gap = acc_.A * row.upper - scaled_lower;
  row.error = previous_scaled_gap_ ? row.scaled_gap - *previous_scaled_gap_ : kNaN;
  previous_scaled_gap_ = row.scaled_gap;
  row.exact_gap = f_star_ ? exact_value - *f_star_ : kNaN;
  if (record.z_prev.size() > 0 && record.gradient_hat.size() > 0) {
    row.error_bound = extragradient_error_bound(
        setup_, record.a, record.gradient, record.gradient_hat, record.z_prev,
        record.z_hat, record.z_next);
  } else {
    row.error_bound = kNaN;
  }
  row.z_mismatch = record.z_next.size() > 0
                       ? (acc_.dual_point() - record.z_next)
                             .lpNorm<Eigen::Infinity>()
                       : kNaN;
  return row;
}

}  // namespace axgd
