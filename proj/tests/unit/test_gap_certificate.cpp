#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "axgd/error.hpp"
#include "axgd/gap_certificate.hpp"
#include "axgd/instances.hpp"
#include "axgd/schedules.hpp"
#include "axgd/solvers.hpp"

using namespace axgd;

namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

struct Case {
  ProblemInstance instance;
  ProxSetup setup;
  StepSchedule schedule;
  Vector x0;
  double L;
};

std::vector<Case> Cases() {
  std::vector<Case> out;
  out.push_back({random_quadratic_instance(8, 5.0, 17, Domain::unconstrained()),
                 euclidean_setup(5.0), smooth_schedule(5.0, 5.0), Vector::Ones(8), 5.0});
  out.push_back({cycle_quadratic_instance(12, Domain::simplex(), UnconstrainedMode::kDrift),
                 entropy_simplex_setup(4.0), smooth_schedule(4.0, 4.0),
                 Vector::Constant(12, 1.0 / 12), 4.0});
  out.push_back({random_quadratic_instance(6, 3.0, 2, Domain::box(-0.2, 0.2)),
                 euclidean_setup(3.0, Domain::box(-0.2, 0.2)), smooth_schedule(3.0, 3.0),
                 Vector::Zero(6), 3.0});
  return out;
}

}  // namespace

TEST(GapAccumulator, UpdateExamples) {
  const auto setup = euclidean_setup(1.0);
  GapAccumulator acc(V({0.0, 0.0}), setup);
  acc.update(1.0, V({1, 1}), V({0, 0}), 2.0);
  EXPECT_EQ(acc.sum_af, 2.0);
  EXPECT_EQ(acc.A, 1.0);
  EXPECT_EQ(acc.grad_sum, V({0, 0}));

  const GapAccumulator a = update(update(GapAccumulator(V({0, 0}), setup), 1.0, V({1, 2}),
                                         V({3, 4}), 5.0),
                                  2.0, V({-1, 0}), V({1, 1}), 1.0);
  const GapAccumulator b = update(update(GapAccumulator(V({0, 0}), setup), 2.0, V({-1, 0}),
                                         V({1, 1}), 1.0),
                                  1.0, V({1, 2}), V({3, 4}), 5.0);
  EXPECT_EQ(a.sum_af, b.sum_af);
  EXPECT_EQ(a.grad_sum, b.grad_sum);
  EXPECT_EQ(a.sum_a_gx, b.sum_a_gx);
  EXPECT_EQ(a.A, b.A);
  EXPECT_THROW(acc.update(0.0, V({1, 1}), V({0, 0}), 1.0), UsageError);
}

TEST(GapCertificate, HandEvaluatedLowerBound) {
  // One update on f = x^2/2 at x = 1, a = 1, Euclidean sigma = 1, anchor 1.
  const auto setup = euclidean_setup(1.0);
  GapAccumulator acc(V({1}), setup);
  acc.update(1.0, V({1}), V({1}), 0.5);
  const auto mode = GapMode::oracle_optimum(V({0}), 0.0);
  EXPECT_DOUBLE_EQ(lower_bound(acc, setup, mode), -0.5);
  EXPECT_DOUBLE_EQ(upper_bound(3.5), 3.5);
  EXPECT_DOUBLE_EQ(gap(1.0, -0.5), 1.5);
  EXPECT_DOUBLE_EQ(penalty(acc, setup, mode), 0.5);

  // Larger radius, smaller bound.
  EXPECT_LE(lower_bound(acc, setup, GapMode::radius_bound(0.7)),
            lower_bound(acc, setup, mode));
  EXPECT_THROW(GapMode::radius_bound(-1.0), UsageError);
  EXPECT_THROW(lower_bound(GapAccumulator(V({1}), setup), setup, mode), UsageError);
}

TEST(GapCertificate, DiscretizationErrorAndInvariance) {
  EXPECT_DOUBLE_EQ(discretization_error(1.0, 2.0, 2.0, 0.5), -1.0);
  const std::vector<std::pair<double, double>> good{{1, 4}, {2, 1.5}, {3, 0.9}};
  EXPECT_TRUE(check_invariance(good, 1e-9));
  auto bad = good;
  bad[2].second = 5.0;
  EXPECT_FALSE(check_invariance(bad, 1e-9));
  EXPECT_THROW(check_invariance(std::vector<std::pair<double, double>>{{1, 1}}, 1e-9),
               UsageError);
}

TEST(GapCertificate, SandwichForEveryMethod) {
  for (const auto& c : Cases()) {
    const auto& ref = *c.instance.reference;
    for (Method m : {Method::kAxgd, Method::kAgd, Method::kGd, Method::kImplicit}) {
      GapMonitor monitor(c.setup, c.x0, GapMode::oracle_optimum(ref.point, ref.value));
      RunOptions opt;
      opt.smoothness = c.L;
      opt.keep_records = false;
      const double slack = 1e-9 * std::max(1.0, std::abs(ref.value));
      run(m, c.instance.oracle, c.setup, c.schedule, c.x0, 300,
          [&](const IterationRecord& r) {
            const GapRow row = monitor.observe(r);
            ASSERT_LE(row.lower, ref.value + slack) << to_string(m) << " k=" << r.k;
            ASSERT_GE(row.upper, ref.value - slack) << to_string(m) << " k=" << r.k;
            ASSERT_GE(row.gap, row.exact_gap - slack);
          },
          opt);
    }
  }
}

TEST(GapCertificate, AxgdInvariants) {
  for (const auto& c : Cases()) {
    const auto& ref = *c.instance.reference;
    GapMonitor monitor(c.setup, c.x0, GapMode::oracle_optimum(ref.point, ref.value));
    const double D = bregman(c.setup, ref.point, c.x0);
    std::vector<GapRow> rows;
    run(Method::kAxgd, c.instance.oracle, c.setup, c.schedule, c.x0, 400,
        [&](const IterationRecord& r) { rows.push_back(monitor.observe(r)); });

    // Initial gap bound.
    EXPECT_LE(rows[0].gap, D / rows[0].A + 1e-12);
    EXPECT_TRUE(std::isnan(rows[0].error));

    double error_sum = 0.0;
    std::vector<std::pair<double, double>> series;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      series.emplace_back(r.A, r.gap);
      ASSERT_LE(r.z_mismatch, 1e-9);
      if (i == 0) continue;
      const double scale = std::max(1.0, r.scaled_gap);
      ASSERT_LE(r.error, 1e-9 * scale) << i;
      ASSERT_LE(r.error, r.error_bound + 1e-9 * scale) << i;  // extragradient bound
      error_sum += r.error;
      // Telescoping: G_k = (A_1/A_k) G_1 + sum E_i / A_k.
      const double predicted = (rows[0].A * rows[0].gap + error_sum) / r.A;
      ASSERT_NEAR(r.gap, predicted, 1e-9 * std::max(1.0, std::abs(r.gap)));
    }
    EXPECT_TRUE(check_invariance(series, 1e-9));
  }
}

// The minimizer of sum a_i <g_i, u - x_i> + D_psi(u, x0) over the domain
// should be grad psi*(z_anchor - grad_sum).
TEST(GapCertificate, DualPointMatchesNumericArgmin) {
  const auto box = euclidean_setup(1.5, Domain::box(-1, 1));
  const auto ent = entropy_simplex_setup(0.8);
  struct Probe {
    ProxSetup setup;
    Vector x0;
  };
  for (const Probe& p : {Probe{box, V({0.2, -0.4})}, Probe{ent, V({0.3, 0.7})}}) {
    GapAccumulator acc(p.x0, p.setup);
    acc.update(0.7, V({0.1, 0.2}), V({1.3, -0.4}), 0.0);
    acc.update(1.1, V({-0.3, 0.5}), V({-0.2, 0.9}), 0.0);
    const Vector u = p.setup.grad_psi_star(acc.dual_point());
    auto objective = [&](const Vector& v) {
      return acc.grad_sum.dot(v) + bregman(p.setup, v, p.x0);
    };
    double best = std::numeric_limits<double>::infinity();
    Vector best_v;
    const int m = 4000;
    for (int i = 0; i <= m; ++i) {
      if (p.setup.domain().kind == DomainKind::kSimplex) {
        const Vector v = V({double(i) / m, 1.0 - double(i) / m});
        if (objective(v) < best) best = objective(v), best_v = v;
      } else {
        for (int j = 0; j <= 400; ++j) {
          const Vector v = V({-1 + 2.0 * i / m, -1 + 2.0 * j / 400});
          if (objective(v) < best) best = objective(v), best_v = v;
        }
      }
    }
    EXPECT_LE(objective(u), best + 1e-12);
    EXPECT_NEAR(objective(u), best, 1e-5);
    if (p.setup.domain().kind == DomainKind::kSimplex) {
      EXPECT_NEAR(u(0), best_v(0), 1e-3);
    }
  }
  // Refine the 1-D simplex case with a golden-section search to 1e-6.
  GapAccumulator acc(V({0.3, 0.7}), ent);
  acc.update(0.7, V({0.1, 0.9}), V({1.3, -0.4}), 0.0);
  const Vector u = ent.grad_psi_star(acc.dual_point());
  auto obj = [&](double t) {
    const Vector v = V({t, 1 - t});
    return acc.grad_sum.dot(v) + bregman(ent, v, V({0.3, 0.7}));
  };
  double lo = 1e-12, hi = 1 - 1e-12;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    (obj(a) < obj(b) ? hi : lo) = (obj(a) < obj(b) ? b : a);
  }
  EXPECT_NEAR(u(0), 0.5 * (lo + hi), 1e-6);
}

TEST(GapCertificate, RadiusModeIsWeaker) {
  const auto c = Cases()[0];
  const auto& ref = *c.instance.reference;
  const double D = bregman(c.setup, ref.point, c.x0);
  GapMonitor oracle_mode(c.setup, c.x0, GapMode::oracle_optimum(ref.point, ref.value));
  GapMonitor radius_mode(c.setup, c.x0, GapMode::radius_bound(2.0 * D), ref.value);
  run(Method::kAxgd, c.instance.oracle, c.setup, c.schedule, c.x0, 50,
      [&](const IterationRecord& r) {
        const auto a = oracle_mode.observe(r);
        const auto b = radius_mode.observe(r);
        ASSERT_LE(b.lower, a.lower);
        ASSERT_LE(b.lower, ref.value);
        ASSERT_EQ(a.exact_gap, b.exact_gap);
      });
}
