#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "axgd/error.hpp"
#include "axgd/mirror_maps.hpp"
#include "axgd/random.hpp"

using namespace axgd;

namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Vector RandomVector(GaussianStream& rng, int n, double scale) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * rng.next();
  return v;
}

// A random point in the domain interior.
Vector Interior(GaussianStream& rng, const ProxSetup& s, int n) {
  switch (s.domain().kind) {
    case DomainKind::kSimplex: {
      Vector w(n);
      for (int i = 0; i < n; ++i) w(i) = 0.05 + rng.uniform();
      return w / w.sum();
    }
    case DomainKind::kBox: {
      Vector x(n);
      const double lo = s.domain().lower, hi = s.domain().upper;
      for (int i = 0; i < n; ++i) x(i) = lo + (hi - lo) * (0.05 + 0.9 * rng.uniform());
      return x;
    }
    case DomainKind::kUnconstrained:
      break;
  }
  return RandomVector(rng, n, 2.0);
}

std::vector<ProxSetup> Setups() {
  return {euclidean_setup(1.0), euclidean_setup(2.5), euclidean_setup(1.0, Domain::box(-1, 2)),
          entropy_simplex_setup(1.0), entropy_simplex_setup(4.0)};
}

}  // namespace

TEST(EuclideanSetup, Examples) {
  EXPECT_EQ(euclidean_setup(1.0).grad_psi_star(V({2, -4})), V({2, -4}));
  EXPECT_EQ(euclidean_setup(4.0).grad_psi_star(V({8, 0})), V({2, 0}));
  EXPECT_EQ(euclidean_setup(1.0, Domain::box(0, 1)).grad_psi_star(V({2, -1})), V({1, 0}));
  EXPECT_THROW(euclidean_setup(0.0), UsageError);
  EXPECT_THROW(euclidean_setup(-1.0), UsageError);
  EXPECT_THROW(ProxSetup(Geometry::kEuclidean, 1.0, Domain::simplex()), UsageError);
  EXPECT_THROW(ProxSetup(Geometry::kEntropy, 1.0, Domain::unconstrained()), UsageError);
  EXPECT_DOUBLE_EQ(euclidean_setup(2.0).psi_star(V({2, 0})), 1.0);
}

TEST(EntropySetup, Examples) {
  const auto s = entropy_simplex_setup(1.0);
  EXPECT_TRUE(s.grad_psi_star(V({0, 0})).isApprox(V({0.5, 0.5}), 1e-15));
  EXPECT_TRUE(s.grad_psi_star(V({std::log(3.0), 0})).isApprox(V({0.75, 0.25}), 1e-15));
  const Vector p = s.grad_psi_star(V({1000, 0}));
  EXPECT_TRUE(p.allFinite());
  EXPECT_LT(p(1), 1e-300);
  EXPECT_EQ(p(0), 1.0);
  EXPECT_TRUE(std::isfinite(s.psi_star(V({1000, 0}))));
  EXPECT_NEAR(s.psi_star(V({0, 0})), std::log(2.0), 1e-15);
  EXPECT_THROW(entropy_simplex_setup(0.0), UsageError);
  EXPECT_THROW(s.grad_psi(V({1, 0})), NumericDomainError);
}

TEST(Bregman, Examples) {
  EXPECT_DOUBLE_EQ(bregman(euclidean_setup(1.0), V({1, 0}), V({0, 0})), 0.5);
  const auto e = entropy_simplex_setup(1.0);
  EXPECT_EQ(bregman(e, V({0.5, 0.5}), V({0.5, 0.5})), 0.0);
  EXPECT_NEAR(bregman(e, V({0.75, 0.25}), V({0.5, 0.5})),
              0.75 * std::log(1.5) + 0.25 * std::log(0.5), 1e-15);
  EXPECT_NEAR(bregman(e, V({0.75, 0.25}), V({0.5, 0.5})), 0.130812, 1e-6);
  // 0 ln 0 = 0 in the first argument; a boundary second argument throws.
  EXPECT_NEAR(bregman(e, V({1, 0}), V({0.5, 0.5})), std::log(2.0), 1e-15);
  EXPECT_THROW(bregman(e, V({0.5, 0.5}), V({1, 0})), NumericDomainError);
}

TEST(BregmanConjugate, Examples) {
  EXPECT_DOUBLE_EQ(bregman_conjugate(euclidean_setup(1.0), V({1, 0}), V({0, 0})), 0.5);
  for (const auto& s : Setups()) {
    EXPECT_EQ(bregman_conjugate(s, V({0.3, -1.0}), V({0.3, -1.0})), 0.0);
  }
  const double e = std::exp(1.0);
  // psi*(z) - psi*(w) - <softmax(w), z - w> with softmax(w) = (1/2, 1/2).
  const double expected = std::log(1 + e) - std::log(2.0) - 0.5;
  EXPECT_NEAR(bregman_conjugate(entropy_simplex_setup(1.0), V({1, 0}), V({0, 0})),
              expected, 1e-15);
  EXPECT_NEAR(expected, 0.120114, 1e-6);
}

TEST(ProjectSimplex, Examples) {
  EXPECT_TRUE(project_simplex(V({0.2, 0.8})).isApprox(V({0.2, 0.8}), 1e-15));
  EXPECT_EQ(project_simplex(V({2, 0})), V({1, 0}));
  EXPECT_TRUE(project_simplex(V({0.6, 0.6})).isApprox(V({0.5, 0.5}), 1e-15));
}

// Brute force: for every nonempty support S the projection candidate is
// y_S - (sum y_S - 1)/|S|; keep feasible candidates and choose the closest.
TEST(ProjectSimplex, MatchesActiveSetEnumeration) {
  GaussianStream rng(31);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 300; ++trial) {
      const Vector y = RandomVector(rng, n, 1.5);
      double best = std::numeric_limits<double>::infinity();
      Vector best_x;
      for (int mask = 1; mask < (1 << n); ++mask) {
        double sum = 0.0;
        int count = 0;
        for (int i = 0; i < n; ++i) {
          if (mask & (1 << i)) {
            sum += y(i);
            ++count;
          }
        }
        const double shift = (sum - 1.0) / count;
        Vector x = Vector::Zero(n);
        bool feasible = true;
        for (int i = 0; i < n; ++i) {
          if (mask & (1 << i)) {
            x(i) = y(i) - shift;
            feasible &= x(i) >= -1e-15;
          }
        }
        if (feasible && (x - y).squaredNorm() < best) {
          best = (x - y).squaredNorm();
          best_x = x;
        }
      }
      const Vector p = project_simplex(y);
      EXPECT_LE((p - best_x).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(p.sum(), 1.0, 1e-12);
      EXPECT_GE(p.minCoeff(), 0.0);
    }
  }
}

TEST(ProxSetup, RoundTripAndFeasibility) {
  GaussianStream rng(3);
  for (const auto& s : Setups()) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = Interior(rng, s, 4);
      ASSERT_LE((s.grad_psi_star(s.grad_psi(x)) - x).cwiseAbs().maxCoeff(), 1e-10);
      const Vector z = RandomVector(rng, 4, 5.0);
      ASSERT_TRUE(s.domain().contains(s.grad_psi_star(z), 1e-12));
    }
  }
}

TEST(ProxSetup, StrongConvexityOfPsi) {
  GaussianStream rng(4);
  for (const auto& s : Setups()) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = Interior(rng, s, 4);
      const Vector y = Interior(rng, s, 4);
      const double d = s.norm(x - y);
      ASSERT_GE(bregman(s, x, y) - 0.5 * s.sigma() * d * d, -1e-10);
    }
  }
}

TEST(BregmanProps, DualityStrongConvexityThreePoint) {
  GaussianStream rng(8);
  for (const auto& s : Setups()) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = Interior(rng, s, 5);
      const Vector z = RandomVector(rng, 5, 3.0);
      const Vector w = RandomVector(rng, 5, 3.0);
      const Vector v = RandomVector(rng, 5, 3.0);
      // D(grad psi*(z), x) = D*(grad psi(x), z)
      ASSERT_NEAR(bregman(s, s.grad_psi_star(z), x),
                  bregman_conjugate(s, s.grad_psi(x), z), 1e-9);
      // strong convexity of the conjugate divergence
      const double d = s.norm(s.grad_psi_star(z) - s.grad_psi_star(w));
      ASSERT_GE(bregman_conjugate(s, z, w) - 0.5 * s.sigma() * d * d, -1e-10);
      // three-point identity: D(v, w) = D(z, w) + <grad(z) - grad(w), v - z> + D(v, z)
      const double lhs = bregman_conjugate(s, v, w);
      const double rhs = bregman_conjugate(s, z, w) +
                         (s.grad_psi_star(z) - s.grad_psi_star(w)).dot(v - z) +
                         bregman_conjugate(s, v, z);
      ASSERT_NEAR(lhs, rhs, 1e-9);
    }
  }
}

// grad psi*(z) should attain max_x <z,x> - psi(x); compare against a grid.
TEST(ConjugateArgmax, MatchesGrid) {
  GaussianStream rng(12);
  const auto entropy = entropy_simplex_setup(1.5);
  const auto box = euclidean_setup(0.7, Domain::box(-1, 1));
  const auto free = euclidean_setup(2.0);
  auto objective = [](const ProxSetup& s, const Vector& z, const Vector& x) {
    return z.dot(x) - s.psi(x);
  };
  for (int trial = 0; trial < 10; ++trial) {
    // 2-D simplex: parametrize by x0 in [0, 1].
    {
      const Vector z = RandomVector(rng, 2, 2.0);
      const double closed = objective(entropy, z, entropy.grad_psi_star(z));
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 20000; ++i) {
        const double t = i / 20000.0;
        best = std::max(best, objective(entropy, z, V({t, 1 - t})));
      }
      EXPECT_NEAR(closed, best, 1e-6);
      EXPECT_NEAR(entropy.psi_star(z), closed, 1e-12);
    }
    // 3-D simplex.
    {
      const Vector z = RandomVector(rng, 3, 2.0);
      const double closed = objective(entropy, z, entropy.grad_psi_star(z));
      double best = -std::numeric_limits<double>::infinity();
      const int m = 600;
      for (int i = 0; i <= m; ++i) {
        for (int j = 0; i + j <= m; ++j) {
          const double a = double(i) / m, b = double(j) / m;
          best = std::max(best, objective(entropy, z, V({a, b, std::max(0.0, 1 - a - b)})));
        }
      }
      EXPECT_GE(closed, best - 1e-12);
      EXPECT_NEAR(closed, best, 1e-4);  // grid resolution bound
    }
    // 2-D box.
    {
      const Vector z = RandomVector(rng, 2, 2.0);
      const double closed = objective(box, z, box.grad_psi_star(z));
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 2000; ++i) {
        for (int j = 0; j <= 2000; ++j) {
          best = std::max(best, objective(box, z, V({-1 + i / 1000.0, -1 + j / 1000.0})));
        }
      }
      EXPECT_NEAR(closed, best, 1e-6);
      EXPECT_NEAR(box.psi_star(z), closed, 1e-12);
    }
    // 2-D unconstrained, grid around the closed form.
    {
      const Vector z = RandomVector(rng, 2, 2.0);
      const Vector xs = free.grad_psi_star(z);
      const double closed = objective(free, z, xs);
      double best = -std::numeric_limits<double>::infinity();
      for (int i = -500; i <= 500; ++i) {
        for (int j = -500; j <= 500; ++j) {
          best = std::max(best, objective(free, z, xs + V({i * 1e-3, j * 1e-3})));
        }
      }
      EXPECT_NEAR(closed, best, 1e-6);
      EXPECT_GE(closed, best);
    }
  }
}
