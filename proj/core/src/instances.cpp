#include "axgd/instances.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "axgd/error.hpp"
#include "axgd/random.hpp"

namespace axgd {

namespace {

double QuadraticValue(const Matrix& A, const Vector& b, const Vector& x) {
  return 0.5 * x.dot(A * x) - b.dot(x);
}

// FISTA with gradient-based adaptive restart; returns the last iterate.
Vector AcceleratedProjectedGradient(const Matrix& A, const Vector& b,
                                    const Domain& domain, Vector x,
                                    double smoothness) {
  Vector y = x;
  double t = 1.0;
  for (int it = 0; it < 100000; ++it) {
    const Vector x_next = project(domain, y - (A * y - b) / smoothness);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const Vector step = x_next - x;
    if ((y - x_next).dot(step) > 0.0) {
      y = x_next;
      t = 1.0;
    } else {
      y = x_next + ((t - 1.0) / t_next) * step;
      t = t_next;
    }
    x = x_next;
    if (step.lpNorm<Eigen::Infinity>() <= 1e-15 && it > 100) break;
  }
  return x;
}

// KKT solve on the support of `x` for the simplex: A_SS x_S - b_S = lambda 1,
// sum x_S = 1. Returns nullopt if the result is infeasible or not optimal.
std::optional<Vector> PolishSimplex(const Matrix& A, const Vector& b,
                                    const Vector& x) {
  std::vector<int> support;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) > 1e-12) support.push_back(i);
  }
  const int m = static_cast<int>(support.size());
  if (m == 0) return std::nullopt;
  Matrix K = Matrix::Zero(m + 1, m + 1);
  Vector rhs = Vector::Zero(m + 1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) K(r, c) = A(support[r], support[c]);
    K(r, m) = -1.0;
    K(m, r) = 1.0;
    rhs(r) = b(support[r]);
  }
  rhs(m) = 1.0;
  const Vector sol = K.fullPivLu().solve(rhs);
  if (!sol.allFinite()) return std::nullopt;
  Vector out = Vector::Zero(x.size());
  for (int r = 0; r < m; ++r) {
    if (sol(r) < 0.0) return std::nullopt;
    out(support[r]) = sol(r);
  }
  const double lambda = sol(m);
  const Vector g = A * out - b;
  for (int i = 0; i < x.size(); ++i) {
    if (out(i) == 0.0 && g(i) - lambda < -1e-9) return std::nullopt;
  }
  return out;
}

std::optional<Vector> PolishBox(const Matrix& A, const Vector& b,
                                const Domain& domain, const Vector& x) {
  const double tol = 1e-12;
  std::vector<int> free;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) > domain.lower + tol && x(i) < domain.upper - tol) free.push_back(i);
  }
  Vector out = x;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) <= domain.lower + tol) out(i) = domain.lower;
    if (x(i) >= domain.upper - tol) out(i) = domain.upper;
  }
  const int m = static_cast<int>(free.size());
  if (m > 0) {
    Matrix K(m, m);
    Vector rhs(m);
    for (int r = 0; r < m; ++r) {
      rhs(r) = b(free[r]);
      for (int c = 0; c < m; ++c) K(r, c) = A(free[r], free[c]);
      for (int c = 0; c < x.size(); ++c) {
        if (std::find(free.begin(), free.end(), c) == free.end()) {
          rhs(r) -= A(free[r], c) * out(c);
        }
      }
    }
    const Vector sol = K.fullPivLu().solve(rhs);
    for (int r = 0; r < m; ++r) out(free[r]) = sol(r);
  }
  if (!domain.contains(out, 0.0)) return std::nullopt;
  return out;
}

ReferenceOptimum SolveConstrainedQuadratic(const Matrix& A, const Vector& b,
                                           const Domain& domain) {
  const double L = std::max(max_eigenvalue(A), 1e-12);
  Vector start = domain.kind == DomainKind::kSimplex
                     ? Vector::Constant(b.size(), 1.0 / b.size())
                     : project(domain, Vector::Zero(b.size()));
  Vector x = AcceleratedProjectedGradient(A, b, domain, start, L);
  const std::optional<Vector> polished =
      domain.kind == DomainKind::kSimplex ? PolishSimplex(A, b, x)
                                          : PolishBox(A, b, domain, x);
  if (polished && QuadraticValue(A, b, *polished) <= QuadraticValue(A, b, x)) {
    x = *polished;
  }
  return {x, QuadraticValue(A, b, x), Provenance::kNumeric};
}

}  // namespace

ReferenceOptimum solve_simplex_quadratic(const Matrix& A, const Vector& b) {
  return SolveConstrainedQuadratic(A, b, Domain::simplex());
}

ProblemInstance cycle_quadratic_instance(int n, Domain domain,
                                         UnconstrainedMode mode) {
  const Matrix A = make_cycle_laplacian(n);
  Vector b = Vector::Zero(n);
  b(0) = 1.0;
  const std::string base = "cycle-quadratic-n" + std::to_string(n);

  if (domain.kind != DomainKind::kUnconstrained) {
    FunctionOracle f = make_quadratic(A, b);
    return {base + (domain.kind == DomainKind::kSimplex ? "-simplex" : "-box"),
            f, f, domain, SolveConstrainedQuadratic(A, b, domain)};
  }

  if (mode == UnconstrainedMode::kRegularized) {
    Matrix Ar = A;
    Ar.diagonal().array() += kRegularizationMu;
    FunctionOracle f = make_quadratic(Ar, b);
    const Vector x_star = Ar.ldlt().solve(b);
    return {base + "-regularized", f, f, domain,
            ReferenceOptimum{x_star, QuadraticValue(Ar, b, x_star),
                             Provenance::kAnalytic}};
  }

  // Drift: the kernel of A is span(1). Remove the kernel part of b and take
  // the min-norm minimizer over range(A).
  const Vector b_range = b - Vector::Constant(n, b.sum() / n);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
  const Vector& lambda = eig.eigenvalues();
  const Matrix& Q = eig.eigenvectors();
  Vector coeff = Q.transpose() * b_range;
  for (int i = 0; i < n; ++i) {
    coeff(i) = lambda(i) > 1e-10 ? coeff(i) / lambda(i) : 0.0;
  }
  const Vector x_star = Q * coeff;
  return {base + "-drift", make_quadratic(A, b), make_quadratic(A, b_range),
          domain,
          ReferenceOptimum{x_star, QuadraticValue(A, b_range, x_star),
                           Provenance::kAnalytic},
          true};
}

ProblemInstance random_quadratic_instance(int n, double smoothness,
                                          std::uint64_t seed, Domain domain) {
  if (n < 1) throw UsageError("random quadratic: n must be positive");
  if (!(smoothness > 0.0)) throw UsageError("random quadratic: L must be > 0");
  GaussianStream rng(seed);
  Matrix G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G(i, j) = rng.next();
  }
  const Matrix Q = G.householderQr().householderQ();
  Vector lambda(n);
  for (int i = 0; i < n; ++i) {
    lambda(i) = n == 1 ? smoothness
                       : smoothness / 100.0 +
                             (smoothness - smoothness / 100.0) * i / (n - 1);
  }
  Matrix A = Q * lambda.asDiagonal() * Q.transpose();
  A = 0.5 * (A + A.transpose()).eval();
  Vector b(n);
  for (int i = 0; i < n; ++i) b(i) = rng.next();
  FunctionOracle f = make_quadratic(A, b);
  std::optional<ReferenceOptimum> ref;
  if (domain.kind == DomainKind::kUnconstrained) {
    const Vector x_star = A.ldlt().solve(b);
    ref = ReferenceOptimum{x_star, QuadraticValue(A, b, x_star),
                           Provenance::kAnalytic};
  } else {
    ref = SolveConstrainedQuadratic(A, b, domain);
  }
  return {"random-quadratic-n" + std::to_string(n), f, f, domain, ref};
}

ProblemInstance lipschitz_norm_instance(int n, double lipschitz,
                                        std::uint64_t seed, Domain domain) {
  if (domain.kind == DomainKind::kSimplex) {
    throw UsageError("lipschitz-norm instance supports unconstrained or box");
  }
  GaussianStream rng(seed);
  Vector c(n);
  for (int i = 0; i < n; ++i) c(i) = rng.next();
  c = project(domain, c);
  FunctionOracle f = make_lipschitz_norm(c, lipschitz);
  return {"lipschitz-norm-n" + std::to_string(n), f, f, domain,
          ReferenceOptimum{c, 0.0, Provenance::kAnalytic}};
}

ProblemInstance holder_power_instance(int n, double nu, Domain domain) {
  if (!domain.contains(Vector::Zero(n), 0.0)) {
    throw UsageError("holder-power instance: domain must contain the origin");
  }
  FunctionOracle f = make_holder_power(nu, n);
  return {"holder-power-n" + std::to_string(n), f, f, domain,
          ReferenceOptimum{Vector::Zero(n), 0.0, Provenance::kAnalytic}};
}

}  // namespace axgd
