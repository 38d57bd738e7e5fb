#include "axgd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "axgd/error.hpp"
#include "axgd/random.hpp"

namespace axgd {

namespace {

void CheckDimension(const FunctionOracle& oracle, const Vector& x) {
  if (x.size() != oracle.dimension()) {
    throw UsageError(oracle.name() + ": point has dimension " +
                     std::to_string(x.size()) + ", expected " +
                     std::to_string(oracle.dimension()));
  }
}

}  // namespace

FunctionOracle::FunctionOracle(int dimension, ValueFn value,
                               GradientFn gradient, SmoothnessInfo info,
                               std::string name)
    : dimension_(dimension),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      info_(info),
      name_(std::move(name)) {
  if (dimension <= 0) throw UsageError("oracle dimension must be positive");
}

FunctionOracle FunctionOracle::with_info(SmoothnessInfo info) const {
  FunctionOracle copy = *this;
  copy.info_ = info;
  return copy;
}

double eval_value(const FunctionOracle& oracle, const Vector& x) {
  CheckDimension(oracle, x);
  const double v = oracle.value(x);
  if (!std::isfinite(v)) {
    throw NumericDomainError(oracle.name() + ": non-finite function value");
  }
  return v;
}

Vector eval_gradient(const FunctionOracle& oracle, const Vector& x) {
  CheckDimension(oracle, x);
  Vector g = oracle.gradient(x);
  if (g.size() != oracle.dimension()) {
    throw UsageError(oracle.name() + ": gradient has wrong dimension");
  }
  return g;
}

Matrix make_cycle_laplacian(int n) {
  if (n < 3) throw UsageError("cycle Laplacian needs n >= 3");
  // Built in integers, then converted, so row sums are exactly zero.
  Eigen::MatrixXi L = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    L(i, i) = 2;
    L(i, (i + 1) % n) = -1;
    L(i, (i + n - 1) % n) = -1;
  }
  return L.cast<double>();
}

double max_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

FunctionOracle make_quadratic(const Matrix& A, const Vector& b,
                              std::optional<double> smoothness) {
  if (A.rows() != A.cols()) throw UsageError("quadratic: A must be square");
  if (A.rows() != b.size()) {
    throw UsageError("quadratic: b length does not match A");
  }
  if (A != A.transpose()) throw UsageError("quadratic: A must be symmetric");
  SmoothnessInfo info;
  info.smoothness = smoothness ? *smoothness : max_eigenvalue(A);
  info.holder_exponent = 1.0;
  info.holder_constant = info.smoothness;
  auto A_ptr = std::make_shared<const Matrix>(A);
  auto b_ptr = std::make_shared<const Vector>(b);
  return FunctionOracle(
      static_cast<int>(A.rows()),
      [A_ptr, b_ptr](const Vector& x) {
        return 0.5 * x.dot(*A_ptr * x) - b_ptr->dot(x);
      },
      [A_ptr, b_ptr](const Vector& x) -> Vector { return *A_ptr * x - *b_ptr; },
      info, "quadratic");
}

FunctionOracle make_quadratic(const QuadraticInstance& instance) {
  return make_quadratic(instance.matrix, instance.vector);
}

FunctionOracle make_lipschitz_norm(const Vector& center, double lipschitz) {
  if (!(lipschitz > 0.0)) {
    throw UsageError("lipschitz norm: L_lip must be positive");
  }
  SmoothnessInfo info;
  info.lipschitz = lipschitz;
  auto c = std::make_shared<const Vector>(center);
  return FunctionOracle(
      static_cast<int>(center.size()),
      [c, lipschitz](const Vector& x) { return lipschitz * (x - *c).norm(); },
      [c, lipschitz](const Vector& x) -> Vector {
        Vector d = x - *c;
        const double r = d.norm();
        if (r == 0.0) return Vector::Zero(x.size());
        return (lipschitz / r) * d;
      },
      info, "lipschitz-norm");
}

FunctionOracle make_holder_power(double nu, int dimension) {
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw UsageError("holder power: nu must lie in (0, 1]");
  }
  FunctionOracle oracle(
      dimension,
      [nu](const Vector& x) { return std::pow(x.norm(), 1.0 + nu) / (1.0 + nu); },
      [nu](const Vector& x) -> Vector {
        const double r = x.norm();
        if (r == 0.0) return Vector::Zero(x.size());
        return std::pow(r, nu - 1.0) * x;
      },
      {}, "holder-power");
  SmoothnessInfo info;
  info.holder_exponent = nu;
  info.holder_constant = 1.05 * certify_holder_constant(oracle, nu);
  if (nu == 1.0) info.smoothness = 1.0;
  return oracle.with_info(info);
}

double certify_holder_constant(const FunctionOracle& oracle, double nu,
                               double radius) {
  const int d = oracle.dimension();
  // Deterministic sample: a fixed seeded cloud plus, in 1-D, a dense grid
  // that includes pairs straddling the origin.
  GaussianStream rng(0x5eedULL + static_cast<std::uint64_t>(d));
  std::vector<Vector> points;
  if (d == 1) {
    const int m = 801;
    for (int i = 0; i < m; ++i) {
      points.push_back(Vector::Constant(1, -radius + 2.0 * radius * i / (m - 1)));
    }
  } else {
    points.push_back(Vector::Zero(d));
    for (int i = 0; i < 600; ++i) {
      Vector p(d);
      for (int j = 0; j < d; ++j) p(j) = radius * (2.0 * rng.uniform() - 1.0);
      // Half the cloud is shrunk toward the origin where the ratio peaks.
      if (i % 2 == 1) p *= std::pow(rng.uniform(), 3.0);
      points.push_back(p);
      points.push_back(i % 3 == 0 ? Vector(-p) : Vector(-p * rng.uniform()));
    }
  }
  std::vector<Vector> grads;
  grads.reserve(points.size());
  for (const auto& p : points) grads.push_back(oracle.gradient(p));
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double dist = (points[i] - points[j]).norm();
      if (dist == 0.0) continue;
      best = std::max(best, (grads[i] - grads[j]).norm() / std::pow(dist, nu));
    }
  }
  return best;
}

FunctionOracle wrap_noisy(const FunctionOracle& oracle, const NoiseSpec& spec) {
  if (spec.epsilon_eta < 0.0 || !std::isfinite(spec.epsilon_eta)) {
    throw UsageError("noise: epsilon_eta must be finite and nonnegative");
  }
  if (spec.epsilon_eta == 0.0) return oracle;
  auto stream = std::make_shared<GaussianStream>(spec.seed);
  const double scale = std::sqrt(spec.epsilon_eta);
  FunctionOracle inner = oracle;
  return FunctionOracle(
      oracle.dimension(), [inner](const Vector& x) { return inner.value(x); },
      [inner, stream, scale](const Vector& x) -> Vector {
        Vector g = inner.gradient(x);
        for (Eigen::Index i = 0; i < g.size(); ++i) g(i) += scale * stream->next();
        return g;
      },
      oracle.info(), oracle.name() + "+noise");
}

double finite_diff_check(const FunctionOracle& oracle, const Vector& x,
                         double h) {
  if (!(h > 0.0)) throw UsageError("finite_diff_check: h must be positive");
  const Vector g = eval_gradient(oracle, x);
  double worst = 0.0;
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = oracle.value(probe);
    probe(i) = x(i) - h;
    const double down = oracle.value(probe);
    probe(i) = x(i);
    const double fd = (up - down) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g(i)) / std::max(1.0, std::abs(g(i))));
  }
  return worst;
}

FunctionOracle QueryCounter::wrap(const FunctionOracle& oracle) {
  auto count = count_;
  FunctionOracle inner = oracle;
  return FunctionOracle(
      oracle.dimension(), [inner](const Vector& x) { return inner.value(x); },
      [inner, count](const Vector& x) -> Vector {
        ++*count;
        return inner.gradient(x);
      },
      oracle.info(), oracle.name());
}

}  // namespace axgd
