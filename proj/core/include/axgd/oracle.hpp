#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace axgd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Regularity constants known for an objective. Any of them may be absent.
struct SmoothnessInfo {
  std::optional<double> smoothness;        // L in f(y) <= f(x) + <g,y-x> + L/2|y-x|^2
  std::optional<double> holder_exponent;   // nu in (0, 1]
  std::optional<double> holder_constant;   // L_nu
  std::optional<double> lipschitz;         // Lipschitz constant of f
};

// First-order oracle: value and (sub)gradient of a convex objective.
//
// Instances are cheap to copy; the callables are shared. Everything built
// here is immutable except the noisy wrapper, whose gradient callable owns
// a PRNG stream and must not be queried from two threads at once.
class FunctionOracle {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  FunctionOracle(int dimension, ValueFn value, GradientFn gradient,
                 SmoothnessInfo info = {}, std::string name = "objective");

  int dimension() const { return dimension_; }
  const SmoothnessInfo& info() const { return info_; }
  const std::string& name() const { return name_; }

  // Unchecked evaluation; eval_value/eval_gradient add the contract checks.
  double value(const Vector& x) const { return value_(x); }
  Vector gradient(const Vector& x) const { return gradient_(x); }

  FunctionOracle with_info(SmoothnessInfo info) const;

 private:
  int dimension_;
  ValueFn value_;
  GradientFn gradient_;
  SmoothnessInfo info_;
  std::string name_;
};

/// f(x). Throws UsageError on dimension mismatch and NumericDomainError when
/// the result is not finite.
double eval_value(const FunctionOracle& oracle, const Vector& x);

/// A gradient (subgradient at kinks) of f at x.
Vector eval_gradient(const FunctionOracle& oracle, const Vector& x);

enum class Provenance { kAnalytic, kNumeric };

struct ReferenceOptimum {
  Vector point;
  double value = 0.0;
  Provenance provenance = Provenance::kAnalytic;
};

// f(x) = 1/2 <Ax, x> - <b, x>.
struct QuadraticInstance {
  Matrix matrix;
  Vector vector;
  std::optional<ReferenceOptimum> reference;
};

/// Cycle-graph Laplacian: 2 on the diagonal, -1 on both off-diagonals and in
/// the two corners. Requires n >= 3.
Matrix make_cycle_laplacian(int n);

/// Largest eigenvalue of a symmetric matrix.
double max_eigenvalue(const Matrix& symmetric);

/// Oracle for 1/2 <Ax,x> - <b,x>. A must be exactly symmetric. L defaults to
/// lambda_max(A).
FunctionOracle make_quadratic(const Matrix& A, const Vector& b,
                              std::optional<double> smoothness = std::nullopt);
FunctionOracle make_quadratic(const QuadraticInstance& instance);

/// f(x) = L_lip * |x - center|_2. The subgradient at the center is zero.
FunctionOracle make_lipschitz_norm(const Vector& center, double lipschitz);

/// f(x) = |x|^(1+nu) / (1+nu), gradient |x|^(nu-1) x (zero at the origin).
/// The Hoelder constant stored in the metadata is certified by
/// certify_holder_constant with a 1.05 safety factor.
FunctionOracle make_holder_power(double nu, int dimension);

/// sup over a deterministic dense set of pairs in [-radius, radius]^d of
/// |grad f(x) - grad f(y)| / |x - y|^nu.
double certify_holder_constant(const FunctionOracle& oracle, double nu,
                               double radius = 10.0);

struct NoiseSpec {
  double epsilon_eta = 0.0;  // covariance is epsilon_eta * I
  std::uint64_t seed = 0;
};

/// Gradient queries return grad f(x) + eta, eta ~ N(0, epsilon_eta I), drawn
/// independently per call from a stream seeded by spec.seed. Values are not
/// perturbed. epsilon_eta == 0 returns the wrapped oracle unchanged.
FunctionOracle wrap_noisy(const FunctionOracle& oracle, const NoiseSpec& spec);

/// Max over coordinates of |central difference - gradient component| divided
/// by max(1, |gradient component|).
double finite_diff_check(const FunctionOracle& oracle, const Vector& x,
                         double h);

// Counts gradient queries passed through it. Used for query accounting.
class QueryCounter {
 public:
  FunctionOracle wrap(const FunctionOracle& oracle);
  long gradient_queries() const { return *count_; }
  void reset() { *count_ = 0; }

 private:
  std::shared_ptr<long> count_ = std::make_shared<long>(0);
};

}  // namespace axgd
