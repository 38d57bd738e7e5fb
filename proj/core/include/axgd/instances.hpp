#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "axgd/mirror_maps.hpp"
#include "axgd/oracle.hpp"

namespace axgd {

// How the unconstrained cycle instance (unbounded below: b has a component
// along the Laplacian's kernel) gets a reference value.
enum class UnconstrainedMode {
  // Reference is the minimum over range(A); exact gaps are measured on the
  // range component of the objective.
  kDrift,
  // Solve with A + mu I (mu = 1e-6), which is bounded below.
  kRegularized,
};

inline constexpr double kRegularizationMu = 1e-6;

// An objective ready for a solver run together with what is needed to
// measure exact optimality gaps.
struct ProblemInstance {
  std::string name;
  FunctionOracle oracle;
  // Objective whose value minus reference->value is the exact gap. Equal to
  // `oracle` except in drift mode.
  FunctionOracle gap_objective;
  Domain domain;
  std::optional<ReferenceOptimum> reference;
  // True when gap_objective is a different function from oracle; duality
  // gap certificates should then be built from gap_objective as well.
  bool separate_gap_objective = false;
};

/// Minimizer of 1/2 <Ax,x> - <b,x> over the unit simplex: accelerated
/// projected gradient to stagnation, then an exact KKT solve on the detected
/// support. A must be symmetric PSD.
ReferenceOptimum solve_simplex_quadratic(const Matrix& A, const Vector& b);

/// 1/2 <Ax,x> - <b,x> with A the cycle Laplacian and b = e_1 (the standard
/// hard instance for first-order methods).
ProblemInstance cycle_quadratic_instance(int n, Domain domain,
                                         UnconstrainedMode mode);

/// Seeded random quadratic A = Q diag(lambda) Q^T with lambda evenly spaced
/// in [smoothness/100, smoothness], b ~ N(0, I).
ProblemInstance random_quadratic_instance(int n, double smoothness,
                                          std::uint64_t seed, Domain domain);

/// L * |x - c|_2 with c ~ N(0, I) seeded; on a box, c is clamped into it.
ProblemInstance lipschitz_norm_instance(int n, double lipschitz,
                                        std::uint64_t seed, Domain domain);

/// |x|^(1+nu)/(1+nu); the optimum is the origin, which must lie in the domain.
ProblemInstance holder_power_instance(int n, double nu, Domain domain);

}  // namespace axgd
