#pragma once

#include "axgd/oracle.hpp"

namespace axgd {

enum class DomainKind { kUnconstrained, kBox, kSimplex };

// Feasible set X. Boxes use the same bounds on every coordinate.
struct Domain {
  DomainKind kind = DomainKind::kUnconstrained;
  double lower = 0.0;
  double upper = 1.0;

  static Domain unconstrained() { return {}; }
  static Domain box(double lower, double upper);
  static Domain simplex() { return {DomainKind::kSimplex, 0.0, 1.0}; }

  bool contains(const Vector& x, double tol = 1e-12) const;
};

/// Euclidean projection onto the unit simplex (sort and threshold).
Vector project_simplex(const Vector& y);

/// Euclidean projection onto the domain.
Vector project(const Domain& domain, const Vector& y);

enum class Geometry { kEuclidean, kEntropy };

// Mirror-map bundle: a sigma-strongly convex psi on a domain together with
// its convex conjugate psi*(z) = max_{x in X} <z,x> - psi(x).
//
// Euclidean: psi = sigma/2 |x|_2^2 on R^n or a box (grad psi* = clamp(z/sigma)).
// Entropy:   psi = sigma sum x_i ln x_i on the unit simplex, strongly convex
//            w.r.t. |.|_1, grad psi* = softmax(z/sigma).
class ProxSetup {
 public:
  ProxSetup(Geometry geometry, double sigma, Domain domain);

  Geometry geometry() const { return geometry_; }
  double sigma() const { return sigma_; }
  const Domain& domain() const { return domain_; }

  double psi(const Vector& x) const;
  // Throws NumericDomainError for entropy at a boundary point.
  Vector grad_psi(const Vector& x) const;
  double psi_star(const Vector& z) const;
  Vector grad_psi_star(const Vector& z) const;

  // |.|_2 / |.|_2 for Euclidean, |.|_1 / |.|_inf for entropy.
  double norm(const Vector& x) const;
  double dual_norm(const Vector& z) const;

 private:
  Geometry geometry_;
  double sigma_;
  Domain domain_;
};

/// psi = sigma/2 |x|^2 on R^n (domain unconstrained) or on a box.
ProxSetup euclidean_setup(double sigma, Domain domain = Domain::unconstrained());

/// Negative entropy scaled by sigma on the unit simplex.
ProxSetup entropy_simplex_setup(double sigma);

/// D_psi(x, y) = psi(x) - psi(y) - <grad psi(y), x - y>.
double bregman(const ProxSetup& setup, const Vector& x, const Vector& y);

/// D_psi*(z, w) = psi*(z) - psi*(w) - <grad psi*(w), z - w>.
double bregman_conjugate(const ProxSetup& setup, const Vector& z,
                         const Vector& w);

}  // namespace axgd
