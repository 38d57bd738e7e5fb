#include "axgd/mirror_maps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "axgd/error.hpp"

namespace axgd {

namespace {

double LogSumExp(const Vector& v) {
  const double m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

double XLogX(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

Domain Domain::box(double lower, double upper) {
  if (!(lower < upper)) throw UsageError("box domain needs lower < upper");
  return {DomainKind::kBox, lower, upper};
}

bool Domain::contains(const Vector& x, double tol) const {
  switch (kind) {
    case DomainKind::kUnconstrained:
      return x.allFinite();
    case DomainKind::kBox:
      return (x.array() >= lower - tol).all() && (x.array() <= upper + tol).all();
    case DomainKind::kSimplex:
      return (x.array() >= -tol).all() && std::abs(x.sum() - 1.0) <= tol;
  }
  return false;
}

Vector project_simplex(const Vector& y) {
  const Eigen::Index n = y.size();
  if (n == 0) throw UsageError("project_simplex: empty vector");
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return (y.array() - theta).max(0.0).matrix();
}

Vector project(const Domain& domain, const Vector& y) {
  switch (domain.kind) {
    case DomainKind::kUnconstrained:
      return y;
    case DomainKind::kBox:
      return y.cwiseMax(domain.lower).cwiseMin(domain.upper);
    case DomainKind::kSimplex:
      return project_simplex(y);
  }
  return y;
}

ProxSetup::ProxSetup(Geometry geometry, double sigma, Domain domain)
    : geometry_(geometry), sigma_(sigma), domain_(domain) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw UsageError("prox setup: sigma must be positive");
  }
  if (geometry == Geometry::kEntropy && domain.kind != DomainKind::kSimplex) {
    throw UsageError("entropy geometry requires the simplex domain");
  }
  if (geometry == Geometry::kEuclidean && domain.kind == DomainKind::kSimplex) {
    throw UsageError(
        "Euclidean prox over the simplex is not provided; use entropy");
  }
}

double ProxSetup::psi(const Vector& x) const {
  if (geometry_ == Geometry::kEuclidean) return 0.5 * sigma_ * x.squaredNorm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < 0.0) throw NumericDomainError("entropy: negative coordinate");
    s += XLogX(x(i));
  }
  return sigma_ * s;
}

Vector ProxSetup::grad_psi(const Vector& x) const {
  if (geometry_ == Geometry::kEuclidean) return sigma_ * x;
  if (!(x.array() > 0.0).all()) {
    throw NumericDomainError(
        "entropy: gradient undefined on the simplex boundary");
  }
  return (sigma_ * (x.array().log() + 1.0)).matrix();
}

double ProxSetup::psi_star(const Vector& z) const {
  if (geometry_ == Geometry::kEntropy) return sigma_ * LogSumExp(z / sigma_);
  if (domain_.kind == DomainKind::kUnconstrained) {
    return z.squaredNorm() / (2.0 * sigma_);
  }
  const Vector x = grad_psi_star(z);
  return z.dot(x) - psi(x);
}

Vector ProxSetup::grad_psi_star(const Vector& z) const {
  if (geometry_ == Geometry::kEntropy) {
    const Vector s = z / sigma_;
    const Vector e = (s.array() - s.maxCoeff()).exp().matrix();
    return e / e.sum();
  }
  const Vector x = z / sigma_;
  if (domain_.kind == DomainKind::kUnconstrained) return x;
  return x.cwiseMax(domain_.lower).cwiseMin(domain_.upper);
}

double ProxSetup::norm(const Vector& x) const {
  return geometry_ == Geometry::kEntropy ? x.lpNorm<1>() : x.norm();
}

double ProxSetup::dual_norm(const Vector& z) const {
  return geometry_ == Geometry::kEntropy ? z.lpNorm<Eigen::Infinity>()
                                         : z.norm();
}

ProxSetup euclidean_setup(double sigma, Domain domain) {
  return ProxSetup(Geometry::kEuclidean, sigma, domain);
}

ProxSetup entropy_simplex_setup(double sigma) {
  return ProxSetup(Geometry::kEntropy, sigma, Domain::simplex());
}

double bregman(const ProxSetup& setup, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw UsageError("bregman: dimension mismatch");
  const double sigma = setup.sigma();
  if (setup.geometry() == Geometry::kEuclidean) {
    return 0.5 * sigma * (x - y).squaredNorm();
  }
  // sigma * sum x ln(x/y) - x + y, with 0 ln 0 = 0.
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(y(i) > 0.0)) {
      throw NumericDomainError("bregman: reference point on entropy boundary");
    }
    if (x(i) < 0.0) throw NumericDomainError("bregman: negative coordinate");
    if (x(i) > 0.0) s += x(i) * std::log(x(i) / y(i));
    s += y(i) - x(i);
  }
  return sigma * s;
}

double bregman_conjugate(const ProxSetup& setup, const Vector& z,
                         const Vector& w) {
  if (z.size() != w.size()) {
    throw UsageError("bregman_conjugate: dimension mismatch");
  }
  const double sigma = setup.sigma();
  if (setup.geometry() == Geometry::kEuclidean &&
      setup.domain().kind == DomainKind::kUnconstrained) {
    return (z - w).squaredNorm() / (2.0 * sigma);
  }
  if (setup.geometry() == Geometry::kEntropy) {
    // sigma * KL(softmax(w/sigma) || softmax(z/sigma)) in log-space.
    const Vector zs = z / sigma;
    const Vector ws = w / sigma;
    const double lz = LogSumExp(zs);
    const double lw = LogSumExp(ws);
    double s = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double log_pw = ws(i) - lw;
      const double pw = std::exp(log_pw);
      if (pw > 0.0) s += pw * (log_pw - (zs(i) - lz));
    }
    return sigma * s;
  }
  return setup.psi_star(z) - setup.psi_star(w) -
         setup.grad_psi_star(w).dot(z - w);
}

}  // namespace axgd
