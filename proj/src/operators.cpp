#include "sgflow/operators.hpp"

#include "sgflow/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace sgflow {

void OperatorParams::validate() const {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw std::invalid_argument("exponent p must be >= 2");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("constraint radius must be positive");
  if (radius != 1.0 && !general_constraint) {
    throw std::invalid_argument("constraint radius != 1 requires general_constraint");
  }
}

Field project_Pm(const Field& u, int m) {
  Field out = u;
  const auto& lam = u.basis().eigenvalues();
  const double cut = std::ldexp(1.0, m + 1);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) >= cut) out.coefficients()(i) = 0.0;
  }
  return out;
}

Field apply_Sm(const Field& u, int m) {
  Field out = u;
  const auto& lam = u.basis().eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) out.coefficients()(i) *= symbol_sm(lam(i), m);
  return out;
}

double abs_pow_sign(double v, double p) {
  if (v == 0.0) return 0.0;
  if (p == 2.0) return v;
  if (p == 3.0) return std::abs(v) * v;
  if (p == 4.0) return v * v * v;
  return std::pow(std::abs(v), p - 2.0) * v;
}

Eigen::VectorXd nonlinearity_samples(const Eigen::VectorXd& samples, double p) {
  Eigen::VectorXd out(samples.size());
  for (Eigen::Index i = 0; i < samples.size(); ++i) out(i) = abs_pow_sign(samples(i), p);
  return out;
}

Field nonlinearity(const Field& u, double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("exponent p must be >= 2");
  if (p == 2.0) return u;
  return analyze_field(nonlinearity_samples(u.samples(), p), u.basis_ptr());
}

Field neg_laplacian(const Field& u) {
  Field out = u;
  out.coefficients().array() *= u.basis().eigenvalues().array();
  return out;
}

Field tangent_project(const Field& base, const Field& z) {
  const double nb2 = base.coefficients().squaredNorm();
  if (!(std::sqrt(nb2) >= 1e-8)) throw std::invalid_argument("degenerate base point");
  return z - (inner(base, z) / nb2) * base;
}

double lp_power(const Field& u, double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("exponent p must be >= 2");
  if (p == 2.0) return u.coefficients().squaredNorm();
  return integrate_abs_pow(u.samples(), u.basis().weight(), p);
}

double energy(const Field& u, double p) {
  return 0.5 * h1_seminorm_sq(u) + lp_power(u, p) / p;
}

double s_functional(const Field& u, double p) { return h1_seminorm_sq(u) + lp_power(u, p); }

Field grad_energy(const Field& u, double p) { return neg_laplacian(u) + nonlinearity(u, p); }

Field grad_energy_tangent(const Field& u, double p) {
  return tangent_project(u, grad_energy(u, p));
}

Field rhs_G(const Field& u, double p) {
  return s_functional(u, p) * u - grad_energy(u, p);
}

}  // namespace sgflow
