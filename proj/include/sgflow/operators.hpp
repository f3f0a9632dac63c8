#pragma once

// Operators of the sphere-constrained damped heat flow
//
//   du/dt = Delta u - |u|^{p-2} u + S(u) u,   S(u) = ||grad u||^2 + ||u||_p^p,
//
// on span{w_k}. The nonlinearity is formed pointwise on the quadrature grid
// and analyzed back, so every operator returning a Field returns its
// Galerkin projection onto the field's basis.

#include "sgflow/spectral_domain.hpp"

namespace sgflow {

struct OperatorParams {
  double p = 4.0;
  /// Constraint radius ||u||_{L2} = radius; values other than 1 require
  /// general_constraint.
  double radius = 1.0;
  bool general_constraint = false;

  /// Throws std::invalid_argument when p < 2 or the radius is not allowed.
  void validate() const;
};

/// Zero every coefficient with lambda_n >= 2^(m+1).
Field project_Pm(const Field& u, int m);
/// Multiply coefficient n by s_m(lambda_n).
Field apply_Sm(const Field& u, int m);

/// Pointwise |v|^{p-2} v with |0|^{p-2} 0 := 0.
double abs_pow_sign(double v, double p);
/// Grid samples of |u|^{p-2} u.
Eigen::VectorXd nonlinearity_samples(const Eigen::VectorXd& samples, double p);
/// Galerkin projection of |u|^{p-2} u; returns u itself for p = 2.
Field nonlinearity(const Field& u, double p);

/// -Delta applied diagonally.
Field neg_laplacian(const Field& u);

/// z - (base, z) base / ||base||^2. Throws std::invalid_argument when
/// ||base|| < 1e-8 ("degenerate base point").
Field tangent_project(const Field& base, const Field& z);

/// Quadrature value of integral |u|^p.
double lp_power(const Field& u, double p);

/// 1/2 ||grad u||^2 + (1/p) ||u||_p^p
double energy(const Field& u, double p);
/// ||grad u||^2 + ||u||_p^p
double s_functional(const Field& u, double p);

/// -Delta u + N(u)
Field grad_energy(const Field& u, double p);
/// pi_u(grad_energy(u)); the Riemannian gradient on the L2 sphere.
Field grad_energy_tangent(const Field& u, double p);
/// Delta u - N(u) + S(u) u
Field rhs_G(const Field& u, double p);

}  // namespace sgflow
