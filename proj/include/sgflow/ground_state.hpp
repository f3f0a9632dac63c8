#pragma once

// Stationary states of the constrained flow: unit-mass solutions of
//   Delta U - |U|^{p-2} U + lambda U = 0,   lambda = S(U),
// computed either as the long-time limit of the flow or by monotone
// sub/super-solution iteration at fixed lambda with bisection on the mass.

#include "sgflow/flow.hpp"
#include "sgflow/spectral_domain.hpp"

#include <string>
#include <vector>

namespace sgflow {

enum class GroundStateMethod { flow, sub_super, eigenfunction };

std::string to_string(GroundStateMethod method);

struct GroundStateResult {
  Field profile;
  double p = 2.0;
  double lambda = 0.0;
  double residual = 0.0;
  double energy = 0.0;
  long iterations = 0;
  GroundStateMethod method = GroundStateMethod::flow;
};

/// ||Delta U - N(U) + S(U) U||_{L2}
double stationary_residual(const Field& u, double p);

/// Runs the flow from u0 until ||grad_M E|| < config.stationarity_tol.
/// Throws ConvergenceError (with the last gradient norm) if the horizon is
/// reached first.
GroundStateResult solve_by_flow(const Field& u0, const FlowConfig& config);

/// p = 2: the first eigenfunction with lambda = lambda_1 + 1.
GroundStateResult linear_ground_state(BasisPtr basis);

struct SubSuperOptions {
  /// Stop when ||u_{j+1} - u_j||_{inf, grid} < tol.
  double tol = 1e-10;
  long max_iterations = 20'000'000;
};

struct SubSuperResult {
  Field profile;
  long iterations = 0;
  double super_value = 0.0;   // constant super-solution
  double sub_amplitude = 0.0; // eps in the sub-solution eps * w_1
  double shift = 0.0;         // k in (-Delta + k) u_{j+1} = f(u_j) + k u_j
  /// max over iterations and nodes of u_{j+1} - u_j (<= 0 up to roundoff).
  double max_increase = 0.0;
  /// min over iterations and nodes of u_j - eps w_1 (>= 0 up to roundoff).
  double min_sub_gap = 0.0;
};

/// Monotone iteration for -Delta u = lambda u - |u|^{p-2} u from the constant
/// super-solution c = max(lambda^{1/(p-1)}, lambda^{1/(p-2)}) with shift
/// k = max(lambda, (p-1) c^{p-2} - lambda). Throws
/// std::invalid_argument for p < 3 or lambda <= lambda_1 ("no positive
/// solution in this regime"), InternalError if an iterate increases anywhere.
SubSuperResult sub_super_solve(double lambda, double p, BasisPtr basis,
                               const SubSuperOptions& options = {});

/// ||Delta u - N(u) + lambda u||_{L2} (Galerkin).
double fixed_lambda_residual(const Field& u, double p, double lambda);

struct MassSample {
  double lambda = 0.0;
  double mass = 0.0;
};

struct LambdaSearchOptions {
  double mass_tol = 1e-8;
  /// Inner tolerance for the bisection evaluations.
  SubSuperOptions inner{1e-13, 20'000'000};
  int max_expansions = 20;
  int max_bisections = 200;
};

/// Bisection on lambda in (lambda_1, lambda_hi] for unit L2 mass of the
/// sub/super profile. Rejects p = 2 (use linear_ground_state). Throws
/// ConvergenceError if no bracket is found or the mass curve is not
/// increasing.
GroundStateResult lambda_search(double p, BasisPtr basis, const LambdaSearchOptions& options = {},
                                std::vector<MassSample>* mass_curve = nullptr);

struct CrossValidation {
  double l2_diff = 0.0;
  double lambda_diff = 0.0;
  double energy_diff = 0.0;
  double tolerance = 1e-5;
  bool pass = false;
};

/// Throws std::invalid_argument on mismatched p or domain.
CrossValidation cross_validate(const GroundStateResult& a, const GroundStateResult& b,
                               double tolerance = 1e-5);

}  // namespace sgflow
