#pragma once

// Randomized checks of the operator inequalities and identities behind the
// flow. Inequalities carry an explicit additive tolerance (default 1e-9);
// identities use |lhs - rhs| <= tol * (1 + |lhs| + |rhs|).

#include "sgflow/flow.hpp"
#include "sgflow/spectral_domain.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace sgflow {

/// Random fields with coefficients a_n = sigma g_n / n^2, g_n ~ N(0, 1),
/// n the 1-based ordinal of the mode.
class FieldSampler {
 public:
  FieldSampler(BasisPtr basis, std::uint64_t seed, double sigma = 1.0);

  Field sample();
  Field sample_unit();
  /// Rescaled so that proxy_norm lies in (0.1 R, R].
  Field sample_capped(double p, double radius);
  /// Strictly positive on the whole domain: w_1 plus a perturbation with
  /// sum_k (prod_i k_i) |c_k| < 1, normalized to unit L2 mass.
  Field sample_positive();

  double uniform(double lo, double hi);
  std::uint64_t seed() const { return seed_; }

 private:
  BasisPtr basis_;
  std::uint64_t seed_;
  double sigma_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// max(||u||_{L^{2p-2}}, ||grad u||_{L2})
double proxy_norm(const Field& u, double p);

struct CheckResult {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Positive when the check holds with room to spare (tolerance included).
  double margin = 0.0;
};

CheckResult check_leq(double lhs, double rhs, double tol);
CheckResult check_geq(double lhs, double rhs, double tol);
CheckResult check_equal(double lhs, double rhs, double tol);

struct MonotoneReport {
  CheckResult half_weighted;  // <N(u)-N(v),u-v> >= 1/2|| |u|^{(p-2)/2}(u-v) ||^2 + (v term)
  CheckResult lp_lower;       // <N(u)-N(v),u-v> >= 2^{-(p-2)} ||u-v||_p^p
  bool pass() const { return half_weighted.pass && lp_lower.pass; }
};

/// Grid-level version (u, v are grid samples with uniform weight).
MonotoneReport check_monotone_nonlinearity(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                           double weight, double p, double tol = 1e-9);
MonotoneReport check_monotone_nonlinearity(const Field& u, const Field& v, double p,
                                           double tol = 1e-9);

/// p^2 2^{2p-4} |O|^{1/p}
double local_monotone_constant(double p, double measure);

/// <G(u)-G(v),u-v> <= [bracket] ||u-v||^2 + tol.
CheckResult check_local_monotone_G(const Field& u, const Field& v, double p, double tol = 1e-9);
/// Without the S(u) u terms: <G0(u)-G0(v),u-v> <= tol.
CheckResult check_monotone_G_unprojected(const Field& u, const Field& v, double p,
                                         double tol = 1e-9);

struct LipschitzReport {
  CheckResult f1_pointwise;  // ||F1 u - F1 v|| <= (p-1) || |u-v| (|u|+|v|)^{p-2} ||
  CheckResult f1_holder;     // ... <= (p-1) ||u-v||_{2p-2} (||u||_{2p-2}+||v||_{2p-2})^{p-2}
  CheckResult f1_printed;    // ... <= (p-1) ||u-v||_{2p-2} (||u||_{2p-2}+||v||_{2p-2})^{2p-2}
  bool f1_printed_applies = false;  // only when ||u||_{2p-2}+||v||_{2p-2} >= 1
  CheckResult f2;            // Poincare chain with 1/sqrt(lambda_1)
  CheckResult f3;            // ||u||_p^p ||u-v|| + p ||u-v||_p (||u||_p+||v||_p)^{p-1} ||v||
  CheckResult f1_radius;     // with C_1(R) recomputed from the ball radius
  CheckResult f2_radius;
  CheckResult f3_radius;
  bool pass() const;
};

struct LipschitzConstants {
  double f1 = 0.0;  // times ||u-v||_{2p-2}
  double f2 = 0.0;  // times ||grad(u-v)||
  double f3 = 0.0;  // times ||u-v||_p
};

LipschitzConstants lipschitz_constants(double p, double radius, const SpectralBasis& basis);

LipschitzReport check_lipschitz_chain(const Field& u, const Field& v, double p, double radius,
                                      double tol = 1e-9);

struct HemicontinuityTable {
  std::vector<double> steps;   // 2^-j
  std::vector<double> values;  // |<G(psi + s zeta) - G(psi), eta>|
  bool strictly_decreasing = false;
  double terminal_ratio = 0.0;
};

HemicontinuityTable hemicontinuity_probe(const Field& psi, const Field& zeta, const Field& eta,
                                         double p, int levels = 13);

struct ProjectionReport {
  double idempotence = 0.0;
  double self_adjoint = 0.0;
  double norm_excess = 0.0;     // max(||P u|| - ||u||, ||S u|| - ||u||, 0)
  double unit_norm_gap = 0.0;   // | ||P w_1|| - 1 | + | ||S w_1|| - 1 |
  double commutation = 0.0;
  double range_leak = 0.0;      // S_m u outside V_m
  double rank_mismatch = 0.0;   // |rank P_m - #{lambda_n < 2^(m+1)}|
  /// Range inclusions R(S_{m-1}) in R(P_m) in R(S_m) counted on mode supports,
  /// plus ||P_m S_{m-1} u - S_{m-1} u|| + ||S_m P_{m-1} u - P_{m-1} u|| + ||P_m S_m u - S_m u||.
  double inclusion = 0.0;
  double convergence = 0.0;     // increases of ||P_k u - u||, ||S_k u - u|| in k, plus final gaps
  double symbol_range = 0.0;    // distance of s_m(lambda_n) from [0, 1]
  /// ||S_m P_m u - P_m u||. Not part of max_error: s_m < 1 on [2^m, 2^(m+1)),
  /// so this vanishes only when no eigenvalue falls in that band.
  double sp_identity_gap = 0.0;
  double max_error() const;
};

/// Properties (i)-(vi) of the pair P_m, S_m on fields u, v. The basis level
/// must exceed m so that P_m is not the identity.
ProjectionReport check_projection_algebra(const Field& u, const Field& v, int m);

/// (N(u), -Delta u) vs (p - 1) || |u|^{(p-2)/2} grad u ||^2
CheckResult check_lap_nn_identity(const Field& u, double p, double tol = 1e-9);
/// ||grad_M E(u)||^2 vs ||grad E(u)||^2 - S(u)^2 (unit u)
CheckResult check_gradM_relation(const Field& u, double p, double tol = 1e-9);
/// ||-Delta u + N(u)||^2 vs ||Delta u||^2 + ||u||_{2p-2}^{2p-2} + 2(p-1)|| |u|^{(p-2)/2} grad u ||^2
CheckResult check_grad_energy_norm(const Field& u, double p, double tol = 1e-9);
/// (G(u), u) = 0 for unit u.
CheckResult check_tangency(const Field& u, double p, double tol = 1e-9);

/// |(E(u + h w) - E(u - h w)) / 2h - (grad E(u), w)|
double gradient_consistency_error(const Field& u, const Field& w, double p, double h);

/// Smallest K with ||u(t) - v(t)|| <= ||u0 - v0|| exp(K t) over the
/// snapshot times the two trajectories share.
double gronwall_rate(const std::vector<Snapshot>& a, const std::vector<Snapshot>& b);

struct PositivityReport {
  bool applicable = false;  // initial state strictly positive on the grid
  bool pass = false;
  double min_value = 0.0;
};

PositivityReport positivity_check(const std::vector<Snapshot>& trajectory, double tol = 1e-10);

// --- suites ---------------------------------------------------------------

struct CaseRecord {
  int id = 0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string name;
  std::vector<CaseRecord> cases;
  bool pass() const;
  int failures() const;
};

/// Runs `cases` cases; case i gets seed `seed + i`.
SuiteReport run_suite(const std::string& name, int cases, std::uint64_t seed,
                      const std::function<CaseRecord(int, std::uint64_t)>& body);

struct PropertySuiteConfig {
  DomainSpec domain{1, {1.0}, {}, 9};
  int cases = 500;
  std::uint64_t seed = 12345;
  double tolerance = 1e-9;
  std::vector<double> p_values{2.0, 2.5, 3.0, 4.0, 6.0};
  int hemicontinuity_triples = 20;
  double radius = 4.0;
};

std::vector<SuiteReport> run_standard_suites(const PropertySuiteConfig& config);

}  // namespace sgflow
