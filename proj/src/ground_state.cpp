#include "sgflow/ground_state.hpp"

#include "sgflow/errors.hpp"
#include "sgflow/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace sgflow {

namespace {

// Monotone iterates may rise by roundoff only.
constexpr double kMonotoneSlack = 1e-10;

GroundStateResult make_result(Field u, double p, long iterations, GroundStateMethod method) {
  GroundStateResult r{std::move(u), p};
  r.lambda = s_functional(r.profile, p);
  r.residual = stationary_residual(r.profile, p);
  r.energy = energy(r.profile, p);
  r.iterations = iterations;
  r.method = method;
  return r;
}

}  // namespace

std::string to_string(GroundStateMethod method) {
  switch (method) {
    case GroundStateMethod::flow: return "flow";
    case GroundStateMethod::sub_super: return "sub_super";
    case GroundStateMethod::eigenfunction: return "eigenfunction";
  }
  return "unknown";
}

double stationary_residual(const Field& u, double p) { return l2_norm(rhs_G(u, p)); }

GroundStateResult solve_by_flow(const Field& u0, const FlowConfig& config) {
  if (!(config.stationarity_tol > 0.0)) {
    throw std::invalid_argument("solve_by_flow needs a positive stationarity tolerance");
  }
  FlowRun run = run_flow(u0, config);
  if (!run.stationary) {
    throw ConvergenceError("flow not stationary by t = " + std::to_string(run.final_state.t) +
                           ", last ||grad_M E|| = " +
                           std::to_string(std::sqrt(run.ledger.rows.back().gradM_sq)));
  }
  return make_result(std::move(run.final_state.u), config.op.p, run.final_state.step,
                     GroundStateMethod::flow);
}

GroundStateResult linear_ground_state(BasisPtr basis) {
  return make_result(Field::mode(std::move(basis), 0), 2.0, 0, GroundStateMethod::eigenfunction);
}

double fixed_lambda_residual(const Field& u, double p, double lambda) {
  return l2_norm(lambda * u - grad_energy(u, p));
}

SubSuperResult sub_super_solve(double lambda, double p, BasisPtr basis,
                               const SubSuperOptions& options) {
  if (!(p >= 3.0)) throw std::invalid_argument("sub/super iteration needs p >= 3");
  const double lambda1 = basis->lambda_min();
  if (!(lambda > lambda1)) {
    throw std::invalid_argument("no positive solution in this regime (lambda <= lambda_1)");
  }

  const auto& synth = basis->synthesis();
  const auto& anal = basis->analysis();
  const Eigen::VectorXd w1 = synth.col(0);

  SubSuperResult out{Field(basis)};
  // f(u) = lambda u - u^{p-1}; a constant c is a super-solution iff
  // c^{p-2} >= lambda. f(u) + k u must be nondecreasing on [0, c], so
  // k >= -inf f' = (p-1) c^{p-2} - lambda; k >= sup f' = lambda keeps k > 0.
  out.super_value = std::max(std::pow(lambda, 1.0 / (p - 1.0)), std::pow(lambda, 1.0 / (p - 2.0)));
  out.shift = std::max(lambda, (p - 1.0) * std::pow(out.super_value, p - 2.0) - lambda);
  // eps w_1 is a sub-solution iff (eps max w_1)^{p-2} <= lambda - lambda_1.
  out.sub_amplitude = 0.5 * std::pow(lambda - lambda1, 1.0 / (p - 2.0)) / w1.maxCoeff();
  const Eigen::VectorXd sub = out.sub_amplitude * w1;

  const double k = out.shift;
  const Eigen::ArrayXd inv_op = 1.0 / (basis->eigenvalues().array() + k);
  Eigen::VectorXd u = Eigen::VectorXd::Constant(basis->grid_size(), out.super_value);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(basis->size());
  Eigen::VectorXd g(u.size());
  out.max_increase = -std::numeric_limits<double>::infinity();
  out.min_sub_gap = (u - sub).minCoeff();

  for (long j = 0; j < options.max_iterations; ++j) {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      g(i) = (lambda + k) * u(i) - abs_pow_sign(u(i), p);
    }
    c = (anal * g).array() * inv_op;
    Eigen::VectorXd next = synth * c;
    const Eigen::VectorXd diff = next - u;
    const double rise = diff.maxCoeff();
    out.max_increase = std::max(out.max_increase, rise);
    if (rise > kMonotoneSlack) {
      throw InternalError("sub/super iterate increased by " + std::to_string(rise) +
                          " at iteration " + std::to_string(j + 1));
    }
    out.min_sub_gap = std::min(out.min_sub_gap, (next - sub).minCoeff());
    const double change = diff.cwiseAbs().maxCoeff();
    u = std::move(next);
    out.iterations = j + 1;
    if (change < options.tol) {
      out.profile = Field(basis, c);
      return out;
    }
  }
  throw ConvergenceError("sub/super iteration did not converge in " +
                         std::to_string(options.max_iterations) + " iterations");
}

GroundStateResult lambda_search(double p, BasisPtr basis, const LambdaSearchOptions& options,
                                std::vector<MassSample>* mass_curve) {
  if (p == 2.0) {
    throw std::invalid_argument("p = 2 has no sub/super branch; use linear_ground_state");
  }
  if (!(p >= 3.0)) throw std::invalid_argument("lambda search needs p >= 3");

  std::vector<MassSample> curve;
  long total_iterations = 0;
  auto mass_at = [&](double lambda) {
    SubSuperResult r = sub_super_solve(lambda, p, basis, options.inner);
    total_iterations += r.iterations;
    const double mass = r.profile.coefficients().squaredNorm();
    curve.push_back({lambda, mass});
    return std::make_pair(mass, std::move(r.profile));
  };

  const double lambda1 = basis->lambda_min();
  double lo = lambda1;
  double width = 1.0;
  double hi = lambda1 + width;
  auto [mass_hi, profile_hi] = mass_at(hi);
  int expansions = 0;
  while (mass_hi < 1.0) {
    if (++expansions > options.max_expansions) {
      throw ConvergenceError("no lambda bracket for unit mass after " +
                             std::to_string(options.max_expansions) + " expansions");
    }
    lo = hi;
    width *= 2.0;
    hi = lambda1 + width;
    std::tie(mass_hi, profile_hi) = mass_at(hi);
  }

  Field best = profile_hi;
  double best_err = std::abs(mass_hi - 1.0);
  for (int it = 0; it < options.max_bisections && best_err > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    auto [mass, profile] = mass_at(mid);
    if (std::abs(mass - 1.0) < best_err) {
      best_err = std::abs(mass - 1.0);
      best = profile;
    }
    (mass < 1.0 ? lo : hi) = mid;
  }

  std::vector<MassSample> sorted = curve;
  std::sort(sorted.begin(), sorted.end(),
            [](const MassSample& a, const MassSample& b) { return a.lambda < b.lambda; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (!(sorted[i].mass > sorted[i - 1].mass)) {
      throw ConvergenceError("mass(lambda) not increasing near lambda = " +
                             std::to_string(sorted[i].lambda));
    }
  }
  if (mass_curve) *mass_curve = std::move(curve);

  if (best_err > options.mass_tol) {
    throw ConvergenceError("bisection reached mass error " + std::to_string(best_err));
  }
  best *= 1.0 / l2_norm(best);
  return make_result(std::move(best), p, total_iterations, GroundStateMethod::sub_super);
}

CrossValidation cross_validate(const GroundStateResult& a, const GroundStateResult& b,
                               double tolerance) {
  if (a.p != b.p) throw std::invalid_argument("cross-validation across different p");
  if (a.profile.basis_ptr() != b.profile.basis_ptr() &&
      !a.profile.basis().same_domain(b.profile.basis())) {
    throw std::invalid_argument("cross-validation across different domains");
  }
  CrossValidation cv;
  cv.tolerance = tolerance;
  cv.l2_diff = (a.profile.coefficients() - b.profile.coefficients()).norm();
  cv.lambda_diff = std::abs(a.lambda - b.lambda);
  cv.energy_diff = std::abs(a.energy - b.energy);
  cv.pass = cv.l2_diff < tolerance && cv.lambda_diff < tolerance && cv.energy_diff < tolerance;
  return cv;
}

}  // namespace sgflow
