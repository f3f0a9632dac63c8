#include "sgflow/flow.hpp"

#include "sgflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgflow {

namespace {

// Everything one right-hand-side evaluation needs from a single synthesis.
struct Pieces {
  Eigen::VectorXd samples;
  Eigen::VectorXd nonlinear;  // coefficients of P N(u)
  double h1_sq = 0.0;
  double lp_p = 0.0;
  double norm_sq = 0.0;
};

Pieces evaluate_pieces(const Field& u, double p) {
  const auto& basis = u.basis();
  const auto& a = u.coefficients();
  Pieces out;
  out.samples = basis.synthesis() * a;
  out.h1_sq = (basis.eigenvalues().array() * a.array().square()).sum();
  out.norm_sq = a.squaredNorm();
  if (p == 2.0) {
    out.nonlinear = a;
    out.lp_p = out.norm_sq;
  } else {
    Eigen::VectorXd n = nonlinearity_samples(out.samples, p);
    out.lp_p = basis.weight() * n.dot(out.samples);
    out.nonlinear = basis.analysis() * n;
  }
  return out;
}

void check_finite(const Field& u, double t) {
  if (!u.coefficients().allFinite()) {
    throw BlowUpError("non-finite coefficient at t = " + std::to_string(t));
  }
}

}  // namespace

int integrator_order(Integrator integrator) { return integrator == Integrator::rk4 ? 4 : 2; }

std::string to_string(Integrator integrator) {
  return integrator == Integrator::rk4 ? "rk4" : "heun";
}

Integrator parse_integrator(const std::string& name) {
  if (name == "rk4") return Integrator::rk4;
  if (name == "heun") return Integrator::heun;
  throw std::invalid_argument("unknown integrator '" + name + "'");
}

void FlowConfig::validate(const SpectralBasis& basis) const {
  op.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be non-negative");
  if (dt > 0.5 / basis.lambda_max() * (1.0 + 1e-12)) {
    throw std::invalid_argument("time step exceeds 0.5 / lambda_max = " +
                                std::to_string(0.5 / basis.lambda_max()));
  }
  if (stationarity_tol < 0.0) throw std::invalid_argument("negative stationarity tolerance");
  if (snapshot_stride < 0) throw std::invalid_argument("negative snapshot stride");
}

double EnergyLedger::max_drift() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.sphere_drift);
  return m;
}

double EnergyLedger::drift_constant() const { return dt > 0.0 ? max_drift() / (dt * dt) : 0.0; }

double EnergyLedger::max_energy_increase() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    m = std::max(m, rows[i].energy - rows[i - 1].energy);
  }
  return rows.size() < 2 ? 0.0 : m;
}

FlowState init_state(const Field& u0, int m, double radius) {
  const auto& src = u0.basis();
  BasisPtr basis = u0.basis_ptr();
  if (src.level() != m) {
    DomainSpec spec = src.domain();
    spec.level = m;
    spec.nodes.clear();
    basis = build_basis(spec);
  }
  Field u = apply_Sm(transfer(u0, basis), m - 1);
  const double n = l2_norm(u);
  if (!(n > 1e-8)) throw std::invalid_argument("initial datum annihilated by S_{m-1}");
  u *= radius / n;
  return FlowState{std::move(u), 0.0, 0};
}

Field rhs_galerkin(const Field& u, const FlowConfig& config) {
  const double p = config.op.p;
  const Pieces pc = evaluate_pieces(u, p);
  double scale = pc.h1_sq + pc.lp_p;
  if (config.form == SphereForm::projected) {
    if (!(pc.norm_sq > 1e-16)) throw std::invalid_argument("degenerate base point");
    scale /= pc.norm_sq;
  }
  Eigen::VectorXd c = scale * u.coefficients();
  c.array() -= u.basis().eigenvalues().array() * u.coefficients().array();
  c -= pc.nonlinear;
  return Field(u.basis_ptr(), std::move(c));
}

FlowState step(const FlowState& state, const FlowConfig& config, double h, double* drift) {
  const Field& u = state.u;
  Field next = u;
  if (config.integrator == Integrator::rk4) {
    const Field k1 = rhs_galerkin(u, config);
    const Field k2 = rhs_galerkin(u + (0.5 * h) * k1, config);
    const Field k3 = rhs_galerkin(u + (0.5 * h) * k2, config);
    const Field k4 = rhs_galerkin(u + h * k3, config);
    next.coefficients() += (h / 6.0) * (k1.coefficients() + 2.0 * k2.coefficients() +
                                        2.0 * k3.coefficients() + k4.coefficients());
  } else {
    const Field k1 = rhs_galerkin(u, config);
    const Field k2 = rhs_galerkin(u + h * k1, config);
    next.coefficients() += (0.5 * h) * (k1.coefficients() + k2.coefficients());
  }
  const double t_next = state.t + h;
  check_finite(next, t_next);

  const double radius = config.op.radius;
  const double n = l2_norm(next);
  if (drift) *drift = std::abs(n - radius);
  if (config.renormalize) {
    if (!(n > 0.0)) throw BlowUpError("state collapsed to zero");
    next *= radius / n;
  }
  return FlowState{std::move(next), t_next, state.step + 1};
}

FlowState step(const FlowState& state, const FlowConfig& config) {
  return step(state, config, config.dt, nullptr);
}

LedgerRow diagnostics(const Field& u, const FlowConfig& config) {
  const double p = config.op.p;
  const Pieces pc = evaluate_pieces(u, p);
  LedgerRow row;
  row.energy = 0.5 * pc.h1_sq + pc.lp_p / p;
  row.s_value = pc.h1_sq + pc.lp_p;
  // grad E = -Delta u + P N(u); grad_M E = grad E - (u, grad E) u / ||u||^2.
  Eigen::VectorXd g = u.basis().eigenvalues().array() * u.coefficients().array();
  g += pc.nonlinear;
  if (pc.norm_sq > 0.0) {
    g -= (u.coefficients().dot(g) / pc.norm_sq) * u.coefficients();
    row.gradM_sq = g.squaredNorm();
  }
  row.min_value = pc.samples.size() ? pc.samples.minCoeff() : 0.0;
  return row;
}

FlowRun run_flow(const Field& u0, const FlowConfig& config) {
  return run_flow_from(init_state(u0, u0.basis().level(), config.op.radius), config);
}

FlowRun run_flow_from(const FlowState& initial, const FlowConfig& config) {
  config.validate(initial.u.basis());
  FlowRun run{initial, {}, {}, false};
  run.ledger.dt = config.dt;
  run.trajectory.push_back({initial.t, initial.u});

  LedgerRow row = diagnostics(initial.u, config);
  row.t = initial.t;
  run.ledger.rows.push_back(row);

  const double t_end = initial.t + config.horizon;
  const long n_full = static_cast<long>(std::floor(config.horizon / config.dt + 1e-9));
  const double tail = config.horizon - static_cast<double>(n_full) * config.dt;
  const long n_steps = n_full + (tail > 1e-12 * config.dt ? 1 : 0);
  auto stationary = [&](const LedgerRow& r) {
    return config.stationarity_tol > 0.0 && std::sqrt(r.gradM_sq) < config.stationarity_tol;
  };

  FlowState& state = run.final_state;
  run.stationary = stationary(row);
  for (long i = 0; i < n_steps && !run.stationary; ++i) {
    const double h = (i < n_full) ? config.dt : tail;
    double drift = 0.0;
    FlowState next = step(state, config, h, &drift);
    next.t = (i < n_full) ? initial.t + static_cast<double>(i + 1) * config.dt : t_end;
    LedgerRow nrow = diagnostics(next.u, config);
    nrow.t = next.t;
    nrow.sphere_drift = drift;
    nrow.dissipation_integral =
        row.dissipation_integral + 0.5 * (next.t - state.t) * (row.gradM_sq + nrow.gradM_sq);
    state = std::move(next);
    row = nrow;
    run.ledger.rows.push_back(row);
    run.stationary = stationary(row);
    const bool last = (i + 1 == n_steps) || run.stationary;
    if (!last && config.snapshot_stride > 0 && state.step % config.snapshot_stride == 0) {
      run.trajectory.push_back({state.t, state.u});
    }
  }
  if (state.step > 0) run.trajectory.push_back({state.t, state.u});
  return run;
}

double dissipation_residual(const EnergyLedger& ledger) {
  if (ledger.rows.empty()) throw std::invalid_argument("empty ledger");
  const double e0 = ledger.rows.front().energy;
  const double scale = std::abs(e0) > 0.0 ? std::abs(e0) : 1.0;
  double worst = 0.0;
  for (const auto& r : ledger.rows) {
    worst = std::max(worst, std::abs(e0 - r.energy - r.dissipation_integral) / scale);
  }
  return worst;
}

}  // namespace sgflow
