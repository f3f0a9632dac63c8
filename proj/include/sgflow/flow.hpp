#pragma once

// Galerkin time integration u_m' = P_m G(u_m) on V_m with an energy ledger.

#include "sgflow/operators.hpp"
#include "sgflow/spectral_domain.hpp"

#include <string>
#include <vector>

namespace sgflow {

enum class Integrator { rk4, heun };

int integrator_order(Integrator integrator);
std::string to_string(Integrator integrator);
Integrator parse_integrator(const std::string& name);

/// How the S(u) u completion is scaled off the sphere.
///  - projected: S(u) u / ||u||^2, i.e. -pi_u grad E(u). The L2 norm is a first
///    integral of the semi-discrete system for every u.
///  - raw: S(u) u exactly as written. On the sphere the two agree, but off it
///    d/dt ||u||^2 = 2 S(u) (||u||^2 - 1), so norm errors grow like exp(2 S t).
enum class SphereForm { projected, raw };

struct FlowConfig {
  OperatorParams op;
  double dt = 1e-4;
  double horizon = 1.0;
  Integrator integrator = Integrator::rk4;
  bool renormalize = true;
  SphereForm form = SphereForm::projected;
  /// Stop once ||grad_M E||_{L2} drops below this; 0 disables the check.
  double stationarity_tol = 1e-8;
  /// Keep every n-th state in the trajectory (the final state is always kept);
  /// 0 keeps only the initial and final states.
  long snapshot_stride = 0;

  /// Throws std::invalid_argument on dt <= 0, T < 0 or an explicit step
  /// above 0.5 / lambda_max.
  void validate(const SpectralBasis& basis) const;
};

struct FlowState {
  Field u;
  double t = 0.0;
  long step = 0;
};

struct LedgerRow {
  double t = 0.0;
  double energy = 0.0;
  double s_value = 0.0;
  double gradM_sq = 0.0;
  double dissipation_integral = 0.0;
  /// | ||u|| - radius | before renormalization (0 for the initial row).
  double sphere_drift = 0.0;
  double min_value = 0.0;
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;
  double dt = 0.0;

  /// max drift / dt^2 over the run.
  double drift_constant() const;
  double max_drift() const;
  /// Largest single-step energy increase (<= 0 for a dissipative run).
  double max_energy_increase() const;
};

struct Snapshot {
  double t = 0.0;
  Field u;
};

struct FlowRun {
  FlowState final_state;
  std::vector<Snapshot> trajectory;
  EnergyLedger ledger;
  bool stationary = false;
};

/// u_m(0) = S_{m-1} u0 / ||S_{m-1} u0|| (times the radius), expressed in a
/// level-m basis built from u0's domain. Throws std::invalid_argument when
/// the smoothed datum is numerically zero.
FlowState init_state(const Field& u0, int m, double radius = 1.0);

/// P_m G(u) in the state's basis, scaled per `form`.
Field rhs_galerkin(const Field& u, const FlowConfig& config);

/// One step of size h. `drift` receives | ||u_pre|| - radius | before any
/// renormalization. Throws BlowUpError on a non-finite coefficient.
FlowState step(const FlowState& state, const FlowConfig& config, double h, double* drift = nullptr);
FlowState step(const FlowState& state, const FlowConfig& config);

/// Integrates to the horizon or until stationary.
FlowRun run_flow(const Field& u0, const FlowConfig& config);
/// Same, starting from an already initialized state.
FlowRun run_flow_from(const FlowState& initial, const FlowConfig& config);

LedgerRow diagnostics(const Field& u, const FlowConfig& config);

/// max_t |E(u0) - E(u(t)) - int_0^t ||grad_M E||^2| / |E(u0)|. Throws
/// std::invalid_argument on an empty ledger.
double dissipation_residual(const EnergyLedger& ledger);

}  // namespace sgflow
