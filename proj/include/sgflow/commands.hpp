#pragma once

// Command drivers. Each returns a process exit code:
//   0 success, 1 runtime or check failure, 2 usage or configuration error.

#include "sgflow/config.hpp"
#include "sgflow/ground_state.hpp"
#include "sgflow/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sgflow {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int cmd_flow(const ExperimentConfig& config, std::ostream& log);
int cmd_ground_state(const ExperimentConfig& config, std::ostream& log);
int cmd_asymptotics(const ExperimentConfig& config, std::ostream& log);
int cmd_properties(const ExperimentConfig& config, std::ostream& log);

/// Validates, creates the output directory, dispatches on config.command and
/// maps exceptions to exit codes (message written to `err`).
int run_command(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

/// Reference ground state for a config: the eigenfunction at p = 2, the
/// lambda search for p >= 3, the flow from w_1 otherwise.
GroundStateResult reference_ground_state(const ExperimentConfig& config, BasisPtr basis);

/// tau_n = tau0 2^n, n = 0 .. count-1
std::vector<double> checkpoint_schedule(double tau0, int count);

/// Flow from u0 with errors against U recorded at each checkpoint.
std::vector<ConvergenceRow> convergence_study(const Field& u0, const FlowConfig& flow,
                                              const GroundStateResult& ground,
                                              const std::vector<double>& taus,
                                              EnergyLedger* ledger = nullptr);

}  // namespace sgflow
