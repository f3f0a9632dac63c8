#pragma once

// Text formats. Every file starts with a `# config_hash=<16 hex digits>` line;
// reals are written with 17 significant digits so files round-trip exactly.
//
// Snapshot:   # basis=sine d=<d> L=<L1[,L2]> m=<m> [t=<t>]
//             k_1[,k_2],lambda,coefficient
// Ledger:     t,energy,S,gradM_sq,dissipation_integral,sphere_drift,min_value

#include "sgflow/flow.hpp"
#include "sgflow/ground_state.hpp"
#include "sgflow/property_lab.hpp"
#include "sgflow/spectral_domain.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sgflow {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& text);
std::string hash_hex(std::uint64_t hash);

std::string format_real(double v);

void write_snapshot(std::ostream& os, const Field& u, std::optional<double> t,
                    const std::string& config_hash);
void write_snapshot_file(const std::string& path, const Field& u, std::optional<double> t,
                         const std::string& config_hash);

struct SnapshotData {
  Field field;
  std::optional<double> t;
  std::string config_hash;
};

/// Rebuilds the basis from the header. Throws std::runtime_error on malformed
/// input or a multi-index the header's basis does not admit.
SnapshotData read_snapshot(std::istream& is);
SnapshotData read_snapshot_file(const std::string& path);

void write_ledger(std::ostream& os, const EnergyLedger& ledger, const std::string& config_hash);
void write_ledger_file(const std::string& path, const EnergyLedger& ledger,
                       const std::string& config_hash);

/// {lambda, energy, residual, method, iterations} plus the config hash.
std::string ground_state_json(const GroundStateResult& r, const std::string& config_hash);

/// One entry per suite with every case (id, seed, margin, pass, note).
std::string properties_json(const std::vector<SuiteReport>& suites, const std::string& config_hash);

struct ConvergenceRow {
  int n = 0;
  double tau = 0.0;
  double l2_error = 0.0;
  double h1_error = 0.0;
  double proxy_error = 0.0;
  double s_value = 0.0;
  double s_error = 0.0;
};

void write_convergence_file(const std::string& path, const std::vector<ConvergenceRow>& rows,
                            const std::string& config_hash);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace sgflow
