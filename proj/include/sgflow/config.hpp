#pragma once

// Experiment configuration, read from an INI document (format version 1):
//
//   [format]      version = 1
//   [domain]      dimension, lengths (comma list), nodes (comma list, optional), level
//   [operator]    p, radius, general_constraint
//   [flow]        dt, horizon, integrator (rk4|heun), renormalize, form (projected|raw),
//                 stationarity_tol, snapshot_stride
//   [initial]     preset (first_mode|mixed|bump|positive_random), seed
//   [ground_state] method (flow|sub_super|both), horizon, stationarity_tol, residual_tol,
//                 cross_tolerance
//   [asymptotics] tau0, checkpoints, tolerance, s_tolerance
//   [properties]  cases, seed, tolerance, p_values (comma list), hemicontinuity_triples, radius
//
// Every key is optional; missing keys keep the defaults below.

#include "sgflow/flow.hpp"
#include "sgflow/presets.hpp"
#include "sgflow/property_lab.hpp"
#include "sgflow/spectral_domain.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace sgflow {

/// Usage or configuration problem (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GroundStateChoice { flow, sub_super, both };

struct AsymptoticsConfig {
  double tau0 = 0.05;
  int checkpoints = 6;
  double tolerance = 1e-4;
  double s_tolerance = 1e-5;
};

struct GroundStateConfig {
  GroundStateChoice method = GroundStateChoice::both;
  /// Horizon for the flow solver; the flow stops earlier once stationary.
  double horizon = 20.0;
  double stationarity_tol = 1e-9;
  double residual_tol = 1e-6;
  double cross_tolerance = 1e-5;
};

struct ExperimentConfig {
  std::string command;
  DomainSpec domain;
  FlowConfig flow;
  Preset preset = Preset::first_mode;
  std::uint64_t seed = 12345;
  GroundStateConfig ground_state;
  AsymptoticsConfig asymptotics;
  PropertySuiteConfig properties;
  std::string out_dir = ".";
  bool quiet = false;
};

constexpr int kConfigFormatVersion = 1;

/// Parses the INI text. Throws ConfigError on syntax errors, unknown enum
/// values, or values outside the module invariants.
ExperimentConfig parse_config(const std::string& text);
/// Throws ConfigError when the file cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Applies a seed override to the initial datum and the property suites.
void override_seed(ExperimentConfig& config, std::uint64_t seed);

/// Checks cross-field invariants (step size against the basis, positive
/// horizons, ...). Throws ConfigError.
void validate_config(const ExperimentConfig& config);

/// Canonical INI rendering of every field; the config hash is its FNV-1a.
std::string canonical_text(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

}  // namespace sgflow
