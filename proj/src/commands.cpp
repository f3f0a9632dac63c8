#include "sgflow/commands.hpp"

#include "sgflow/errors.hpp"
#include "sgflow/presets.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

namespace sgflow {

namespace fs = std::filesystem;

namespace {

std::string out_path(const ExperimentConfig& c, const std::string& name) {
  return (fs::path(c.out_dir) / name).string();
}

std::string snapshot_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%05zu.csv", i);
  return buf;
}

FlowConfig ground_flow_config(const ExperimentConfig& c) {
  FlowConfig f = c.flow;
  f.horizon = c.ground_state.horizon;
  f.stationarity_tol = c.ground_state.stationarity_tol;
  f.renormalize = true;
  f.form = SphereForm::projected;
  f.snapshot_stride = 0;
  return f;
}

void write_ground_state(const ExperimentConfig& c, const GroundStateResult& r,
                        const std::string& stem, const std::string& hash) {
  write_snapshot_file(out_path(c, stem + ".csv"), r.profile, std::nullopt, hash);
  write_text_file(out_path(c, stem + ".json"), ground_state_json(r, hash));
}

}  // namespace

std::vector<double> checkpoint_schedule(double tau0, int count) {
  std::vector<double> out;
  for (int n = 0; n < count; ++n) out.push_back(std::ldexp(tau0, n));
  return out;
}

GroundStateResult reference_ground_state(const ExperimentConfig& c, BasisPtr basis) {
  const double p = c.flow.op.p;
  if (p == 2.0) return linear_ground_state(basis);
  if (p >= 3.0) return lambda_search(p, basis);
  return solve_by_flow(Field::mode(basis, 0), ground_flow_config(c));
}

std::vector<ConvergenceRow> convergence_study(const Field& u0, const FlowConfig& flow,
                                              const GroundStateResult& ground,
                                              const std::vector<double>& taus,
                                              EnergyLedger* ledger) {
  FlowConfig f = flow;
  f.stationarity_tol = 0.0;
  f.snapshot_stride = 0;
  FlowState state = init_state(u0, u0.basis().level(), f.op.radius);
  const Field& U = ground.profile;
  const double p = f.op.p;
  if (ledger) {
    ledger->rows.clear();
    ledger->dt = f.dt;
  }

  std::vector<ConvergenceRow> rows;
  double offset = 0.0;
  for (std::size_t n = 0; n < taus.size(); ++n) {
    f.horizon = taus[n] - state.t;
    if (f.horizon < 0.0) throw std::invalid_argument("checkpoints must increase");
    FlowRun run = run_flow_from(state, f);
    if (ledger) {
      for (std::size_t i = (ledger->rows.empty() ? 0 : 1); i < run.ledger.rows.size(); ++i) {
        LedgerRow r = run.ledger.rows[i];
        r.dissipation_integral += offset;
        ledger->rows.push_back(r);
      }
      offset = ledger->rows.back().dissipation_integral;
    }
    state = std::move(run.final_state);
    state.t = taus[n];

    const Field d = transfer(state.u, U.basis_ptr()) - U;
    ConvergenceRow row;
    row.n = static_cast<int>(n);
    row.tau = taus[n];
    row.l2_error = l2_norm(d);
    row.h1_error = std::sqrt(h1_seminorm_sq(d));
    row.proxy_error = std::max(row.l2_error, row.h1_error);
    row.s_value = s_functional(state.u, p);
    row.s_error = std::abs(row.s_value - ground.lambda);
    rows.push_back(row);
  }
  return rows;
}

int cmd_flow(const ExperimentConfig& c, std::ostream& log) {
  const std::string hash = config_hash(c);
  const BasisPtr basis = build_basis(c.domain);
  const Field u0 = make_initial(c.preset, basis, c.seed);
  const FlowRun run = run_flow(u0, c.flow);

  write_ledger_file(out_path(c, "ledger.csv"), run.ledger, hash);
  for (std::size_t i = 0; i < run.trajectory.size(); ++i) {
    write_snapshot_file(out_path(c, snapshot_name(i)), run.trajectory[i].u, run.trajectory[i].t, hash);
  }

  const LedgerRow& last = run.ledger.rows.back();
  log << "flow: " << run.ledger.rows.size() << " ledger rows, t=" << format_real(last.t)
      << " energy=" << format_real(last.energy) << " max_drift=" << format_real(run.ledger.max_drift())
      << (run.stationary ? " (stationary)" : "") << '\n';

  if (c.flow.renormalize) {
    const double gap = std::abs(l2_norm(run.final_state.u) - c.flow.op.radius);
    if (gap > 1e-12) {
      log << "check failed: |‖u‖ - radius| = " << format_real(gap) << " after renormalization\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

int cmd_ground_state(const ExperimentConfig& c, std::ostream& log) {
  const std::string hash = config_hash(c);
  const BasisPtr basis = build_basis(c.domain);
  const double p = c.flow.op.p;
  const auto method = c.ground_state.method;

  std::vector<GroundStateResult> results;
  if (p == 2.0) {
    results.push_back(linear_ground_state(basis));
  } else {
    if (method != GroundStateChoice::sub_super) {
      const Field u0 = make_initial(c.preset, basis, c.seed);
      results.push_back(solve_by_flow(u0, ground_flow_config(c)));
    }
    if (method != GroundStateChoice::flow) {
      if (p < 3.0) throw ConfigError("the sub/super method needs p >= 3");
      results.push_back(lambda_search(p, basis));
    }
  }

  bool ok = true;
  for (const auto& r : results) {
    write_ground_state(c, r, "ground_state_" + to_string(r.method), hash);
    log << "ground state (" << to_string(r.method) << "): lambda=" << format_real(r.lambda)
        << " energy=" << format_real(r.energy) << " residual=" << format_real(r.residual) << '\n';
    if (!(r.residual < c.ground_state.residual_tol)) {
      log << "check failed: residual above " << format_real(c.ground_state.residual_tol) << '\n';
      ok = false;
    }
  }
  if (results.size() == 2) {
    const CrossValidation cv = cross_validate(results[0], results[1], c.ground_state.cross_tolerance);
    log << "cross-validation: l2=" << format_real(cv.l2_diff) << " lambda=" << format_real(cv.lambda_diff)
        << " energy=" << format_real(cv.energy_diff) << (cv.pass ? " pass" : " FAIL") << '\n';
    ok = ok && cv.pass;
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_asymptotics(const ExperimentConfig& c, std::ostream& log) {
  const std::string hash = config_hash(c);
  const BasisPtr basis = build_basis(c.domain);
  const Field u0 = make_initial(c.preset, basis, c.seed);
  if (!is_positive_on_grid(u0)) {
    throw ConfigError("asymptotics needs a positive initial datum; preset '" + to_string(c.preset) +
                      "' changes sign");
  }
  const GroundStateResult ground = reference_ground_state(c, basis);
  write_ground_state(c, ground, "ground_state", hash);

  EnergyLedger ledger;
  const auto taus = checkpoint_schedule(c.asymptotics.tau0, c.asymptotics.checkpoints);
  const auto rows = convergence_study(u0, c.flow, ground, taus, &ledger);
  write_convergence_file(out_path(c, "convergence.csv"), rows, hash);
  write_ledger_file(out_path(c, "ledger.csv"), ledger, hash);

  for (const auto& r : rows) {
    log << "tau=" << format_real(r.tau) << " l2=" << format_real(r.l2_error)
        << " h1=" << format_real(r.h1_error) << " |S-lambda|=" << format_real(r.s_error) << '\n';
  }
  bool ok = true;
  const std::size_t tail = std::min<std::size_t>(5, rows.size());
  for (std::size_t i = rows.size() - tail + 1; i < rows.size(); ++i) {
    if (!(rows[i].proxy_error < rows[i - 1].proxy_error)) {
      log << "check failed: error not decreasing at checkpoint " << i << '\n';
      ok = false;
    }
  }
  if (!(rows.back().proxy_error < c.asymptotics.tolerance)) {
    log << "check failed: final error " << format_real(rows.back().proxy_error) << '\n';
    ok = false;
  }
  if (!(rows.back().s_error < c.asymptotics.s_tolerance)) {
    log << "check failed: final |S - lambda| " << format_real(rows.back().s_error) << '\n';
    ok = false;
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_properties(const ExperimentConfig& c, std::ostream& log) {
  const std::string hash = config_hash(c);
  const auto suites = run_standard_suites(c.properties);
  write_text_file(out_path(c, "properties.json"), properties_json(suites, hash));
  bool ok = true;
  for (const auto& s : suites) {
    log << (s.pass() ? "pass " : "FAIL ") << s.name << " (" << s.cases.size() << " cases, "
        << s.failures() << " failed)\n";
    ok = ok && s.pass();
  }
  return ok ? kExitOk : kExitFailure;
}

int run_command(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  try {
    validate_config(config);
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec || !fs::is_directory(config.out_dir)) {
      throw ConfigError("cannot create output directory '" + config.out_dir + "'");
    }
    if (config.command == "flow") return cmd_flow(config, log);
    if (config.command == "ground-state") return cmd_ground_state(config, log);
    if (config.command == "asymptotics") return cmd_asymptotics(config, log);
    if (config.command == "properties") return cmd_properties(config, log);
    throw ConfigError("unknown command '" + config.command + "'");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace sgflow
