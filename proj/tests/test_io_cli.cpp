#include "sgflow/commands.hpp"
#include "sgflow/config.hpp"
#include "sgflow/io.hpp"
#include "sgflow/presets.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sgflow;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("sgflow_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ExperimentConfig quick(const std::string& command, const fs::path& out, const std::string& extra = "") {
  ExperimentConfig c = parse_config("[flow]\nhorizon = 0.05\n" + extra);
  c.command = command;
  c.out_dir = out.string();
  return c;
}

int run(const ExperimentConfig& c) {
  std::ostringstream log, err;
  return run_command(c, log, err);
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SGFLOW_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hash_hex(0xabcULL) == "0000000000000abc");
}

TEST_CASE("snapshot round trip") {
  for (const DomainSpec& spec : {DomainSpec{1, {1.0}, {}, 9}, DomainSpec{2, {1.0, 0.75}, {}, 7}}) {
    auto b = build_basis(spec);
    const Field u = make_initial(Preset::positive_random, b, 5);
    std::stringstream ss;
    write_snapshot(ss, u, 0.25, "00ff");
    const std::string text = ss.str();
    CHECK(text.rfind("# config_hash=00ff\n# basis=sine d=", 0) == 0);
    const SnapshotData back = read_snapshot(ss);
    CHECK(back.config_hash == "00ff");
    REQUIRE(back.t.has_value());
    CHECK(*back.t == 0.25);
    CHECK(back.field.coefficients() == u.coefficients());
    CHECK(back.field.basis().same_domain(*b));
  }
}

TEST_CASE("snapshot header format") {
  auto b = build_basis({1, {1.0}, {}, 3});
  std::stringstream ss;
  write_snapshot(ss, Field::mode(b, 0), std::nullopt, "h");
  CHECK(ss.str() == "# config_hash=h\n# basis=sine d=1 L=1 m=3\n1,9.869604401089358,1\n");
}

TEST_CASE("malformed snapshots are rejected") {
  std::stringstream no_header("1,9.8,1\n");
  CHECK_THROWS_AS(read_snapshot(no_header), std::runtime_error);
  std::stringstream bad_mode("# basis=sine d=1 L=1 m=3\n2,39.4,1\n");
  CHECK_THROWS_AS(read_snapshot(bad_mode), std::runtime_error);
  std::stringstream bad_number("# basis=sine d=1 L=1 m=3\n1,9.8,x\n");
  CHECK_THROWS_AS(read_snapshot(bad_number), std::runtime_error);
}

TEST_CASE("ledger format") {
  EnergyLedger l;
  l.rows.push_back({0.0, 1.5, 3.0, 0.25, 0.0, 0.0, -0.125});
  std::stringstream ss;
  write_ledger(ss, l, "abc");
  CHECK(ss.str() ==
        "# config_hash=abc\nt,energy,S,gradM_sq,dissipation_integral,sphere_drift,min_value\n"
        "0,1.5,3,0.25,0,0,-0.125\n");
}

TEST_CASE("ground-state sidecar fields") {
  auto b = build_basis({1, {1.0}, {}, 9});
  const auto j = nlohmann::json::parse(ground_state_json(linear_ground_state(b), "x"));
  for (const char* key : {"lambda", "energy", "residual", "method", "iterations", "config_hash"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "eigenfunction");
}

TEST_CASE("config parsing") {
  const ExperimentConfig d = parse_config("");
  CHECK(d.flow.op.p == 4.0);
  CHECK(d.domain.level == 9);
  CHECK(d.asymptotics.tau0 == 0.05);
  CHECK(d.properties.cases == 500);

  const ExperimentConfig c = parse_config(
      "[domain]\ndimension = 2\nlengths = 1.0, 2.0\nlevel = 7\n"
      "[operator]\np = 3\n[flow]\nintegrator = heun\nrenormalize = false\n"
      "[initial]\npreset = bump\nseed = 9\n[properties]\np_values = 2, 4\n");
  CHECK(c.domain.dimension == 2);
  CHECK(c.domain.lengths == std::vector<double>{1.0, 2.0});
  CHECK(c.flow.integrator == Integrator::heun);
  CHECK_FALSE(c.flow.renormalize);
  CHECK(c.preset == Preset::bump);
  CHECK(c.seed == 9);
  CHECK(c.properties.p_values == std::vector<double>{2.0, 4.0});

  CHECK_THROWS_AS(parse_config("[operator]\np = four\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[initial]\npreset = spiral\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[flow]\nrenormalize = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[format]\nversion = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[domain\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.ini"), ConfigError);
}

TEST_CASE("canonical text round-trips and drives the hash") {
  ExperimentConfig c = parse_config("[operator]\np = 3.5\n[flow]\ndt = 2e-4\n");
  const ExperimentConfig again = parse_config(canonical_text(c));
  CHECK(canonical_text(again) == canonical_text(c));
  CHECK(config_hash(again) == config_hash(c));
  override_seed(c, 77);
  CHECK(config_hash(again) != config_hash(c));
}

TEST_CASE("config validation") {
  ExperimentConfig c = parse_config("[operator]\np = 1.5\n");
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = parse_config("[flow]\ndt = 1e-2\n");
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = parse_config("[domain]\nlevel = 1\n");
  CHECK_THROWS_AS(validate_config(c), ConfigError);
}

TEST_CASE("flow command writes ledger and snapshots") {
  const fs::path out = scratch("flow");
  ExperimentConfig c = quick("flow", out, "snapshot_stride = 100\n");
  CHECK(run(c) == kExitOk);
  const std::string ledger = read_file(out / "ledger.csv");
  CHECK(ledger.rfind("# config_hash=" + config_hash(c) + "\n", 0) == 0);
  CHECK(fs::exists(out / "snapshot_00000.csv"));
  CHECK(fs::exists(out / "snapshot_00005.csv"));
  const SnapshotData last = read_snapshot_file((out / "snapshot_00005.csv").string());
  CHECK(*last.t == doctest::Approx(0.05));
}

TEST_CASE("zero horizon gives a one-row ledger") {
  const fs::path out = scratch("flow0");
  ExperimentConfig c = quick("flow", out);
  c.flow.horizon = 0.0;
  CHECK(run(c) == kExitOk);
  std::ifstream is(out / "ledger.csv");
  int lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == 3);
}

TEST_CASE("exit codes") {
  const fs::path out = scratch("codes");
  ExperimentConfig c = quick("properties", out);
  c.properties.cases = 30;
  c.properties.tolerance = 0.0;
  CHECK(run(c) == kExitFailure);

  c = quick("flow", out);
  c.flow.op.p = 1.5;
  CHECK(run(c) == kExitUsage);

  c = quick("asymptotics", out);
  c.preset = Preset::mixed;
  CHECK(run(c) == kExitUsage);

  c = quick("teleport", out);
  CHECK(run(c) == kExitUsage);
}

TEST_CASE("ground-state command") {
  const fs::path out = scratch("gs");
  ExperimentConfig c = quick("ground-state", out, "[initial]\npreset = positive_random\n");
  CHECK(run(c) == kExitOk);
  CHECK(fs::exists(out / "ground_state_flow.csv"));
  CHECK(fs::exists(out / "ground_state_sub_super.json"));
  const auto j = nlohmann::json::parse(read_file(out / "ground_state_sub_super.json"));
  CHECK(j["residual"].get<double>() < 1e-6);

  c.flow.op.p = 2.5;
  CHECK(run(c) == kExitUsage);
  c.ground_state.method = GroundStateChoice::flow;
  CHECK(run(c) == kExitOk);
}

TEST_CASE("asymptotics command") {
  const fs::path out = scratch("asym");
  ExperimentConfig c = quick("asymptotics", out, "[initial]\npreset = positive_random\n");
  CHECK(run(c) == kExitOk);
  std::ifstream is(out / "convergence.csv");
  std::string hash, header;
  std::getline(is, hash);
  std::getline(is, header);
  CHECK(header == "n,tau,l2_error,h1_error,proxy_error,S,S_error");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == c.asymptotics.checkpoints);
  CHECK(checkpoint_schedule(0.05, 3) == std::vector<double>{0.05, 0.1, 0.2});
}

TEST_CASE("command line") {
  const fs::path out = scratch("cli");
  CHECK(cli("flow --config /nonexistent.ini --out " + out.string()) == kExitUsage);
  CHECK(cli("") == kExitUsage);
  CHECK(cli("flow") == kExitUsage);

  const fs::path cfg = out / "run.ini";
  std::ofstream(cfg) << "[operator]\np = 4\n[flow]\nhorizon = 0.2\n[initial]\npreset = positive_random\n";
  CHECK(cli("flow --quiet --config " + cfg.string() + " --seed 3 --out " + (out / "a").string()) == 0);
  CHECK(cli("flow --quiet --config " + cfg.string() + " --seed 3 --out " + (out / "b").string()) == 0);
  CHECK(cli("flow --quiet --config " + cfg.string() + " --seed 4 --out " + (out / "c").string()) == 0);
  const std::string a = read_file(out / "a" / "ledger.csv");
  CHECK(!a.empty());
  CHECK(a == read_file(out / "b" / "ledger.csv"));
  CHECK(a != read_file(out / "c" / "ledger.csv"));

  std::ofstream(out / "bad.ini") << "[operator]\np = 1\n";
  CHECK(cli("properties --config " + (out / "bad.ini").string() + " --out " + out.string()) == kExitUsage);
}
