#include "sgflow/config.hpp"

#include "sgflow/io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <sstream>

namespace sgflow {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  try {
    const std::string v = trim(*node);
    std::size_t used = 0;
    T out{};
    if constexpr (std::is_same_v<T, double>) {
      out = std::stod(v, &used);
    } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, long>) {
      out = static_cast<T>(std::stol(v, &used));
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
      out = std::stoull(v, &used);
    }
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("bad value for " + key + ": '" + *node + "'");
  }
}

bool get_bool(const pt::ptree& tree, const std::string& key, bool fallback) {
  const auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  const std::string v = trim(*node);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean for " + key + ": '" + *node + "'");
}

std::string get_string(const pt::ptree& tree, const std::string& key, const std::string& fallback) {
  const auto node = tree.get_optional<std::string>(key);
  return node ? trim(*node) : fallback;
}

template <class T>
std::vector<T> get_list(const pt::ptree& tree, const std::string& key, std::vector<T> fallback) {
  const auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  std::vector<T> out;
  std::stringstream ss(*node);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    pt::ptree one;
    one.put("v", item);
    out.push_back(get<T>(one, "v", T{}));
  }
  (void)key;
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) out += format_real(v[i]);
    else out += std::to_string(v[i]);
  }
  return out;
}

std::string to_string(GroundStateChoice c) {
  switch (c) {
    case GroundStateChoice::flow: return "flow";
    case GroundStateChoice::sub_super: return "sub_super";
    case GroundStateChoice::both: return "both";
  }
  return "both";
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }

  const int version = get<int>(tree, "format.version", kConfigFormatVersion);
  if (version != kConfigFormatVersion) {
    throw ConfigError("unsupported config format version " + std::to_string(version));
  }

  ExperimentConfig c;
  c.domain.dimension = get<int>(tree, "domain.dimension", 1);
  c.domain.lengths = get_list<double>(tree, "domain.lengths",
                                      std::vector<double>(static_cast<std::size_t>(std::max(c.domain.dimension, 1)), 1.0));
  c.domain.nodes = get_list<int>(tree, "domain.nodes", {});
  c.domain.level = get<int>(tree, "domain.level", 9);

  auto& op = c.flow.op;
  op.p = get<double>(tree, "operator.p", 4.0);
  op.radius = get<double>(tree, "operator.radius", 1.0);
  op.general_constraint = get_bool(tree, "operator.general_constraint", false);

  auto& f = c.flow;
  f.dt = get<double>(tree, "flow.dt", 1e-4);
  f.horizon = get<double>(tree, "flow.horizon", 1.0);
  try {
    f.integrator = parse_integrator(get_string(tree, "flow.integrator", "rk4"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  f.renormalize = get_bool(tree, "flow.renormalize", true);
  const std::string form = get_string(tree, "flow.form", "projected");
  if (form == "projected") f.form = SphereForm::projected;
  else if (form == "raw") f.form = SphereForm::raw;
  else throw ConfigError("unknown sphere form '" + form + "'");
  f.stationarity_tol = get<double>(tree, "flow.stationarity_tol", 0.0);
  f.snapshot_stride = get<long>(tree, "flow.snapshot_stride", 0);

  try {
    c.preset = parse_preset(get_string(tree, "initial.preset", "first_mode"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.seed = get<std::uint64_t>(tree, "initial.seed", 12345);

  const std::string method = get_string(tree, "ground_state.method", "both");
  if (method == "flow") c.ground_state.method = GroundStateChoice::flow;
  else if (method == "sub_super") c.ground_state.method = GroundStateChoice::sub_super;
  else if (method == "both") c.ground_state.method = GroundStateChoice::both;
  else throw ConfigError("unknown ground-state method '" + method + "'");
  c.ground_state.horizon = get<double>(tree, "ground_state.horizon", 20.0);
  c.ground_state.stationarity_tol = get<double>(tree, "ground_state.stationarity_tol", 1e-9);
  c.ground_state.residual_tol = get<double>(tree, "ground_state.residual_tol", 1e-6);
  c.ground_state.cross_tolerance = get<double>(tree, "ground_state.cross_tolerance", 1e-5);

  c.asymptotics.tau0 = get<double>(tree, "asymptotics.tau0", 0.05);
  c.asymptotics.checkpoints = get<int>(tree, "asymptotics.checkpoints", 6);
  c.asymptotics.tolerance = get<double>(tree, "asymptotics.tolerance", 1e-4);
  c.asymptotics.s_tolerance = get<double>(tree, "asymptotics.s_tolerance", 1e-5);

  auto& pr = c.properties;
  pr.cases = get<int>(tree, "properties.cases", 500);
  pr.seed = get<std::uint64_t>(tree, "properties.seed", c.seed);
  pr.tolerance = get<double>(tree, "properties.tolerance", 1e-9);
  pr.p_values = get_list<double>(tree, "properties.p_values", pr.p_values);
  pr.hemicontinuity_triples = get<int>(tree, "properties.hemicontinuity_triples", 20);
  pr.radius = get<double>(tree, "properties.radius", 4.0);
  pr.domain = c.domain;
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

void override_seed(ExperimentConfig& config, std::uint64_t seed) {
  config.seed = seed;
  config.properties.seed = seed;
}

void validate_config(const ExperimentConfig& c) {
  try {
    const BasisPtr basis = build_basis(c.domain);
    c.flow.validate(*basis);
    for (double p : c.properties.p_values) {
      if (!(p >= 2.0)) throw std::invalid_argument("exponent p must be >= 2");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.properties.p_values.empty()) throw ConfigError("properties.p_values is empty");
  if (c.properties.cases < 1) throw ConfigError("properties.cases must be >= 1");
  if (c.properties.hemicontinuity_triples < 1) {
    throw ConfigError("properties.hemicontinuity_triples must be >= 1");
  }
  if (!(c.properties.tolerance >= 0.0)) throw ConfigError("properties.tolerance must be >= 0");
  if (!(c.properties.radius > 0.0)) throw ConfigError("properties.radius must be positive");
  if (!(c.asymptotics.tau0 > 0.0)) throw ConfigError("asymptotics.tau0 must be positive");
  if (c.asymptotics.checkpoints < 1) throw ConfigError("asymptotics.checkpoints must be >= 1");
  if (!(c.ground_state.horizon > 0.0)) throw ConfigError("ground_state.horizon must be positive");
  if (!(c.ground_state.stationarity_tol > 0.0)) {
    throw ConfigError("ground_state.stationarity_tol must be positive");
  }
}

std::string canonical_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[format]\nversion=" << kConfigFormatVersion << '\n';
  os << "[domain]\ndimension=" << c.domain.dimension << "\nlengths=" << join(c.domain.lengths)
     << "\nnodes=" << join(c.domain.nodes) << "\nlevel=" << c.domain.level << '\n';
  os << "[operator]\np=" << format_real(c.flow.op.p) << "\nradius=" << format_real(c.flow.op.radius)
     << "\ngeneral_constraint=" << (c.flow.op.general_constraint ? "true" : "false") << '\n';
  os << "[flow]\ndt=" << format_real(c.flow.dt) << "\nhorizon=" << format_real(c.flow.horizon)
     << "\nintegrator=" << to_string(c.flow.integrator)
     << "\nrenormalize=" << (c.flow.renormalize ? "true" : "false")
     << "\nform=" << (c.flow.form == SphereForm::projected ? "projected" : "raw")
     << "\nstationarity_tol=" << format_real(c.flow.stationarity_tol)
     << "\nsnapshot_stride=" << c.flow.snapshot_stride << '\n';
  os << "[initial]\npreset=" << to_string(c.preset) << "\nseed=" << c.seed << '\n';
  os << "[ground_state]\nmethod=" << to_string(c.ground_state.method)
     << "\nhorizon=" << format_real(c.ground_state.horizon)
     << "\nstationarity_tol=" << format_real(c.ground_state.stationarity_tol)
     << "\nresidual_tol=" << format_real(c.ground_state.residual_tol)
     << "\ncross_tolerance=" << format_real(c.ground_state.cross_tolerance) << '\n';
  os << "[asymptotics]\ntau0=" << format_real(c.asymptotics.tau0)
     << "\ncheckpoints=" << c.asymptotics.checkpoints
     << "\ntolerance=" << format_real(c.asymptotics.tolerance)
     << "\ns_tolerance=" << format_real(c.asymptotics.s_tolerance) << '\n';
  os << "[properties]\ncases=" << c.properties.cases << "\nseed=" << c.properties.seed
     << "\ntolerance=" << format_real(c.properties.tolerance)
     << "\np_values=" << join(c.properties.p_values)
     << "\nhemicontinuity_triples=" << c.properties.hemicontinuity_triples
     << "\nradius=" << format_real(c.properties.radius) << '\n';
  return os.str();
}

std::string config_hash(const ExperimentConfig& config) {
  return hash_hex(fnv1a64(canonical_text(config)));
}

}  // namespace sgflow
