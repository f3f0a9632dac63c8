#include "sgflow/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgflow {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  return os;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("bad number '" + s + "'");
  }
  if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_real(s);
  if (v != static_cast<int>(v)) throw std::runtime_error("bad integer '" + s + "'");
  return static_cast<int>(v);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot(std::ostream& os, const Field& u, std::optional<double> t,
                    const std::string& config_hash) {
  const auto& b = u.basis();
  os << "# config_hash=" << config_hash << '\n';
  os << "# basis=sine d=" << b.dimension() << " L=";
  for (int a = 0; a < b.dimension(); ++a) {
    if (a) os << ',';
    os << format_real(b.domain().lengths[static_cast<std::size_t>(a)]);
  }
  os << " m=" << b.level();
  if (t) os << " t=" << format_real(*t);
  os << '\n';
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const Mode& md = b.mode(i);
    os << md.k[0];
    if (b.dimension() == 2) os << ',' << md.k[1];
    os << ',' << format_real(md.lambda) << ',' << format_real(u[i]) << '\n';
  }
}

void write_snapshot_file(const std::string& path, const Field& u, std::optional<double> t,
                         const std::string& config_hash) {
  auto os = open_out(path);
  write_snapshot(os, u, t, config_hash);
}

SnapshotData read_snapshot(std::istream& is) {
  std::string line;
  std::string hash;
  std::optional<double> t;
  DomainSpec spec;
  bool have_header = false;
  std::vector<std::pair<std::array<int, 2>, double>> entries;

  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string tok;
      while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "config_hash") hash = val;
        else if (key == "basis") {
          if (val != "sine") throw std::runtime_error("unsupported basis '" + val + "'");
          have_header = true;
        } else if (key == "d") spec.dimension = parse_int(val);
        else if (key == "m") spec.level = parse_int(val);
        else if (key == "t") t = parse_real(val);
        else if (key == "L") {
          spec.lengths.clear();
          for (const auto& s : split(val, ',')) spec.lengths.push_back(parse_real(s));
        }
      }
      continue;
    }
    if (!have_header) throw std::runtime_error("snapshot data before the basis header");
    const auto cols = split(line, ',');
    const std::size_t expect = static_cast<std::size_t>(spec.dimension) + 2;
    if (cols.size() != expect) throw std::runtime_error("snapshot row has wrong column count");
    std::array<int, 2> k{parse_int(cols[0]), spec.dimension == 2 ? parse_int(cols[1]) : 0};
    entries.push_back({k, parse_real(cols.back())});
  }
  if (!have_header) throw std::runtime_error("missing snapshot header");

  BasisPtr basis;
  try {
    basis = build_basis(spec);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("bad snapshot header: ") + e.what());
  }
  Field f(basis);
  for (const auto& [k, c] : entries) {
    const auto idx = basis->index_of(k);
    if (!idx) throw std::runtime_error("mode not admitted by the snapshot basis");
    f.coefficients()(*idx) = c;
  }
  return SnapshotData{std::move(f), t, hash};
}

SnapshotData read_snapshot_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return read_snapshot(is);
}

void write_ledger(std::ostream& os, const EnergyLedger& ledger, const std::string& config_hash) {
  os << "# config_hash=" << config_hash << '\n';
  os << "t,energy,S,gradM_sq,dissipation_integral,sphere_drift,min_value\n";
  for (const auto& r : ledger.rows) {
    os << format_real(r.t) << ',' << format_real(r.energy) << ',' << format_real(r.s_value) << ','
       << format_real(r.gradM_sq) << ',' << format_real(r.dissipation_integral) << ','
       << format_real(r.sphere_drift) << ',' << format_real(r.min_value) << '\n';
  }
}

void write_ledger_file(const std::string& path, const EnergyLedger& ledger,
                       const std::string& config_hash) {
  auto os = open_out(path);
  write_ledger(os, ledger, config_hash);
}

std::string ground_state_json(const GroundStateResult& r, const std::string& config_hash) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["lambda"] = r.lambda;
  j["energy"] = r.energy;
  j["residual"] = r.residual;
  j["method"] = to_string(r.method);
  j["iterations"] = r.iterations;
  return j.dump(2) + "\n";
}

std::string properties_json(const std::vector<SuiteReport>& suites, const std::string& config_hash) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  bool all = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["pass"] = s.pass();
    js["failures"] = s.failures();
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const auto& c : s.cases) {
      cases.push_back({{"id", c.id}, {"seed", c.seed}, {"margin", c.margin}, {"pass", c.pass},
                       {"note", c.note}});
    }
    js["cases"] = std::move(cases);
    arr.push_back(std::move(js));
    all = all && s.pass();
  }
  j["pass"] = all;
  j["suites"] = std::move(arr);
  return j.dump(2) + "\n";
}

void write_convergence_file(const std::string& path, const std::vector<ConvergenceRow>& rows,
                            const std::string& config_hash) {
  auto os = open_out(path);
  os << "# config_hash=" << config_hash << '\n';
  os << "n,tau,l2_error,h1_error,proxy_error,S,S_error\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_real(r.tau) << ',' << format_real(r.l2_error) << ','
       << format_real(r.h1_error) << ',' << format_real(r.proxy_error) << ','
       << format_real(r.s_value) << ',' << format_real(r.s_error) << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  auto os = open_out(path);
  os << text;
}

}  // namespace sgflow
