#include "sgflow/presets.hpp"

#include "sgflow/property_lab.hpp"

#include <cmath>
#include <stdexcept>

namespace sgflow {

namespace {

double bump_1d(double x, double length) {
  const double c = 0.4 * length;
  const double r = (x - c) / (0.35 * length);
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r * r));
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"first_mode", "mixed", "bump", "positive_random"};
  return names;
}

Preset parse_preset(const std::string& name) {
  if (name == "first_mode") return Preset::first_mode;
  if (name == "mixed") return Preset::mixed;
  if (name == "bump") return Preset::bump;
  if (name == "positive_random") return Preset::positive_random;
  throw std::invalid_argument("unknown initial preset '" + name + "'");
}

std::string to_string(Preset preset) {
  return preset_names()[static_cast<std::size_t>(preset)];
}

Field make_initial(Preset preset, BasisPtr basis, std::uint64_t seed) {
  switch (preset) {
    case Preset::first_mode:
      return Field::mode(basis, 0);
    case Preset::mixed: {
      if (basis->size() < 2) throw std::invalid_argument("mixed preset needs two modes");
      return (Field::mode(basis, 0) + Field::mode(basis, 1)) * (1.0 / std::sqrt(2.0));
    }
    case Preset::bump: {
      Eigen::VectorXd s(basis->grid_size());
      const auto& len = basis->domain().lengths;
      for (Eigen::Index g = 0; g < s.size(); ++g) {
        const auto x = basis->node(g);
        double v = bump_1d(x[0], len[0]);
        if (basis->dimension() == 2) v *= bump_1d(x[1], len[1]);
        s(g) = v;
      }
      Field f = analyze_field(s, basis);
      return f * (1.0 / l2_norm(f));
    }
    case Preset::positive_random: {
      FieldSampler sampler(basis, seed);
      return sampler.sample_positive();
    }
  }
  throw std::invalid_argument("unknown preset");
}

bool is_positive_on_grid(const Field& u) { return u.samples().minCoeff() > 0.0; }

}  // namespace sgflow
