#include "sgflow/spectral_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sgflow {

namespace {

constexpr double kPi = std::numbers::pi;

double axis_lambda(int k, double length) {
  const double f = k * kPi / length;
  return f * f;
}

double sine_factor(int k, double length, double x) {
  return std::sqrt(2.0 / length) * std::sin(k * kPi * x / length);
}

double cosine_factor(int k, double length, double x) {
  return std::sqrt(2.0 / length) * (k * kPi / length) * std::cos(k * kPi * x / length);
}

void validate(const DomainSpec& domain) {
  if (domain.dimension != 1 && domain.dimension != 2) {
    throw std::invalid_argument("dimension must be 1 or 2, got " +
                                std::to_string(domain.dimension));
  }
  if (static_cast<int>(domain.lengths.size()) != domain.dimension) {
    throw std::invalid_argument("expected one edge length per axis");
  }
  for (double l : domain.lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument("edge lengths must be positive");
    }
  }
  if (!domain.nodes.empty() && static_cast<int>(domain.nodes.size()) != domain.dimension) {
    throw std::invalid_argument("expected one node count per axis");
  }
  if (domain.level < 0 || domain.level > 30) {
    throw std::invalid_argument("dyadic level out of range");
  }
}

}  // namespace

BasisPtr build_basis(const DomainSpec& domain) {
  validate(domain);
  const int d = domain.dimension;
  const double cutoff = std::ldexp(1.0, domain.level + 1);

  std::vector<Mode> modes;
  if (d == 1) {
    for (int k = 1; axis_lambda(k, domain.lengths[0]) < cutoff; ++k) {
      modes.push_back({{k, 0}, axis_lambda(k, domain.lengths[0])});
    }
  } else {
    const double base1 = axis_lambda(1, domain.lengths[1]);
    for (int k0 = 1; axis_lambda(k0, domain.lengths[0]) + base1 < cutoff; ++k0) {
      const double l0 = axis_lambda(k0, domain.lengths[0]);
      for (int k1 = 1; l0 + axis_lambda(k1, domain.lengths[1]) < cutoff; ++k1) {
        modes.push_back({{k0, k1}, l0 + axis_lambda(k1, domain.lengths[1])});
      }
    }
  }
  if (modes.empty()) {
    throw std::invalid_argument("empty basis: no eigenvalue below 2^(m+1) = " +
                                std::to_string(cutoff));
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.k < b.k;
  });

  std::array<int, 2> kmax{0, 0};
  for (const auto& md : modes) {
    for (int i = 0; i < d; ++i) kmax[i] = std::max(kmax[i], md.k[i]);
  }

  auto basis = std::shared_ptr<SpectralBasis>(new SpectralBasis());
  basis->domain_ = domain;
  basis->domain_.nodes.assign(static_cast<std::size_t>(d), 0);
  basis->nodes_ = {1, 1};
  for (int i = 0; i < d; ++i) {
    int n = domain.nodes.empty() ? 0 : domain.nodes[i];
    if (n == 0) n = std::max(16, 3 * kmax[i]);
    if (n < 16) {
      throw std::invalid_argument("at least 16 quadrature nodes per axis required");
    }
    if (3 * kmax[i] > n) {
      throw std::invalid_argument("grid too coarse: mode number " + std::to_string(kmax[i]) +
                                  " needs at least " + std::to_string(3 * kmax[i]) +
                                  " nodes on axis " + std::to_string(i));
    }
    basis->nodes_[i] = n;
    basis->domain_.nodes[i] = n;
  }

  basis->modes_ = std::move(modes);
  const auto n_modes = static_cast<Eigen::Index>(basis->modes_.size());
  basis->eigenvalues_.resize(n_modes);
  for (Eigen::Index i = 0; i < n_modes; ++i) basis->eigenvalues_(i) = basis->mode(i).lambda;

  double measure = 1.0;
  double weight = 1.0;
  for (int i = 0; i < d; ++i) {
    measure *= domain.lengths[i];
    weight *= domain.lengths[i] / basis->nodes_[i];
  }
  basis->measure_ = measure;
  basis->weight_ = weight;

  const Eigen::Index n_grid = static_cast<Eigen::Index>(basis->nodes_[0]) * basis->nodes_[1];
  basis->synthesis_.resize(n_grid, n_modes);
  for (int a = 0; a < d; ++a) basis->gradient_synthesis_[a].resize(n_grid, n_modes);

  for (Eigen::Index g = 0; g < n_grid; ++g) {
    const auto x = basis->node(g);
    for (Eigen::Index j = 0; j < n_modes; ++j) {
      const auto& k = basis->mode(j).k;
      if (d == 1) {
        basis->synthesis_(g, j) = sine_factor(k[0], domain.lengths[0], x[0]);
        basis->gradient_synthesis_[0](g, j) = cosine_factor(k[0], domain.lengths[0], x[0]);
      } else {
        const double s0 = sine_factor(k[0], domain.lengths[0], x[0]);
        const double s1 = sine_factor(k[1], domain.lengths[1], x[1]);
        basis->synthesis_(g, j) = s0 * s1;
        basis->gradient_synthesis_[0](g, j) = cosine_factor(k[0], domain.lengths[0], x[0]) * s1;
        basis->gradient_synthesis_[1](g, j) = s0 * cosine_factor(k[1], domain.lengths[1], x[1]);
      }
    }
  }
  basis->analysis_ = weight * basis->synthesis_.transpose();
  return basis;
}

std::optional<Eigen::Index> SpectralBasis::index_of(const std::array<int, 2>& k) const {
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (mode(i).k == k) return i;
  }
  return std::nullopt;
}

std::array<double, 2> SpectralBasis::node(Eigen::Index g) const {
  const auto n1 = static_cast<Eigen::Index>(nodes_[1]);
  const Eigen::Index i0 = g / n1;
  const Eigen::Index i1 = g % n1;
  std::array<double, 2> x{0.0, 0.0};
  x[0] = (static_cast<double>(i0) + 0.5) * domain_.lengths[0] / nodes_[0];
  if (domain_.dimension == 2) {
    x[1] = (static_cast<double>(i1) + 0.5) * domain_.lengths[1] / nodes_[1];
  }
  return x;
}

double SpectralBasis::evaluate_mode(Eigen::Index i, const std::array<double, 2>& x) const {
  const auto& k = mode(i).k;
  double v = sine_factor(k[0], domain_.lengths[0], x[0]);
  if (domain_.dimension == 2) v *= sine_factor(k[1], domain_.lengths[1], x[1]);
  return v;
}

bool SpectralBasis::same_domain(const SpectralBasis& other) const {
  if (dimension() != other.dimension() || level() != other.level()) return false;
  if (domain_.lengths != other.domain_.lengths) return false;
  if (size() != other.size()) return false;
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (mode(i).k != other.mode(i).k) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Field::Field(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw std::invalid_argument("null basis");
  coefficients_ = Eigen::VectorXd::Zero(basis_->size());
}

Field::Field(BasisPtr basis, Eigen::VectorXd coefficients)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)) {
  if (!basis_) throw std::invalid_argument("null basis");
  if (coefficients_.size() != basis_->size()) {
    throw std::invalid_argument("coefficient count does not match basis size");
  }
}

Field Field::mode(BasisPtr basis, Eigen::Index i) {
  Field f(std::move(basis));
  if (i < 0 || i >= f.coefficients_.size()) throw std::out_of_range("mode index");
  f.coefficients_(i) = 1.0;
  return f;
}

Eigen::VectorXd Field::samples() const { return basis_->synthesis() * coefficients_; }

Field& Field::operator+=(const Field& other) {
  if (other.basis_ != basis_ && !basis_->same_domain(*other.basis_)) {
    throw std::invalid_argument("fields live in different bases");
  }
  coefficients_ += other.coefficients_;
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (other.basis_ != basis_ && !basis_->same_domain(*other.basis_)) {
    throw std::invalid_argument("fields live in different bases");
  }
  coefficients_ -= other.coefficients_;
  return *this;
}

Field& Field::operator*=(double s) {
  coefficients_ *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, double s) { return a *= s; }
Field operator-(Field a) { return a *= -1.0; }

Eigen::VectorXd synthesize(const Field& field) { return field.samples(); }

Eigen::VectorXd analyze(const Eigen::VectorXd& samples, const SpectralBasis& basis) {
  if (samples.size() != basis.grid_size()) {
    throw std::invalid_argument("sample count " + std::to_string(samples.size()) +
                                " does not match grid size " +
                                std::to_string(basis.grid_size()));
  }
  return basis.analysis() * samples;
}

Field analyze_field(const Eigen::VectorXd& samples, BasisPtr basis) {
  Eigen::VectorXd c = analyze(samples, *basis);
  return Field(std::move(basis), std::move(c));
}

double evaluate(const Field& field, const std::array<double, 2>& x) {
  double v = 0.0;
  const auto& basis = field.basis();
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    if (field[i] != 0.0) v += field[i] * basis.evaluate_mode(i, x);
  }
  return v;
}

Field transfer(const Field& field, BasisPtr target) {
  const auto& src = field.basis();
  if (src.dimension() != target->dimension() ||
      src.domain().lengths != target->domain().lengths) {
    throw std::invalid_argument("cannot transfer between different domains");
  }
  Field out(target);
  for (Eigen::Index i = 0; i < src.size(); ++i) {
    if (auto j = target->index_of(src.mode(i).k)) out.coefficients()(*j) = field[i];
  }
  return out;
}

double inner(const Field& u, const Field& v) {
  if (u.basis_ptr() != v.basis_ptr() && !u.basis().same_domain(v.basis())) {
    throw std::invalid_argument("fields live in different bases");
  }
  return u.coefficients().dot(v.coefficients());
}

double l2_norm(const Field& u) { return u.coefficients().norm(); }

double h1_seminorm_sq(const Field& u) {
  return (u.basis().eigenvalues().array() * u.coefficients().array().square()).sum();
}

double integrate_abs_pow(const Eigen::VectorXd& samples, double weight, double q) {
  double s = 0.0;
  if (q == 2.0) {
    s = samples.squaredNorm();
  } else {
    for (double v : samples) s += std::pow(std::abs(v), q);
  }
  return weight * s;
}

double grid_lq_norm(const Eigen::VectorXd& samples, double weight, double q) {
  return std::pow(integrate_abs_pow(samples, weight, q), 1.0 / q);
}

NormRecord norms(const Field& u, double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("exponent p must be >= 2");
  const Eigen::VectorXd s = u.samples();
  const double w = u.basis().weight();
  NormRecord r;
  r.l2 = l2_norm(u);
  r.h1_seminorm = std::sqrt(h1_seminorm_sq(u));
  r.lp = grid_lq_norm(s, w, p);
  r.l2p_minus_2 = grid_lq_norm(s, w, 2.0 * p - 2.0);
  return r;
}

}  // namespace sgflow
