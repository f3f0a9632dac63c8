#pragma once

// Dirichlet sine eigenbasis on intervals and rectangles.
//
// Modes are w_k(x) = prod_i sqrt(2/L_i) sin(k_i pi x_i / L_i) with eigenvalue
// lambda_k = sum_i (k_i pi / L_i)^2. A basis at dyadic level m keeps every
// mode with lambda_k < 2^(m+1).
//
// Grid samples live on a tensor composite-midpoint grid with N_i nodes per
// axis, x_{i,j} = (j + 1/2) L_i / N_i. The rule integrates cos(j pi x / L)
// exactly for 0 < j < 2 N, so with N_i >= 3 K_i (K_i the largest admitted
// mode number) products of up to four band-limited factors are integrated
// without aliasing. This quadrature rule is fixed for the release.

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <optional>
#include <vector>

namespace sgflow {

struct DomainSpec {
  int dimension = 1;
  std::vector<double> lengths{1.0};
  // Empty (or zero entries) selects max(16, 3 * largest admitted mode number).
  std::vector<int> nodes;
  int level = 9;
};

struct Mode {
  std::array<int, 2> k{0, 0};  // unused axes hold 0
  double lambda = 0.0;
};

class SpectralBasis {
 public:
  const DomainSpec& domain() const { return domain_; }
  int dimension() const { return domain_.dimension; }
  int level() const { return domain_.level; }

  Eigen::Index size() const { return static_cast<Eigen::Index>(modes_.size()); }
  const std::vector<Mode>& modes() const { return modes_; }
  const Mode& mode(Eigen::Index i) const { return modes_[static_cast<std::size_t>(i)]; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double lambda_min() const { return eigenvalues_(0); }
  double lambda_max() const { return eigenvalues_(size() - 1); }

  /// Index of the mode with multi-index k, if admitted.
  std::optional<Eigen::Index> index_of(const std::array<int, 2>& k) const;

  int nodes_per_axis(int axis) const { return nodes_[static_cast<std::size_t>(axis)]; }
  Eigen::Index grid_size() const { return synthesis_.rows(); }
  /// Coordinates of grid node g (row-major, axis 0 slowest).
  std::array<double, 2> node(Eigen::Index g) const;
  /// Quadrature weight, identical for every node (cell volume).
  double weight() const { return weight_; }
  /// Lebesgue measure of the domain.
  double measure() const { return measure_; }

  /// grid_size x size: samples = synthesis * coefficients.
  const Eigen::MatrixXd& synthesis() const { return synthesis_; }
  /// size x grid_size: coefficients = analysis * samples (= weight * synthesis^T).
  const Eigen::MatrixXd& analysis() const { return analysis_; }
  /// grid_size x size: samples of d w_k / d x_axis.
  const Eigen::MatrixXd& gradient_synthesis(int axis) const {
    return gradient_synthesis_[static_cast<std::size_t>(axis)];
  }

  double evaluate_mode(Eigen::Index i, const std::array<double, 2>& x) const;

  /// Same geometry and mode set (grids may differ).
  bool same_domain(const SpectralBasis& other) const;

 private:
  friend std::shared_ptr<const SpectralBasis> build_basis(const DomainSpec&);
  SpectralBasis() = default;

  DomainSpec domain_;
  std::vector<Mode> modes_;
  Eigen::VectorXd eigenvalues_;
  std::array<int, 2> nodes_{1, 1};
  double weight_ = 0.0;
  double measure_ = 0.0;
  Eigen::MatrixXd synthesis_;
  Eigen::MatrixXd analysis_;
  std::array<Eigen::MatrixXd, 2> gradient_synthesis_;
};

using BasisPtr = std::shared_ptr<const SpectralBasis>;

/// All modes with lambda < 2^(m+1), sorted by eigenvalue, ties broken
/// lexicographically by multi-index. Throws std::invalid_argument on a bad
/// dimension, non-positive length, an undersized grid, or an empty basis.
BasisPtr build_basis(const DomainSpec& domain);

/// A function in span{w_k}, stored as its eigen-coefficients.
class Field {
 public:
  explicit Field(BasisPtr basis);
  Field(BasisPtr basis, Eigen::VectorXd coefficients);

  static Field zero(BasisPtr basis) { return Field(std::move(basis)); }
  /// The normalized eigenfunction w_i (ordinal index into the basis).
  static Field mode(BasisPtr basis, Eigen::Index i);

  const SpectralBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  Eigen::VectorXd& coefficients() { return coefficients_; }
  double operator[](Eigen::Index i) const { return coefficients_(i); }

  /// Grid samples (computed per call).
  Eigen::VectorXd samples() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

 private:
  BasisPtr basis_;
  Eigen::VectorXd coefficients_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator*(Field a, double s);
Field operator-(Field a);

Eigen::VectorXd synthesize(const Field& field);
/// Quadrature projection of grid samples onto the basis. Throws
/// std::invalid_argument when samples.size() != basis.grid_size().
Eigen::VectorXd analyze(const Eigen::VectorXd& samples, const SpectralBasis& basis);
Field analyze_field(const Eigen::VectorXd& samples, BasisPtr basis);

/// Point evaluation of the sine series.
double evaluate(const Field& field, const std::array<double, 2>& x);

/// Coefficients of `field` transferred to `target` by multi-index; modes not
/// admitted by `target` are dropped, missing ones are zero.
Field transfer(const Field& field, BasisPtr target);

double inner(const Field& u, const Field& v);
double l2_norm(const Field& u);
/// ||grad u||^2 by Parseval.
double h1_seminorm_sq(const Field& u);
/// Quadrature value of integral |f|^q over the grid.
double integrate_abs_pow(const Eigen::VectorXd& samples, double weight, double q);
/// Weighted L^q norm of grid samples.
double grid_lq_norm(const Eigen::VectorXd& samples, double weight, double q);

struct NormRecord {
  double l2 = 0.0;
  double h1_seminorm = 0.0;
  double lp = 0.0;
  double l2p_minus_2 = 0.0;
};

/// l2 and h1 from coefficients, lp and l(2p-2) from grid quadrature.
/// Throws std::invalid_argument for p < 2.
NormRecord norms(const Field& u, double p);

}  // namespace sgflow
