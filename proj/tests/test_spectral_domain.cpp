#include "sgflow/property_lab.hpp"
#include "sgflow/spectral_domain.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgflow;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("level determines the admitted modes") {
  auto b3 = build_basis({1, {1.0}, {}, 3});
  CHECK(b3->size() == 1);
  CHECK(b3->mode(0).k[0] == 1);

  auto b9 = build_basis({1, {1.0}, {}, 9});
  REQUIRE(b9->size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(b9->mode(i).k[0] == i + 1);
    CHECK(b9->mode(i).lambda == doctest::Approx((i + 1) * (i + 1) * kPi * kPi).epsilon(1e-15));
  }
  CHECK(b9->nodes_per_axis(0) == 30);
  CHECK(build_basis({1, {1.0}, {}, 4})->nodes_per_axis(0) == 16);
}

TEST_CASE("bad domains are rejected") {
  CHECK_THROWS_WITH_AS(build_basis({1, {1.0}, {}, 1}), doctest::Contains("empty basis"),
                       std::invalid_argument);
  CHECK_THROWS_AS(build_basis({3, {1.0, 1.0, 1.0}, {}, 9}), std::invalid_argument);
  CHECK_THROWS_AS(build_basis({1, {-1.0}, {}, 9}), std::invalid_argument);
  CHECK_THROWS_AS(build_basis({1, {1.0}, {20}, 9}), std::invalid_argument);
}

TEST_CASE("two-dimensional ordering: eigenvalue then multi-index") {
  auto b = build_basis({2, {1.0, 1.0}, {}, 8});
  for (Eigen::Index i = 1; i < b->size(); ++i) {
    const Mode& a = b->mode(i - 1);
    const Mode& c = b->mode(i);
    CHECK((a.lambda < c.lambda || (a.lambda == c.lambda && a.k < c.k)));
  }
  CHECK(b->mode(0).k == std::array<int, 2>{1, 1});
  CHECK(b->mode(1).k == std::array<int, 2>{1, 2});
  CHECK(b->mode(2).k == std::array<int, 2>{2, 1});
  CHECK(b->lambda_max() < 512.0);
}

TEST_CASE("discrete orthonormality") {
  for (const DomainSpec& spec : {DomainSpec{1, {1.0}, {}, 10}, DomainSpec{1, {2.5}, {}, 8},
                                 DomainSpec{2, {1.0, 2.0}, {}, 7}}) {
    auto b = build_basis(spec);
    const Eigen::MatrixXd gram = b->analysis() * b->synthesis();
    const double err = (gram - Eigen::MatrixXd::Identity(b->size(), b->size())).cwiseAbs().maxCoeff();
    CHECK(err < 1e-10);
  }
}

TEST_CASE("grid samples match the closed-form modes") {
  auto b = build_basis({2, {1.0, 3.0}, {}, 6});
  for (Eigen::Index i = 0; i < b->size(); ++i) {
    const auto& k = b->mode(i).k;
    for (Eigen::Index g = 0; g < b->grid_size(); g += 7) {
      const auto x = b->node(g);
      const double expect = std::sqrt(2.0) * std::sin(k[0] * kPi * x[0]) * std::sqrt(2.0 / 3.0) *
                            std::sin(k[1] * kPi * x[1] / 3.0);
      CHECK(b->synthesis()(g, i) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("norms of sqrt(2) sin(pi x)") {
  auto b = build_basis({1, {1.0}, {}, 9});
  const Field u = Field::mode(b, 0);
  const NormRecord n2 = norms(u, 2.0);
  CHECK(n2.l2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(n2.h1_seminorm * n2.h1_seminorm == doctest::Approx(kPi * kPi).epsilon(1e-14));
  const NormRecord n4 = norms(u, 4.0);
  CHECK(std::pow(n4.lp, 4) == doctest::Approx(1.5).epsilon(1e-13));

  const NormRecord z = norms(Field(b), 3.0);
  CHECK(z.l2 == 0.0);
  CHECK(z.h1_seminorm == 0.0);
  CHECK(z.lp == 0.0);
  CHECK(z.l2p_minus_2 == 0.0);
  CHECK_THROWS_AS(norms(u, 1.5), std::invalid_argument);
}

TEST_CASE("Parseval against quadrature for random fields") {
  auto b = build_basis({1, {1.0}, {}, 9});
  for (int s = 0; s < 100; ++s) {
    FieldSampler sampler(b, 100 + s);
    const Field u = sampler.sample();
    const Eigen::VectorXd x = u.samples();
    const double quad_l2 = b->weight() * x.squaredNorm();
    CHECK(quad_l2 == doctest::Approx(u.coefficients().squaredNorm()).epsilon(1e-12));
    const Eigen::VectorXd du = b->gradient_synthesis(0) * u.coefficients();
    CHECK(b->weight() * du.squaredNorm() == doctest::Approx(h1_seminorm_sq(u)).epsilon(1e-12));
  }
}

TEST_CASE("dropping a coefficient never increases l2 or h1") {
  auto b = build_basis({1, {1.0}, {}, 9});
  FieldSampler sampler(b, 5);
  for (int s = 0; s < 50; ++s) {
    const Field u = sampler.sample();
    Field v = u;
    v.coefficients()(s % b->size()) = 0.0;
    CHECK(l2_norm(v) <= l2_norm(u));
    CHECK(h1_seminorm_sq(v) <= h1_seminorm_sq(u));
  }
}

TEST_CASE("analysis rejects mismatched samples") {
  auto b = build_basis({1, {1.0}, {}, 9});
  CHECK_THROWS_AS(analyze(Eigen::VectorXd::Zero(b->grid_size() + 1), *b), std::invalid_argument);
  const Field u = FieldSampler(b, 3).sample();
  CHECK((analyze(u.samples(), *b) - u.coefficients()).norm() < 1e-13);
}

TEST_CASE("point evaluation and transfer") {
  auto b = build_basis({1, {2.0}, {}, 9});
  const Field u = Field::mode(b, 2);
  CHECK(evaluate(u, {0.3, 0.0}) == doctest::Approx(std::sin(3 * kPi * 0.3 / 2.0)).epsilon(1e-14));

  auto coarse = build_basis({1, {2.0}, {}, 5});
  const Field v = FieldSampler(b, 11).sample();
  const Field t = transfer(v, coarse);
  REQUIRE(t.coefficients().size() == coarse->size());
  for (Eigen::Index i = 0; i < coarse->size(); ++i) CHECK(t[i] == v[i]);
  const Field back = transfer(t, b);
  for (Eigen::Index i = coarse->size(); i < b->size(); ++i) CHECK(back[i] == 0.0);
}
