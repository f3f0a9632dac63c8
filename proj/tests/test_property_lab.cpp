#include "sgflow/cutoff.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/operators.hpp"
#include "sgflow/property_lab.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgflow;

namespace {

const double kPi = std::acos(-1.0);

BasisPtr unit_interval(int m = 9) { return build_basis({1, {1.0}, {}, m}); }

}  // namespace

TEST_CASE("check primitives report signed margins") {
  CHECK(check_leq(1.0, 2.0, 0.0).pass);
  CHECK(check_leq(1.0, 2.0, 0.0).margin == 1.0);
  CHECK_FALSE(check_leq(2.0, 1.0, 0.5).pass);
  CHECK(check_leq(2.0, 1.0, 0.5).margin == -0.5);
  CHECK(check_geq(1.0, 1.0 + 1e-10, 1e-9).pass);
  CHECK(check_equal(100.0, 100.0 + 1e-8, 1e-9).pass);
  CHECK_FALSE(check_equal(1.0, 1.0 + 1e-8, 1e-9).pass);
}

TEST_CASE("monotonicity of N on two grid values") {
  // u = 2, v = -1, p = 4: lhs = (8 + 1) * 3 = 27, half = (4 + 1)/2 * 9 = 22.5,
  // lp = 3^4 / 4 = 20.25.
  Eigen::VectorXd u(1), v(1);
  u << 2.0;
  v << -1.0;
  const MonotoneReport r = check_monotone_nonlinearity(u, v, 1.0, 4.0, 0.0);
  CHECK(r.half_weighted.lhs == 27.0);
  CHECK(r.half_weighted.rhs == 22.5);
  CHECK(r.lp_lower.rhs == 20.25);
  CHECK(r.pass());
  CHECK_THROWS_AS(check_monotone_nonlinearity(u, v, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("local monotonicity constant") {
  CHECK(local_monotone_constant(4.0, 1.0) == 256.0);
  CHECK(local_monotone_constant(2.0, 16.0) == doctest::Approx(16.0));
}

TEST_CASE("radius constants on the unit interval") {
  auto b = unit_interval();
  const LipschitzConstants c = lipschitz_constants(4.0, 2.0, *b);
  CHECK(c.f1 == doctest::Approx(3.0 * 16.0));
  CHECK(c.f2 == doctest::Approx(12.0 / kPi));
  CHECK(c.f3 == doctest::Approx(16.0 + 4.0 * 64.0 * 2.0 / kPi));
}

TEST_CASE("printed F1 bound is only asserted for large norms") {
  auto b = unit_interval();
  FieldSampler s(b, 21);
  const Field u = s.sample_unit() * 0.05;
  const Field v = s.sample_unit() * 0.05;
  const LipschitzReport r = check_lipschitz_chain(u, v, 4.0, 1.0, 0.0);
  CHECK_FALSE(r.f1_printed_applies);
  CHECK(r.f1_holder.pass);
  CHECK(r.pass());
  // Holder gives (||u||+||v||)^{p-2}; the printed exponent 2p-2 undershoots it
  // once the sum is below one.
  CHECK(r.f1_printed.rhs < r.f1_holder.rhs);
}

TEST_CASE("sampled positive fields are positive") {
  for (const DomainSpec& spec : {DomainSpec{1, {1.0}, {}, 9}, DomainSpec{2, {1.0, 2.0}, {}, 7}}) {
    auto b = build_basis(spec);
    DomainSpec fine_spec = spec;
    fine_spec.nodes.assign(static_cast<std::size_t>(spec.dimension), 200);
    auto fine = build_basis(fine_spec);
    for (int seed = 0; seed < 100; ++seed) {
      const Field u = FieldSampler(b, static_cast<std::uint64_t>(seed)).sample_positive();
      CHECK(l2_norm(u) == doctest::Approx(1.0));
      CHECK(transfer(u, fine).samples().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("capped samples respect the radius") {
  auto b = unit_interval();
  FieldSampler s(b, 4);
  for (int i = 0; i < 50; ++i) {
    const double r = proxy_norm(s.sample_capped(3.0, 2.0), 3.0);
    CHECK(r <= 2.0 * (1 + 1e-12));
    CHECK(r >= 0.2 * (1 - 1e-12));
  }
}

TEST_CASE("hemicontinuity along the first mode") {
  // psi = zeta = eta = w_1, p = 2: the pairing is (lambda_1 + 1)(1 + s)(2 s + s^2).
  auto b = unit_interval();
  const Field w1 = Field::mode(b, 0);
  const HemicontinuityTable t = hemicontinuity_probe(w1, w1, w1, 2.0);
  REQUIRE(t.values.size() == 13);
  for (std::size_t j = 0; j < t.values.size(); ++j) {
    const double s = std::ldexp(1.0, -static_cast<int>(j));
    const double expect = (kPi * kPi + 1.0) * (1.0 + s) * (2.0 * s + s * s);
    CHECK(t.values[j] == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(t.strictly_decreasing);
  CHECK(t.terminal_ratio == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("projection algebra on random fields") {
  auto b = unit_interval(10);
  FieldSampler s(b, 31);
  for (int i = 0; i < 20; ++i) {
    const Field u = s.sample();
    const Field v = s.sample();
    for (int m : {4, 6, 8}) {
      const ProjectionReport r = check_projection_algebra(u, v, m);
      CHECK_MESSAGE(r.max_error() < 1e-12, "m=" << m);
    }
  }
  CHECK_THROWS_AS(check_projection_algebra(s.sample(), s.sample(), 10), std::invalid_argument);
}

TEST_CASE("S_m P_m differs from P_m when an eigenvalue sits in the transition band") {
  auto b = unit_interval(9);
  FieldSampler s(b, 2);
  const Field u = s.sample();
  // lambda_1 = 9.87 is in [8, 16).
  CHECK(check_projection_algebra(u, u, 3).sp_identity_gap > 1e-3);
  // No eigenvalue k^2 pi^2 lies in [16, 32).
  CHECK(check_projection_algebra(u, u, 4).sp_identity_gap == 0.0);
}

TEST_CASE("identities on individual fields") {
  for (const DomainSpec& spec : {DomainSpec{1, {1.0}, {60}, 9}, DomainSpec{2, {1.0, 1.5}, {40, 40}, 7}}) {
    auto b = build_basis(spec);
    FieldSampler s(b, 77);
    for (int i = 0; i < 10; ++i) {
      const Field u = s.sample_unit();
      for (double p : {2.0, 4.0, 6.0}) {
        CHECK(check_lap_nn_identity(u, p).pass);
        CHECK(check_grad_energy_norm(u, p).pass);
      }
      for (double p : {2.0, 2.5, 3.0, 4.0, 7.0}) {
        CHECK(check_gradM_relation(u, p).pass);
        CHECK(check_tangency(u, p).pass);
      }
    }
  }
}

TEST_CASE("finite-difference gradient is second order") {
  auto b = unit_interval();
  FieldSampler s(b, 12);
  const Field u = s.sample_unit();
  const Field w = s.sample_unit();
  for (double p : {2.0, 3.0, 4.0}) {
    const double e3 = gradient_consistency_error(u, w, p, 1e-3);
    const double e4 = gradient_consistency_error(u, w, p, 1e-4);
    CHECK(e4 < 1e-6);
    if (p > 2.0) CHECK(e3 / e4 > 50.0);
  }
}

TEST_CASE("positivity check") {
  auto b = unit_interval();
  // |w_2| expanded in the basis.
  Eigen::VectorXd x = Field::mode(b, 1).samples().cwiseAbs();
  Field u0 = analyze_field(x, b);
  u0 *= 1.0 / l2_norm(u0);
  FlowConfig c;
  c.op.p = 4.0;
  c.horizon = 0.2;
  c.stationarity_tol = 0.0;
  c.snapshot_stride = 10;
  const FlowRun run = run_flow(u0, c);
  const PositivityReport r = positivity_check(run.trajectory);
  CHECK(r.applicable);
  CHECK(r.pass);

  const FlowRun mixed = run_flow(Field::mode(b, 0) - Field::mode(b, 1), c);
  CHECK_FALSE(positivity_check(mixed.trajectory).applicable);
}

TEST_CASE("suite bookkeeping") {
  const SuiteReport r = run_suite("demo", 5, 100, [](int i, std::uint64_t seed) {
    return CaseRecord{0, 0, double(i) - 1.0, i != 0, std::to_string(seed)};
  });
  REQUIRE(r.cases.size() == 5);
  CHECK(r.cases[3].id == 3);
  CHECK(r.cases[3].seed == 103);
  CHECK(r.failures() == 1);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(run_suite("empty", 0, 1, [](int, std::uint64_t) { return CaseRecord{}; }).pass());
}

TEST_CASE("zero tolerance makes the standard suites fail") {
  PropertySuiteConfig c;
  c.cases = 40;
  c.hemicontinuity_triples = 2;
  c.tolerance = 0.0;
  const auto suites = run_standard_suites(c);
  int failing = 0;
  for (const auto& s : suites) failing += s.pass() ? 0 : 1;
  CHECK(failing > 0);
}

TEST_CASE("standard suites pass in two dimensions") {
  PropertySuiteConfig c;
  c.domain = {2, {1.0, 1.0}, {}, 7};
  c.cases = 60;
  c.hemicontinuity_triples = 0;
  c.p_values = {2.0, 3.0, 4.0};
  for (const auto& s : run_standard_suites(c)) {
    if (s.name == "hemicontinuity") continue;
    CHECK_MESSAGE(s.pass(), s.name << ": " << s.failures() << " failures");
  }
}
