#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "oracle_bridge.hpp"
#include "pressure_poisson.hpp"
#include "test_support.hpp"

using namespace crawlfv;

namespace {

double max_diff(const oracle::State& a, const SimState& b) {
  return std::max(testkit::max_abs_diff(a.c_tilde, b.c_tilde.values),
                  testkit::max_abs_diff(a.mu_tilde, b.mu_tilde.values));
}

}  // namespace

TEST(RadialPoissonExact, Examples) {
  for (double r : {0.5, 0.7, 1.2, 1.5}) {
    EXPECT_EQ(oracle::radial_poisson_exact(r, 0.5, 1.5, 0.0, 0.0, 0.0), 0.0);
    EXPECT_NEAR(oracle::radial_poisson_exact(r, 0.5, 1.5, 0.0, 0.0, 1.0),
                std::log(r / 0.5) / std::log(3.0), 1e-15);
  }
  EXPECT_EQ(oracle::radial_poisson_exact(0.5, 0.5, 1.5, 1.0, 0.3, 1.0), 0.3);
  EXPECT_NEAR(oracle::radial_poisson_exact(1.5, 0.5, 1.5, 1.0, 0.3, 1.0), 1.0, 1e-15);
}

TEST(RadialPoissonExact, SolvesTheOde) {
  const double h = 1e-4;
  for (double r : {0.6, 0.9, 1.3}) {
    auto p = [](double x) { return oracle::radial_poisson_exact(x, 0.5, 1.5, 2.5, 0.1, 0.4); };
    const double lap = (p(r + h) - 2 * p(r) + p(r - h)) / (h * h) + (p(r + h) - p(r - h)) / (2 * h * r);
    EXPECT_NEAR(lap, 2.5, 1e-5);
  }
}

TEST(RadialPoissonExact, OutOfDomain) {
  try {
    oracle::radial_poisson_exact(0.4, 0.5, 1.5, 1.0, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
  }
  EXPECT_THROW(oracle::radial_poisson_exact(1.6, 0.5, 1.5, 1.0, 0.0, 1.0), Error);
}

TEST(InitialMassQuadrature, AnalyticValues) {
  EXPECT_NEAR(oracle::initial_mass_quadrature("polarised", 0.5, 1.5, 64), 3 * std::numbers::pi,
              1e-12);
  EXPECT_NEAR(oracle::initial_mass_quadrature("uniform", 0.5, 1.5, 64),
              std::numbers::pi * (1.5 * 1.5 - 0.5 * 0.5), 1e-12);
  EXPECT_THROW(oracle::initial_mass_quadrature("nope", 0.5, 1.5, 8), Error);
}

TEST(DenseReference, GridCap) {
  const oracle::Annulus big{0.5, 1.0, 10, 21};
  oracle::State s{std::vector<double>(210, 1.0), std::vector<double>(21, 0.0)};
  try {
    oracle::dense_reference_step(s, big, {1, 2, 2, 1, 0.3, 1}, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridTooLarge);
  }
}

TEST(DenseReference, PressureMatchesSparse) {
  testkit::Gen gen(81);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gen.grid(6, 10);
    PhysParams p;
    p.k_d = gen.uniform(0, 2);
    const auto mu = gen.vector(static_cast<std::size_t>(g.n_theta()), 0, 1);
    const auto sparse = solve_pressure(g, {mu}, p, BoundaryMode::Paper);
    const auto dense =
        oracle::dense_reference_pressure(mu, testkit::to_oracle(g), testkit::to_oracle(p));
    EXPECT_LE(testkit::max_abs_diff(dense, sparse.values), 1e-12);
  }
}

TEST(DenseReference, TransportMatchesSparse) {
  testkit::Gen gen(82);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gen.grid(6, 10);
    PhysParams p;
    p.k_on = gen.uniform(0, 3);
    const auto s = gen.state(g);
    const auto u = gen.faces(g, 2.0);
    const double dt = gen.uniform(1e-3, 0.05);
    const auto sparse = TransportStepper(g, p, dt).step(s, u);
    const auto dense = oracle::dense_reference_transport_step(
        testkit::to_oracle(s), testkit::to_oracle(u), testkit::to_oracle(g),
        testkit::to_oracle(p), dt);
    EXPECT_LE(max_diff(dense, sparse), 1e-12);
  }
}

TEST(DenseReference, OneCoupledStep) {
  const auto g = PolarGrid::build(0.5, 1.0, 3, 4);
  testkit::Gen gen(83);
  for (int trial = 0; trial < 10; ++trial) {
    PhysParams p;
    p.k_on = gen.uniform(0, 3);
    const auto ops = CoupledOperators::build(testkit::small_grid_config(g, p, 0.01));
    const auto s = gen.state(g, 0.0, 1.0);
    const auto sparse = coupled_step(s, ops, 1).state;
    const auto dense = oracle::dense_reference_step(testkit::to_oracle(s), testkit::to_oracle(g),
                                                    testkit::to_oracle(p), 0.01);
    EXPECT_LE(max_diff(dense, sparse), 1e-12);
  }
}

TEST(DenseReference, SharedFixedPoint) {
  const auto g = PolarGrid::build(0.5, 1.0, 3, 4);
  PhysParams p;
  p.k_d = 0.0;
  p.k_on = 3.0;
  const auto cfg = testkit::small_grid_config(g, p, 0.01);
  Config eq = cfg;
  eq.initial = "equilibrium";
  const auto ops = CoupledOperators::build(cfg);
  const auto s = initial_state(eq, g);
  const auto sparse = coupled_step(s, ops, 1).state;
  const auto dense = oracle::dense_reference_step(testkit::to_oracle(s), testkit::to_oracle(g),
                                                  testkit::to_oracle(p), 0.01);
  EXPECT_LE(max_diff(dense, s), 1e-12);
  EXPECT_LE(testkit::max_abs_diff(sparse.c_tilde.values, s.c_tilde.values), 1e-12);
}

TEST(DenseReference, TenComposedSteps) {
  const auto g = PolarGrid::build(0.5, 1.0, 3, 4);
  testkit::Gen gen(84);
  PhysParams p;
  p.k_on = 1.0;
  const auto ops = CoupledOperators::build(testkit::small_grid_config(g, p, 0.01));
  SimState s = gen.state(g, 0.0, 1.0);
  oracle::State d = testkit::to_oracle(s);
  for (long n = 1; n <= 10; ++n) {
    s = coupled_step(s, ops, n).state;
    d = oracle::dense_reference_step(d, testkit::to_oracle(g), testkit::to_oracle(p), 0.01);
  }
  EXPECT_LE(max_diff(d, s), 1e-10);
}
