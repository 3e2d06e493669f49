#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "pressure_poisson.hpp"
#include "test_support.hpp"
#include "verification_oracles.hpp"

using namespace crawlfv;

namespace {

std::vector<double> radii(const PolarGrid& g) {
  std::vector<double> r(g.n_cells());
  for (int j = 0; j < g.n_r(); ++j)
    for (int k = 0; k < g.n_theta(); ++k) r[g.index(j, k)] = g.r_center(j);
  return r;
}

BoundaryField uniform_mu(const PolarGrid& g, double value) {
  return {std::vector<double>(static_cast<std::size_t>(g.n_theta()), value)};
}

}  // namespace

TEST(PressureOperator, FirstRowDiagonal) {
  const auto g = PolarGrid::build(0.5, 1.5, 2, 4);
  const auto L = assemble_pressure_operator(g, BoundaryMode::Paper);
  const double r1 = g.r_center(0), dr2 = g.dr() * g.dr(), dth2 = g.dtheta() * g.dtheta();
  const double expected = (g.r_face(0) + g.r_face(1)) / (r1 * dr2) + 2.0 / (r1 * r1 * dth2);
  EXPECT_NEAR(L.at(0, 0), expected, 1e-13 * expected);
}

TEST(PressureOperator, RadialAndAngularCouplings) {
  const auto g = PolarGrid::build(0.5, 1.5, 5, 7);
  const double dr2 = g.dr() * g.dr(), dth2 = g.dtheta() * g.dtheta();
  for (auto mode : {BoundaryMode::Paper, BoundaryMode::Face}) {
    const auto L = assemble_pressure_operator(g, mode);
    for (int j = 0; j < g.n_r(); ++j) {
      const double rj = g.r_center(j);
      for (int k = 0; k < g.n_theta(); ++k) {
        const auto row = g.index(j, k);
        EXPECT_DOUBLE_EQ(L.at(row, g.index(j, g.wrap(k - 1))), -1.0 / (rj * rj * dth2));
        EXPECT_DOUBLE_EQ(L.at(row, g.index(j, g.wrap(k + 1))), -1.0 / (rj * rj * dth2));
        if (j + 1 < g.n_r())
          EXPECT_DOUBLE_EQ(L.at(row, g.index(j + 1, k)), -g.r_face(j + 1) / (g.r_center(j + 1) * dr2));
        if (j > 0)
          EXPECT_DOUBLE_EQ(L.at(row, g.index(j - 1, k)), -g.r_face(j) / (g.r_center(j - 1) * dr2));
      }
    }
  }
}

TEST(PressureOperator, WrapAtFirstAndLastAngularCell) {
  const auto g = PolarGrid::build(0.5, 1.0, 3, 6);
  const auto L = assemble_pressure_operator(g, BoundaryMode::Paper);
  const double w = -1.0 / (g.r_center(1) * g.r_center(1) * g.dtheta() * g.dtheta());
  EXPECT_DOUBLE_EQ(L.at(g.index(1, 0), g.index(1, 5)), w);
  EXPECT_DOUBLE_EQ(L.at(g.index(1, 5), g.index(1, 0)), w);
}

TEST(PressureOperator, RightScaledSymmetry) {
  const auto g = PolarGrid::build(0.5, 1.0, 3, 6);
  for (auto mode : {BoundaryMode::Paper, BoundaryMode::Face}) {
    const auto ld = assemble_pressure_operator(g, mode).scale_columns(radii(g));
    EXPECT_LE(SparseMatrix::max_abs_difference(ld, ld.transpose()), 1e-14);
  }
}

TEST(PressureRhs, DirichletTermOnly) {
  const auto g = PolarGrid::build(0.5, 1.5, 4, 6);
  PhysParams p;
  p.k_d = 0.0;
  p.delta = 0.0;
  const int N = g.n_r() - 1;
  const double dr2 = g.dr() * g.dr();
  const auto paper = assemble_pressure_rhs(g, uniform_mu(g, 0.3), p, BoundaryMode::Paper);
  const auto face = assemble_pressure_rhs(g, uniform_mu(g, 0.3), p, BoundaryMode::Face);
  const double ghost_r = g.r_max() + 0.5 * g.dr();
  for (int j = 0; j < g.n_r(); ++j)
    for (int k = 0; k < g.n_theta(); ++k) {
      const auto i = g.index(j, k);
      if (j < N) {
        EXPECT_EQ(paper[i], 0.0);
        EXPECT_EQ(face[i], 0.0);
      } else {
        EXPECT_NEAR(paper[i], g.r_center(N) * g.r_face(N + 1) / (ghost_r * dr2), 1e-12);
        EXPECT_NEAR(face[i], 2.0 * g.r_max() / dr2, 1e-12);
      }
    }
}

TEST(PressureRhs, ClampedBracketLeavesSource) {
  const auto g = PolarGrid::build(0.5, 1.5, 4, 6);
  PhysParams p;  // k_d = 1, delta = 2
  const double big = g.r_max();  // delta mu / r >= 1 in both modes
  for (auto mode : {BoundaryMode::Paper, BoundaryMode::Face}) {
    const auto rhs = assemble_pressure_rhs(g, uniform_mu(g, big), p, mode);
    for (int j = 0; j < g.n_r(); ++j)
      for (int k = 0; k < g.n_theta(); ++k) EXPECT_EQ(rhs[g.index(j, k)], -g.r_center(j));
  }
}

TEST(PressureRhs, BracketReference) {
  const auto g = PolarGrid::build(0.5, 1.5, 4, 6);
  EXPECT_DOUBLE_EQ(pressure_boundary_bracket(g, 0.25, 2.0, BoundaryMode::Paper),
                   1.0 - 0.5 / g.r_center(3));
  EXPECT_DOUBLE_EQ(pressure_boundary_bracket(g, 0.25, 2.0, BoundaryMode::Face), 1.0 - 0.5 / 1.5);
  EXPECT_EQ(pressure_boundary_bracket(g, 5.0, 2.0, BoundaryMode::Face), 0.0);
}

TEST(PressureRhs, DimensionMismatch) {
  const auto g = PolarGrid::build(0.5, 1.5, 4, 6);
  try {
    assemble_pressure_rhs(g, BoundaryField{{1.0, 2.0}}, PhysParams{}, BoundaryMode::Paper);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(SolvePressure, ZeroDataZeroSolution) {
  const auto g = PolarGrid::build(0.5, 1.5, 6, 8);
  PhysParams p;
  p.k_d = 0.0;
  for (auto mode : {BoundaryMode::Paper, BoundaryMode::Face}) {
    const auto sol = solve_pressure(g, uniform_mu(g, 10.0), p, mode);
    for (double x : sol.values) EXPECT_EQ(x, 0.0);
  }
}

TEST(SolvePressure, HarmonicAnnulusConvergence) {
  PhysParams p;
  p.k_d = 0.0;
  p.delta = 0.0;
  for (auto mode : {BoundaryMode::Paper, BoundaryMode::Face}) {
    double previous = 1e300;
    for (int n : {10, 20, 40}) {
      const auto g = PolarGrid::build(0.5, 1.5, n, 8);
      const auto sol = solve_pressure(g, uniform_mu(g, 0.0), p, mode);
      double err = 0.0;
      for (int j = 0; j < n; ++j) {
        const double r = g.r_center(j);
        const double exact = std::log(r / 0.5) / std::log(1.5 / 0.5);
        EXPECT_NEAR(exact, oracle::radial_poisson_exact(r, 0.5, 1.5, 0.0, 0.0, 1.0), 1e-15);
        err = std::max(err, std::abs(sol.pressure(g, j, 3) - exact));
      }
      EXPECT_LT(err, 0.6 * previous);
      previous = err;
    }
    EXPECT_LT(previous, mode == BoundaryMode::Face ? 1e-3 : 3e-2);
  }
}

TEST(PressureSolver, IterativeMatchesDirect) {
  testkit::Gen gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gen.grid(12, 16);
    const BoundaryField mu{gen.vector(static_cast<std::size_t>(g.n_theta()), 0.0, 1.0)};
    for (auto mode : {BoundaryMode::Paper, BoundaryMode::Face}) {
      const PressureSolver direct(g, mode, SolveMethod::Direct);
      const PressureSolver iterative(g, mode, SolveMethod::Iterative);
      SolveReport rd, ri;
      const auto a = direct.solve(mu, PhysParams{}, &rd);
      const auto b = iterative.solve(mu, PhysParams{}, &ri);
      EXPECT_LE(rd.residual_norm, 1e-12);
      EXPECT_LE(ri.residual_norm, 1e-11);
      EXPECT_GT(ri.iterations, 0);
      EXPECT_LT(testkit::max_abs_diff(a.values, b.values), 1e-9);
    }
  }
}

TEST(PressureProperty, RotationalEquivariance) {
  testkit::Gen gen(32);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gen.grid(8, 12);
    const auto mu = gen.vector(static_cast<std::size_t>(g.n_theta()), 0.0, 1.0);
    const int s = gen.integer(1, g.n_theta() - 1);
    const PressureSolver solver(g, BoundaryMode::Paper);
    const auto p = solver.solve({mu}, PhysParams{});
    const auto q = solver.solve({testkit::rotate_rings(mu, g.n_theta(), s)}, PhysParams{});
    EXPECT_LE(testkit::max_abs_diff(testkit::rotate_rings(p.values, g.n_theta(), s), q.values),
              1e-12);
  }
}

TEST(PressureProperty, DiscreteMaximumPrinciple) {
  testkit::Gen gen(33);
  PhysParams p;
  p.k_d = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = gen.grid(10, 12);
    const auto mu = gen.vector(static_cast<std::size_t>(g.n_theta()), 0.0, 0.8);
    for (auto mode : {BoundaryMode::Paper, BoundaryMode::Face}) {
      double hi = 0.0;
      for (double m : mu) hi = std::max(hi, pressure_boundary_bracket(g, m, p.delta, mode));
      const auto sol = solve_pressure(g, {mu}, p, mode);
      for (int j = 0; j < g.n_r(); ++j)
        for (int k = 0; k < g.n_theta(); ++k) {
          EXPECT_GE(sol.pressure(g, j, k), -1e-13);
          EXPECT_LE(sol.pressure(g, j, k), hi + 1e-13);
        }
    }
  }
}

TEST(PressureProperty, AxisymmetricDataGivesAxisymmetricSolution) {
  testkit::Gen gen(34);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gen.grid(10, 16);
    const auto sol = solve_pressure(g, uniform_mu(g, gen.uniform(0.0, 0.5)), PhysParams{},
                                    BoundaryMode::Paper);
    for (int j = 0; j < g.n_r(); ++j) {
      double lo = 1e300, hi = -1e300;
      for (int k = 0; k < g.n_theta(); ++k) {
        lo = std::min(lo, sol.values[g.index(j, k)]);
        hi = std::max(hi, sol.values[g.index(j, k)]);
      }
      EXPECT_LE(hi - lo, 1e-12);
    }
  }
}
