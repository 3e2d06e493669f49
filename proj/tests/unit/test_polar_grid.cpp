#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "error.hpp"
#include "polar_grid.hpp"
#include "test_support.hpp"

using namespace crawlfv;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no crawlfv::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(PolarGrid, SmallAnnulusGeometry) {
  const auto g = PolarGrid::build(0.5, 1.5, 4, 8);
  EXPECT_DOUBLE_EQ(g.dr(), 0.25);
  EXPECT_DOUBLE_EQ(g.r_center(0), 0.625);
  EXPECT_EQ(g.r_face(4), 1.5);
  EXPECT_EQ(g.r_face(0), 0.5);
  EXPECT_DOUBLE_EQ(g.dtheta(), std::numbers::pi / 4);
  EXPECT_EQ(g.n_cells(), 32u);
}

TEST(PolarGrid, FinestSweepGrid) {
  const auto g = PolarGrid::build(0.5, 1.0, 100, 160);
  EXPECT_NEAR(g.dr(), 5e-3, 1e-15);
  EXPECT_NEAR(g.dtheta(), 3.927e-2, 1e-5);
  EXPECT_DOUBLE_EQ(g.dtheta(), 2 * std::numbers::pi / 160);
}

TEST(PolarGrid, AngularPositions) {
  const auto g = PolarGrid::build(0.5, 1.5, 4, 8);
  EXPECT_DOUBLE_EQ(g.theta_center(0), g.dtheta());
  EXPECT_DOUBLE_EQ(g.theta_center(7), 2 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(g.theta_face_above(0), 1.5 * g.dtheta());
}

TEST(PolarGrid, RejectsInvalidInput) {
  EXPECT_EQ(code_of([] { PolarGrid::build(1.5, 0.5, 4, 8); }), ErrorCode::InvertedRadii);
  EXPECT_EQ(code_of([] { PolarGrid::build(1.0, 1.0, 4, 8); }), ErrorCode::InvertedRadii);
  EXPECT_EQ(code_of([] { PolarGrid::build(0.0, 1.0, 4, 8); }), ErrorCode::NonPositiveRadius);
  EXPECT_EQ(code_of([] { PolarGrid::build(-0.5, 1.0, 4, 8); }), ErrorCode::NonPositiveRadius);
  EXPECT_EQ(code_of([] { PolarGrid::build(0.5, 1.0, 1, 8); }), ErrorCode::TooFewCells);
  EXPECT_EQ(code_of([] { PolarGrid::build(0.5, 1.0, 4, 2); }), ErrorCode::TooFewCells);
}

TEST(FlattenIndex, ZeroBasedExamples) {
  EXPECT_EQ(flatten_index(0, 0, 8), 0u);
  EXPECT_EQ(flatten_index(1, 2, 8), 10u);
  EXPECT_EQ(flatten_index(3, 7, 8), 31u);
}

TEST(FlattenIndex, OutOfRange) {
  EXPECT_EQ(code_of([] { flatten_index(-1, 0, 8); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([] { flatten_index(0, 8, 8); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([] { flatten_index(0, -1, 8); }), ErrorCode::IndexOutOfRange);
}

TEST(ThetaNeighbor, PeriodicWrap) {
  EXPECT_EQ(theta_neighbor(0, -1, 120), 119);
  EXPECT_EQ(theta_neighbor(119, +1, 120), 0);
  EXPECT_EQ(theta_neighbor(4, +1, 120), 5);
}

TEST(PolarGridProperty, FlattenIsBijection) {
  testkit::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_r = gen.integer(2, 12), n_t = gen.integer(3, 20);
    std::set<std::size_t> seen;
    for (int j = 0; j < n_r; ++j)
      for (int k = 0; k < n_t; ++k) seen.insert(flatten_index(j, k, n_t));
    ASSERT_EQ(seen.size(), static_cast<std::size_t>(n_r * n_t));
    EXPECT_EQ(*seen.begin(), 0u);
    EXPECT_EQ(*seen.rbegin(), static_cast<std::size_t>(n_r * n_t - 1));
  }
}

TEST(PolarGridProperty, NeighborRoundTrip) {
  for (int n = 3; n < 40; ++n)
    for (int k = 0; k < n; ++k) {
      EXPECT_EQ(theta_neighbor(theta_neighbor(k, +1, n), -1, n), k);
      EXPECT_EQ(theta_neighbor(theta_neighbor(k, -1, n), +1, n), k);
    }
}

TEST(PolarGridProperty, GeometryInvariants) {
  testkit::Gen gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = gen.grid(40, 60);
    EXPECT_EQ(g.r_face(g.n_r()), g.r_max());
    double area = 0.0;
    for (int j = 0; j < g.n_r(); ++j) {
      if (j + 1 < g.n_r()) EXPECT_NEAR(g.r_center(j + 1) - g.r_center(j), g.dr(), 1e-14);
      for (int k = 0; k < g.n_theta(); ++k) area += g.dr() * g.dtheta();
    }
    EXPECT_NEAR(area, (g.r_max() - g.r_min()) * 2 * std::numbers::pi, 1e-12);
    for (int k = -3 * g.n_theta(); k < 3 * g.n_theta(); ++k) {
      EXPECT_GE(g.wrap(k), 0);
      EXPECT_LT(g.wrap(k), g.n_theta());
    }
  }
}
