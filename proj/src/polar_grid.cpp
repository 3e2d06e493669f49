#include "polar_grid.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace crawlfv {

PolarGrid::PolarGrid(double r_min, double r_max, int n_r, int n_theta)
    : r_min_(r_min),
      r_max_(r_max),
      n_r_(n_r),
      n_theta_(n_theta),
      dr_((r_max - r_min) / n_r),
      dtheta_(2.0 * std::numbers::pi / n_theta) {}

PolarGrid PolarGrid::build(double r_min, double r_max, int n_r, int n_theta) {
  if (!(r_min > 0.0) || !(r_max > 0.0) || !std::isfinite(r_min) || !std::isfinite(r_max))
    throw Error(ErrorCode::NonPositiveRadius,
                "radii must be finite and positive (R_min=" + std::to_string(r_min) +
                    ", R=" + std::to_string(r_max) + ")");
  if (r_min >= r_max)
    throw Error(ErrorCode::InvertedRadii, "R_min must be smaller than R");
  if (n_r < 2 || n_theta < 3)
    throw Error(ErrorCode::TooFewCells, "need N_r >= 2 and N_theta >= 3 (got " +
                                            std::to_string(n_r) + ", " +
                                            std::to_string(n_theta) + ")");
  return PolarGrid(r_min, r_max, n_r, n_theta);
}

std::size_t flatten_index(int j, int k, int n_theta) {
  if (j < 0 || k < 0 || k >= n_theta)
    throw Error(ErrorCode::IndexOutOfRange, "cell (" + std::to_string(j) + ", " +
                                                std::to_string(k) + ") with N_theta=" +
                                                std::to_string(n_theta));
  return static_cast<std::size_t>(k) + static_cast<std::size_t>(j) * n_theta;
}

int theta_neighbor(int k, int offset, int n_theta) {
  const int n = k + offset;
  if (n < 0) return n + n_theta;
  if (n >= n_theta) return n - n_theta;
  return n;
}

}  // namespace crawlfv
