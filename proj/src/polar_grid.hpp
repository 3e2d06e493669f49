#pragma once

#include <cstddef>
#include <numbers>

namespace crawlfv {

/// Uniform polar grid on the annulus R_min < r < R.
///
/// All indices are 0-based. Ring j (0 <= j < n_r) has its centre at
/// R_min + (j + 1/2) dr; radial face j (0 <= j <= n_r) sits at R_min + j dr,
/// so face 0 is the inner circle and face n_r the outer one. Angular cell k
/// (0 <= k < n_theta) is centred at (k + 1) dtheta, its upper face at
/// (k + 3/2) dtheta. Cell (j, k) is stored at k + j * n_theta.
class PolarGrid {
 public:
  static PolarGrid build(double r_min, double r_max, int n_r, int n_theta);

  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  int n_r() const noexcept { return n_r_; }
  int n_theta() const noexcept { return n_theta_; }
  double dr() const noexcept { return dr_; }
  double dtheta() const noexcept { return dtheta_; }
  std::size_t n_cells() const noexcept {
    return static_cast<std::size_t>(n_r_) * static_cast<std::size_t>(n_theta_);
  }

  double r_center(int j) const noexcept { return r_min_ + (j + 0.5) * dr_; }
  /// Outermost face returns r_max exactly.
  double r_face(int j) const noexcept { return j == n_r_ ? r_max_ : r_min_ + j * dr_; }
  double theta_center(int k) const noexcept { return (k + 1) * dtheta_; }
  double theta_face_above(int k) const noexcept { return (k + 1.5) * dtheta_; }

  std::size_t index(int j, int k) const noexcept {
    return static_cast<std::size_t>(k) + static_cast<std::size_t>(j) * n_theta_;
  }
  int wrap(int k) const noexcept { return ((k % n_theta_) + n_theta_) % n_theta_; }

 private:
  PolarGrid(double r_min, double r_max, int n_r, int n_theta);

  double r_min_;
  double r_max_;
  int n_r_;
  int n_theta_;
  double dr_;
  double dtheta_;
};

/// Linear position k + j * n_theta of cell (j, k); throws IndexOutOfRange for
/// j < 0 or k outside [0, n_theta).
std::size_t flatten_index(int j, int k, int n_theta);

/// Periodic neighbour of angular cell k; offset must be +1 or -1.
int theta_neighbor(int k, int offset, int n_theta);

}  // namespace crawlfv
