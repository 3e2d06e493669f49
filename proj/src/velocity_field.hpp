#pragma once

#include <vector>

#include "model.hpp"
#include "polar_grid.hpp"
#include "pressure_poisson.hpp"

namespace crawlfv {

/// Cell (domain) velocity in Cartesian components.
struct CellVelocity {
  double v_x = 0.0;
  double v_y = 0.0;

  /// Radial component at angle theta.
  double radial(double theta) const;
  /// Angular component at angle theta, unscaled (v . e_theta).
  double angular(double theta) const;
};

/// Polarization |v|.
double polarization(const CellVelocity& v);

/// Fluid velocities on cell faces.
///
/// radial(j, k) lives on radial face j (0..N_r) at angle theta_k; the two
/// boundary faces are filled but never used by transport. angular(j, k) lives
/// on the face between angular cells k and k+1 of ring j and carries the
/// r-scaled angular component u_theta = r u . e_theta.
class FaceVelocityField {
 public:
  FaceVelocityField() = default;
  FaceVelocityField(int n_r, int n_theta);

  int n_r() const noexcept { return n_r_; }
  int n_theta() const noexcept { return n_theta_; }

  double& radial(int j, int k) { return radial_[static_cast<std::size_t>(k + j * n_theta_)]; }
  double radial(int j, int k) const { return radial_[static_cast<std::size_t>(k + j * n_theta_)]; }
  double& angular(int j, int k) { return angular_[static_cast<std::size_t>(k + j * n_theta_)]; }
  double angular(int j, int k) const { return angular_[static_cast<std::size_t>(k + j * n_theta_)]; }

  std::vector<double>& radial_values() noexcept { return radial_; }
  const std::vector<double>& radial_values() const noexcept { return radial_; }
  std::vector<double>& angular_values() noexcept { return angular_; }
  const std::vector<double>& angular_values() const noexcept { return angular_; }

 private:
  int n_r_ = 0;
  int n_theta_ = 0;
  std::vector<double> radial_;   // (n_r + 1) * n_theta
  std::vector<double> angular_;  // n_r * n_theta
};

/// v = gamma dtheta sum_k [1 - delta mu~_k / R]_+ (cos theta_k, sin theta_k).
CellVelocity cell_velocity(const BoundaryField& mu, const PolarGrid& grid,
                           const PhysParams& params);

/// Darcy face velocities u = -grad p - v from the scaled pressure.
FaceVelocityField face_velocities(const PressureField& p, const CellVelocity& v,
                                  const PolarGrid& grid);

}  // namespace crawlfv
