#include "velocity_field.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace crawlfv {

double CellVelocity::radial(double theta) const {
  return v_x * std::cos(theta) + v_y * std::sin(theta);
}

double CellVelocity::angular(double theta) const {
  return -v_x * std::sin(theta) + v_y * std::cos(theta);
}

double polarization(const CellVelocity& v) { return std::hypot(v.v_x, v.v_y); }

FaceVelocityField::FaceVelocityField(int n_r, int n_theta)
    : n_r_(n_r),
      n_theta_(n_theta),
      radial_(static_cast<std::size_t>(n_r + 1) * n_theta, 0.0),
      angular_(static_cast<std::size_t>(n_r) * n_theta, 0.0) {}

CellVelocity cell_velocity(const BoundaryField& mu, const PolarGrid& g,
                           const PhysParams& params) {
  if (mu.values.size() != static_cast<std::size_t>(g.n_theta()))
    throw Error(ErrorCode::DimensionMismatch,
                "boundary field has " + std::to_string(mu.values.size()) + " entries");
  double sx = 0.0, sy = 0.0;
  for (int k = 0; k < g.n_theta(); ++k) {
    const double bracket = positive_part(1.0 - params.delta * mu.values[k] / g.r_max());
    const double th = g.theta_center(k);
    sx += bracket * std::cos(th);
    sy += bracket * std::sin(th);
  }
  return {params.gamma * g.dtheta() * sx, params.gamma * g.dtheta() * sy};
}

FaceVelocityField face_velocities(const PressureField& p, const CellVelocity& v,
                                  const PolarGrid& g) {
  if (p.values.size() != g.n_cells())
    throw Error(ErrorCode::DimensionMismatch,
                "pressure field has " + std::to_string(p.values.size()) + " entries, grid has " +
                    std::to_string(g.n_cells()));
  const int nr = g.n_r();
  const int nt = g.n_theta();
  FaceVelocityField u(nr, nt);

  for (int k = 0; k < nt; ++k) {
    const double vr = v.radial(g.theta_center(k));
    for (int f = 0; f <= nr; ++f) {
      // Pressure gradient only across interior faces; the boundary faces keep
      // the frame velocity alone and are overridden by the flux closures.
      double grad = 0.0;
      if (f > 0 && f < nr) grad = (p.pressure(g, f, k) - p.pressure(g, f - 1, k)) / g.dr();
      u.radial(f, k) = -grad - vr;
    }
  }
  for (int j = 0; j < nr; ++j) {
    const double rj = g.r_center(j);
    for (int k = 0; k < nt; ++k) {
      const int kp = g.wrap(k + 1);
      const double grad = (p.values[g.index(j, kp)] - p.values[g.index(j, k)]) / (rj * g.dtheta());
      u.angular(j, k) = -grad - rj * v.angular(g.theta_face_above(k));
    }
  }
  return u;
}

}  // namespace crawlfv
