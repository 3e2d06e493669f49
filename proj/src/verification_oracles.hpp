#pragma once

#include <string>
#include <vector>

// Reference computations used to cross-check the solver. Nothing here
// includes or calls the assembly code; geometry is recomputed from the four
// annulus numbers and every matrix is dense and filled row by row from the
// scheme equations.

namespace crawlfv::oracle {

struct Annulus {
  double r_min;
  double r_max;
  int n_r;
  int n_theta;
};

struct Coefficients {
  double k_d;
  double delta;
  double gamma;
  double D;
  double k_on;
  double k_off;
};

/// Cell values flattened as k + j n_theta (0-based), boundary values by k.
struct State {
  std::vector<double> c_tilde;
  std::vector<double> mu_tilde;
};

/// radial: (n_r + 1) n_theta values, face j (0 = inner circle) at angle
/// theta_k stored at k + j n_theta. angular: n_r n_theta values, face
/// between k and k+1 of ring j stored at k + j n_theta (r-scaled).
struct Faces {
  std::vector<double> radial;
  std::vector<double> angular;
};

/// Solution of p'' + p'/r = k_d on [r_min, r_max] with the two Dirichlet
/// values: k_d r^2 / 4 + a ln r + b. Throws OutOfDomain outside the interval.
double radial_poisson_exact(double r, double r_min, double r_max, double k_d, double p_inner,
                            double p_outer);

/// Largest grid accepted by the dense references (N_r N_theta).
inline constexpr int kMaxDenseCells = 200;

/// The transport half of a step for given face velocities.
State dense_reference_transport_step(const State& state, const Faces& faces, const Annulus& grid,
                                     const Coefficients& coef, double dt);

/// Full coupled step with ghost-cell pressure closure: pressure, cell
/// velocity, face velocities, transport.
State dense_reference_step(const State& state, const Annulus& grid, const Coefficients& coef,
                           double dt);

/// Dense ghost-cell pressure solve, p~ flattened as k + j n_theta.
std::vector<double> dense_reference_pressure(const std::vector<double>& mu_tilde,
                                             const Annulus& grid, const Coefficients& coef);

/// Midpoint quadrature with `refinement` intervals per direction of
/// int int c~ dr dtheta + int mu~ dtheta for a named preset ("polarised":
/// c~ = cos(theta - pi) + 1, mu~ = c~ / 2; "uniform": c~ = r, mu~ = 0).
double initial_mass_quadrature(const std::string& preset, double r_min, double r_max,
                               int refinement);

}  // namespace crawlfv::oracle
