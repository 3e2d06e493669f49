#pragma once

#include <vector>

#include "config.hpp"
#include "model.hpp"

namespace crawlfv {

struct ConvergenceLevel {
  int n_r = 0;
  double dr = 0.0;
  double error = 0.0;  ///< max over cells of |p~ / r - p_exact(r)|
};

struct ConvergenceStudy {
  BoundaryMode mode = BoundaryMode::Paper;
  double k_d = 0.0;
  std::vector<ConvergenceLevel> levels;
  /// log(e_i / e_{i+1}) / log(dr_i / dr_{i+1}) for consecutive levels.
  std::vector<double> pairwise_orders;
  /// Least-squares slope of log(error) against log(dr) over all levels.
  double observed_order = 0.0;
};

/// Pressure solve with delta = 0 (outer p = 1, inner p = 0) at each N_r in
/// `levels`, compared with the analytic radial solution.
ConvergenceStudy poisson_convergence(double r_min, double r_max, double k_d,
                                     const std::vector<int>& levels, BoundaryMode mode,
                                     int n_theta = 8);

struct MassCheck {
  long steps = 0;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  double max_relative_drift = 0.0;
};

/// Runs `steps` coupled steps from the configured initial state without
/// writing anything; throws NonFiniteState if the state blows up.
MassCheck mass_check(const Config& config, long steps);

}  // namespace crawlfv
