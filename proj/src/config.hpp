#pragma once

#include <string>
#include <vector>

#include "model.hpp"
#include "polar_grid.hpp"
#include "sparse_linalg.hpp"

namespace crawlfv {

/// Resolved run configuration. Defaults reproduce the two-regime
/// illustration on the R = 1.5 annulus (dr close to dtheta = 2 pi / 120).
struct Config {
  // geometry
  double r_min = 0.5;
  double r_max = 1.5;
  int n_r = 19;
  int n_theta = 120;

  PhysParams phys;

  // time stepping and numerics
  double dt = 1e-2;
  double t_max = 100.0;
  BoundaryMode boundary_mode = BoundaryMode::Paper;
  double solver_tol = kDefaultSolveTolerance;
  SolveMethod pressure_solver = SolveMethod::Direct;

  // steady state: mu~ stays within eps_ss (max norm) for a window t_ss
  double t_ss = 1.0;
  double eps_ss = 1e-8;

  // initial condition: "polarised", "uniform", "equilibrium" or "table"
  std::string initial = "polarised";
  std::string initial_field;  // field_<step>.csv for "table"
  std::string initial_mu;     // mu_<step>.csv for "table"

  // outputs
  std::string output_dir = "out";
  bool write_outputs = true;
  int snapshot_every = 0;  // 0: initial and final snapshots only
  int timeseries_every = 1;

  // sweep
  std::vector<double> dr_list;
  std::vector<double> dt_list;
  std::vector<double> kon_list;
  double sweep_t_max = 200.0;
  int sweep_workers = 0;  // 0: hardware concurrency
  bool sweep_write_runs = true;

  // checks
  std::vector<int> poisson_levels{10, 20, 40, 80};
  int mass_check_steps = 1000;

  /// Throws BadValue on inconsistent values; grid errors come from build().
  void validate() const;
  PolarGrid grid() const { return PolarGrid::build(r_min, r_max, n_r, n_theta); }

  bool operator==(const Config&) const = default;
};

}  // namespace crawlfv
