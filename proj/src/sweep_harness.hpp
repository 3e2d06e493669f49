#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace crawlfv {

/// Outcome of one (k_on, dr, dt) run.
struct SweepRecord {
  double k_on = 0.0;
  double dr = 0.0;
  double dt = 0.0;
  int n_r = 0;
  std::optional<double> t_steady;
  std::optional<double> pol_steady;
  double final_polarization = 0.0;
  double mass_drift = 0.0;
  double wall_time = 0.0;  ///< seconds
  /// "ok", "no_steady_state", "skipped: ..." or "failed: ..."
  std::string status;
};

/// N_r such that N_r dr = R - R_min, if one exists (relative tolerance 1e-9).
std::optional<int> radial_cells_for_step(double r_min, double r_max, double dr);

/// Runs the Cartesian product kon_list x dr_list x dt_list from `base`, each
/// with t_max = base.sweep_t_max, on up to `workers` threads (0: hardware
/// concurrency). Per-run failures are recorded, never thrown. Records come
/// back sorted by (k_on, dr, dt). When base.write_outputs and
/// base.sweep_write_runs are set, each run writes to its own subdirectory of
/// <output>/sweep/.
std::vector<SweepRecord> run_sweep(const Config& base, const std::vector<double>& dr_list,
                                   const std::vector<double>& dt_list,
                                   const std::vector<double>& kon_list, int workers = 0);

/// sweep.csv columns:
/// k_on,dr,dt,n_r,t_steady,pol_steady,final_polarization,mass_drift,wall_time,status
/// Missing values are written as "none".
void write_sweep_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);

}  // namespace crawlfv
