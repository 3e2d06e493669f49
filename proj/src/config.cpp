#include "config.hpp"

#include <cmath>

#include "error.hpp"

namespace crawlfv {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadValue, what);
}

}  // namespace

void Config::validate() const {
  phys.validate();
  require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
  require(std::isfinite(t_max) && t_max > 0.0, "t_max must be positive");
  require(std::isfinite(t_ss) && t_ss > 0.0, "T_ss must be positive");
  require(std::isfinite(eps_ss) && eps_ss > 0.0, "eps_ss must be positive");
  require(std::isfinite(solver_tol) && solver_tol > 0.0, "solver_tol must be positive");
  require(snapshot_every >= 0, "snapshot_every must be nonnegative");
  require(timeseries_every >= 1, "timeseries_every must be at least 1");
  require(std::isfinite(sweep_t_max) && sweep_t_max > 0.0, "sweep_t_max must be positive");
  require(sweep_workers >= 0, "sweep_workers must be nonnegative");
  require(mass_check_steps >= 1, "mass_check_steps must be at least 1");
  for (double v : dr_list) require(std::isfinite(v) && v > 0.0, "dr_list entries must be positive");
  for (double v : dt_list) require(std::isfinite(v) && v > 0.0, "dt_list entries must be positive");
  for (double v : kon_list) require(std::isfinite(v) && v >= 0.0, "kon_list entries must be nonnegative");
  for (int v : poisson_levels) require(v >= 2, "poisson_levels entries must be at least 2");
  (void)grid();
}

}  // namespace crawlfv
