#include "checks.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "pressure_poisson.hpp"
#include "simulation_driver.hpp"
#include "verification_oracles.hpp"

namespace crawlfv {

ConvergenceStudy poisson_convergence(double r_min, double r_max, double k_d,
                                     const std::vector<int>& levels, BoundaryMode mode,
                                     int n_theta) {
  if (levels.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two levels");
  ConvergenceStudy study;
  study.mode = mode;
  study.k_d = k_d;
  PhysParams phys;
  phys.k_d = k_d;
  phys.delta = 0.0;
  for (int n_r : levels) {
    const PolarGrid g = PolarGrid::build(r_min, r_max, n_r, n_theta);
    BoundaryField mu{std::vector<double>(static_cast<std::size_t>(n_theta), 0.0)};
    const PressureField p = solve_pressure(g, mu, phys, mode);
    double err = 0.0;
    for (int j = 0; j < n_r; ++j) {
      const double exact = oracle::radial_poisson_exact(g.r_center(j), r_min, r_max, k_d, 0.0, 1.0);
      for (int k = 0; k < n_theta; ++k) err = std::max(err, std::abs(p.pressure(g, j, k) - exact));
    }
    study.levels.push_back({n_r, g.dr(), err});
  }
  for (std::size_t i = 0; i + 1 < study.levels.size(); ++i) {
    const auto& a = study.levels[i];
    const auto& b = study.levels[i + 1];
    study.pairwise_orders.push_back(std::log(a.error / b.error) / std::log(a.dr / b.dr));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(study.levels.size());
  for (const auto& l : study.levels) {
    const double x = std::log(l.dr), y = std::log(l.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  study.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return study;
}

MassCheck mass_check(const Config& config, long steps) {
  if (steps < 0) throw Error(ErrorCode::BadValue, "steps must be nonnegative");
  const CoupledOperators ops = CoupledOperators::build(config);
  SimState state = initial_state(config, ops.grid);
  MassCheck out;
  out.steps = steps;
  out.initial_mass = total_mass(state, ops.grid);
  out.final_mass = out.initial_mass;
  const double scale = out.initial_mass != 0.0 ? std::abs(out.initial_mass) : 1.0;
  for (long n = 1; n <= steps; ++n) {
    auto res = coupled_step(state, ops, n);
    if (!std::isfinite(res.row.mass) || std::abs(res.row.mass) > kDivergenceBound)
      throw Error(ErrorCode::NonFiniteState, "mass left the finite range at step " + std::to_string(n));
    state = std::move(res.state);
    out.final_mass = res.row.mass;
    out.max_relative_drift =
        std::max(out.max_relative_drift, std::abs(out.final_mass - out.initial_mass) / scale);
  }
  return out;
}

}  // namespace crawlfv
