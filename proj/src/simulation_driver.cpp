#include "simulation_driver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cli_io.hpp"
#include "error.hpp"

namespace crawlfv {

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool state_is_sane(const SimState& s) {
  auto ok = [](double x) { return std::isfinite(x) && std::abs(x) <= kDivergenceBound; };
  for (double x : s.c_tilde.values)
    if (!ok(x)) return false;
  for (double x : s.mu_tilde.values)
    if (!ok(x)) return false;
  return true;
}

double time_tolerance(double window) { return 1e-9 * std::max(1.0, window); }

}  // namespace

double total_mass(const SimState& s, const PolarGrid& g) {
  if (s.c_tilde.values.size() != g.n_cells() ||
      s.mu_tilde.values.size() != static_cast<std::size_t>(g.n_theta()))
    throw Error(ErrorCode::DimensionMismatch, "state does not match the grid");
  double bulk = 0.0;
  for (double c : s.c_tilde.values) bulk += c;
  double bound = 0.0;
  for (double m : s.mu_tilde.values) bound += m;
  return g.dr() * g.dtheta() * bulk + g.dtheta() * bound;
}

SimState initial_state(const Config& config, const PolarGrid& g) {
  SimState s;
  s.c_tilde.values.assign(g.n_cells(), 0.0);
  s.mu_tilde.values.assign(static_cast<std::size_t>(g.n_theta()), 0.0);
  const int last = g.n_r() - 1;
  if (config.initial == "polarised") {
    for (int j = 0; j < g.n_r(); ++j)
      for (int k = 0; k < g.n_theta(); ++k)
        s.c_tilde.values[g.index(j, k)] = std::cos(g.theta_center(k) - std::numbers::pi) + 1.0;
    for (int k = 0; k < g.n_theta(); ++k)
      s.mu_tilde.values[k] = 0.5 * s.c_tilde.values[g.index(last, k)];
  } else if (config.initial == "uniform" || config.initial == "equilibrium") {
    for (int j = 0; j < g.n_r(); ++j)
      for (int k = 0; k < g.n_theta(); ++k) s.c_tilde.values[g.index(j, k)] = g.r_center(j);
    if (config.initial == "equilibrium") {
      if (!(config.phys.k_off > 0.0))
        throw Error(ErrorCode::BadValue, "initial = equilibrium needs k_off > 0");
      for (double& m : s.mu_tilde.values)
        m = config.phys.k_on / config.phys.k_off * g.r_center(last);
    }
  } else if (config.initial == "table") {
    if (config.initial_field.empty() || config.initial_mu.empty())
      throw Error(ErrorCode::BadValue, "initial = table needs initial_field and initial_mu");
    s = read_snapshot(config.initial_field, config.initial_mu, g);
    s.t = 0.0;
  } else {
    throw Error(ErrorCode::BadValue, "unknown initial condition '" + config.initial + "'");
  }
  return s;
}

CoupledOperators CoupledOperators::build(const Config& config) {
  config.validate();
  const PolarGrid g = config.grid();
  return CoupledOperators{
      g, config.phys,
      PressureSolver(g, config.boundary_mode, config.pressure_solver, config.solver_tol),
      TransportStepper(g, config.phys, config.dt, config.solver_tol)};
}

DiagnosticsRow describe_state(const SimState& state, const CoupledOperators& ops, long step) {
  const CellVelocity v = cell_velocity(state.mu_tilde, ops.grid, ops.phys);
  DiagnosticsRow row;
  row.step = step;
  row.t = state.t;
  row.mass = total_mass(state, ops.grid);
  row.v_x = v.v_x;
  row.v_y = v.v_y;
  row.polarization = polarization(v);
  return row;
}

CoupledStepResult coupled_step(const SimState& state, const CoupledOperators& ops,
                               long step_index) {
  SolveReport pressure_report;
  const PressureField p = ops.pressure.solve(state.mu_tilde, ops.phys, &pressure_report);
  const CellVelocity v = cell_velocity(state.mu_tilde, ops.grid, ops.phys);
  const FaceVelocityField u = face_velocities(p, v, ops.grid);
  StepReport transport_report;
  CoupledStepResult out{ops.transport.step(state, u, &transport_report), {}};
  out.state.t = static_cast<double>(step_index) * ops.transport.dt();
  out.row = describe_state(out.state, ops, step_index);
  out.row.cfl = transport_report.cfl;
  out.row.residual_pressure = pressure_report.residual_norm;
  out.row.residual_transport = transport_report.solve.residual_norm;
  return out;
}

std::optional<double> steady_state_reached(const std::vector<MuSample>& history, double window,
                                           double eps) {
  const double tol = time_tolerance(window);
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double t0 = history[i].t;
    if (history.back().t < t0 + window - tol) return std::nullopt;
    bool ok = true;
    for (std::size_t j = i + 1; j < history.size() && history[j].t <= t0 + window + tol; ++j)
      if (max_abs_diff(history[j].mu, history[i].mu) > eps) {
        ok = false;
        break;
      }
    if (ok) return t0;
  }
  return std::nullopt;
}

bool SteadyStateDetector::anchor_holds_for(std::size_t from) const {
  const Sample& anchor = samples_.front();
  const double limit = anchor.t + window_ + time_tolerance(window_);
  for (std::size_t i = from; i < samples_.size() && samples_[i].t <= limit; ++i)
    if (max_abs_diff(samples_[i].mu, anchor.mu) > eps_) return false;
  return true;
}

bool SteadyStateDetector::push(double t, std::span<const double> mu, double polarization) {
  if (reached_) return true;
  samples_.push_back({t, std::vector<double>(mu.begin(), mu.end()), polarization});
  while (samples_.size() > 1 && !anchor_holds_for(checked_)) {
    samples_.pop_front();
    checked_ = 1;
  }
  checked_ = samples_.size();
  if (samples_.back().t >= samples_.front().t + window_ - time_tolerance(window_)) {
    reached_ = true;
    steady_t_ = samples_.front().t;
    steady_pol_ = samples_.front().pol;
  }
  return reached_;
}

RunReport run_simulation(const Config& config) {
  return run_simulation(config, resolve_output_dir(config));
}

RunReport run_simulation(const Config& config, const std::filesystem::path& dir) {
  const CoupledOperators ops = CoupledOperators::build(config);
  const PolarGrid& g = ops.grid;
  SimState state = initial_state(config, g);

  if (config.write_outputs) {
    write_meta(config, dir);
    write_snapshot(state, g, 0, dir);
  }

  RunReport report;
  report.diagnostics.push_back(describe_state(state, ops, 0));
  const double m0 = report.diagnostics.front().mass;
  const double mass_scale = m0 != 0.0 ? std::abs(m0) : 1.0;

  SteadyStateDetector detector(config.t_ss, config.eps_ss);
  detector.push(state.t, state.mu_tilde.values, report.diagnostics.front().polarization);

  const long n_steps = std::lround(config.t_max / config.dt);
  long n = 0;
  while (n < n_steps && !detector.reached()) {
    ++n;
    auto res = coupled_step(state, ops, n);
    if (!state_is_sane(res.state)) {
      if (config.write_outputs) write_timeseries(report.diagnostics, dir, config.timeseries_every);
      throw Error(ErrorCode::NonFiniteState,
                  "state left the finite range at step " + std::to_string(n) +
                      " (t = " + std::to_string(res.state.t) + ")");
    }
    state = std::move(res.state);
    report.max_mass_drift =
        std::max(report.max_mass_drift, std::abs(res.row.mass - m0) / mass_scale);
    report.max_cfl = std::max(report.max_cfl, res.row.cfl);
    if (res.row.cfl > 1.0) ++report.cfl_warnings;
    report.diagnostics.push_back(res.row);
    if (config.write_outputs && config.snapshot_every > 0 && n % config.snapshot_every == 0)
      write_snapshot(state, g, n, dir);
    detector.push(state.t, state.mu_tilde.values, res.row.polarization);
  }

  report.steps = n;
  report.final_polarization = report.diagnostics.back().polarization;
  if (detector.reached()) {
    report.t_steady = detector.steady_time();
    report.pol_steady = detector.steady_polarization();
  }
  report.final_state = state;

  if (config.write_outputs) {
    if (config.snapshot_every <= 0 || n % config.snapshot_every != 0) write_snapshot(state, g, n, dir);
    write_timeseries(report.diagnostics, dir, config.timeseries_every);
    append_meta_results(report, dir);
  }
  return report;
}

}  // namespace crawlfv
