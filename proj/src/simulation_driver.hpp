#pragma once

#include <deque>
#include <filesystem>
#include <optional>
#include <vector>

#include "config.hpp"
#include "pressure_poisson.hpp"
#include "transport_imex.hpp"
#include "velocity_field.hpp"

namespace crawlfv {

/// One row per stored state: the state after `step` steps, the velocity it
/// induces, and the numerics of the step that produced it (zeros for step 0).
struct DiagnosticsRow {
  long step = 0;
  double t = 0.0;
  double mass = 0.0;
  double v_x = 0.0;
  double v_y = 0.0;
  double polarization = 0.0;
  double cfl = 0.0;
  double residual_pressure = 0.0;
  double residual_transport = 0.0;
};

using Diagnostics = std::vector<DiagnosticsRow>;

/// M = dr dtheta sum c~ + dtheta sum mu~, summed j-major then k.
double total_mass(const SimState& state, const PolarGrid& grid);

SimState initial_state(const Config& config, const PolarGrid& grid);

/// Everything that stays fixed along a trajectory.
struct CoupledOperators {
  PolarGrid grid;
  PhysParams phys;
  PressureSolver pressure;
  TransportStepper transport;

  static CoupledOperators build(const Config& config);
};

struct CoupledStepResult {
  SimState state;
  DiagnosticsRow row;
};

/// Pressure solve, cell velocity, face velocities, then the IMEX step.
CoupledStepResult coupled_step(const SimState& state, const CoupledOperators& ops,
                               long step_index);

DiagnosticsRow describe_state(const SimState& state, const CoupledOperators& ops, long step);

/// Earliest sample time t with |mu(s) - mu(t)|_inf <= eps for every sample
/// s in [t, t + window], requiring the history to reach t + window.
struct MuSample {
  double t;
  std::vector<double> mu;
};
std::optional<double> steady_state_reached(const std::vector<MuSample>& history, double window,
                                           double eps);

/// Streaming form of steady_state_reached: feed samples in time order.
class SteadyStateDetector {
 public:
  SteadyStateDetector(double window, double eps) : window_(window), eps_(eps) {}

  /// Returns true once a steady anchor is confirmed (sticky).
  bool push(double t, std::span<const double> mu, double polarization);

  bool reached() const noexcept { return reached_; }
  double steady_time() const noexcept { return steady_t_; }
  double steady_polarization() const noexcept { return steady_pol_; }

 private:
  struct Sample {
    double t;
    std::vector<double> mu;
    double pol;
  };
  bool anchor_holds_for(std::size_t from) const;

  double window_;
  double eps_;
  std::deque<Sample> samples_;
  std::size_t checked_ = 1;  // samples_[1..checked_) already verified against the anchor
  bool reached_ = false;
  double steady_t_ = 0.0;
  double steady_pol_ = 0.0;
};

struct RunReport {
  std::optional<double> t_steady;
  std::optional<double> pol_steady;  ///< |v| at t_steady
  double final_polarization = 0.0;
  double max_mass_drift = 0.0;  ///< max_n |M^n - M^0| / |M^0|
  double max_cfl = 0.0;
  long cfl_warnings = 0;  ///< steps whose advective CFL number exceeded 1
  long steps = 0;
  SimState final_state;
  Diagnostics diagnostics;
};

/// Advances until t_max or a confirmed steady state, writing outputs when
/// config.write_outputs is set. Throws NonFiniteState (after flushing the
/// time series) when the state blows up.
RunReport run_simulation(const Config& config);
/// Same, writing into `output_dir` as given (no environment override).
RunReport run_simulation(const Config& config, const std::filesystem::path& output_dir);

/// Largest |value| allowed before a run is declared divergent.
inline constexpr double kDivergenceBound = 1e12;

}  // namespace crawlfv
