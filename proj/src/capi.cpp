#include "crawlfv/crawlfv.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <optional>
#include <string>

#include "checks.hpp"
#include "cli_io.hpp"
#include "error.hpp"
#include "simulation_driver.hpp"
#include "sweep_harness.hpp"

struct crawlfv_config {
  crawlfv::Config value;
};

struct crawlfv_sim {
  crawlfv::Config config;
  crawlfv::CoupledOperators ops;
  crawlfv::SimState state;
  crawlfv::DiagnosticsRow row;
};

namespace {

thread_local std::string g_message;
thread_local std::string g_kind;

crawlfv_status fail(crawlfv_status status, std::string kind, std::string message) {
  g_kind = std::move(kind);
  g_message = std::move(message);
  return status;
}

crawlfv_status null_arg(const char* name) {
  return fail(CRAWLFV_ERR_NULL, "NullArgument", std::string("argument '") + name + "' is NULL");
}

crawlfv_status from_exception() {
  try {
    throw;
  } catch (const crawlfv::Error& e) {
    crawlfv_status s = CRAWLFV_ERR_INTERNAL;
    if (crawlfv::is_validation_error(e.code()))
      s = CRAWLFV_ERR_VALIDATION;
    else if (crawlfv::is_solver_error(e.code()))
      s = CRAWLFV_ERR_SOLVER;
    else if (e.code() == crawlfv::ErrorCode::IoError)
      s = CRAWLFV_ERR_IO;
    return fail(s, crawlfv::to_string(e.code()), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(CRAWLFV_ERR_IO, "IoError", e.what());
  } catch (const std::bad_alloc&) {
    return fail(CRAWLFV_ERR_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return fail(CRAWLFV_ERR_INTERNAL, "Internal", e.what());
  } catch (...) {
    return fail(CRAWLFV_ERR_INTERNAL, "Internal", "unknown exception");
  }
}

template <class F>
crawlfv_status guarded(F&& f) {
  try {
    f();
    return CRAWLFV_OK;
  } catch (...) {
    return from_exception();
  }
}

crawlfv_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf) return needed ? CRAWLFV_OK : null_arg("buf");
  if (cap < s.size() + 1)
    return fail(CRAWLFV_ERR_BUFFER, "BufferTooSmall",
                "buffer holds " + std::to_string(cap) + " bytes, " +
                    std::to_string(s.size() + 1) + " needed");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return CRAWLFV_OK;
}

}  // namespace

extern "C" {

const char* crawlfv_version(void) { return "1.0.0"; }

const char* crawlfv_status_string(crawlfv_status status) {
  switch (status) {
    case CRAWLFV_OK: return "ok";
    case CRAWLFV_ERR_NULL: return "null argument";
    case CRAWLFV_ERR_VALIDATION: return "validation error";
    case CRAWLFV_ERR_SOLVER: return "solver failure";
    case CRAWLFV_ERR_IO: return "i/o error";
    case CRAWLFV_ERR_BUFFER: return "buffer too small";
    case CRAWLFV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* crawlfv_last_error(void) { return g_message.c_str(); }
const char* crawlfv_last_error_kind(void) { return g_kind.c_str(); }

crawlfv_status crawlfv_config_create(crawlfv_config** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new crawlfv_config{}; });
}

crawlfv_status crawlfv_config_load(const char* path, crawlfv_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new crawlfv_config{crawlfv::parse_config(path)}; });
}

crawlfv_status crawlfv_config_parse(const char* text, crawlfv_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new crawlfv_config{crawlfv::parse_config_string(text)}; });
}

crawlfv_status crawlfv_config_clone(const crawlfv_config* config, crawlfv_config** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new crawlfv_config{config->value}; });
}

crawlfv_status crawlfv_config_set(crawlfv_config* config, const char* key, const char* value) {
  if (!config) return null_arg("config");
  if (!key) return null_arg("key");
  if (!value) return null_arg("value");
  return guarded([&] {
    crawlfv::Config copy = config->value;
    crawlfv::set_config_value(copy, key, value);
    config->value = std::move(copy);
  });
}

crawlfv_status crawlfv_config_get(const crawlfv_config* config, const char* key, char* buf,
                                  size_t cap, size_t* needed) {
  if (!config) return null_arg("config");
  if (!key) return null_arg("key");
  std::string s;
  if (auto st = guarded([&] { s = crawlfv::get_config_value(config->value, key); }); st != CRAWLFV_OK)
    return st;
  return copy_out(s, buf, cap, needed);
}

crawlfv_status crawlfv_config_to_string(const crawlfv_config* config, char* buf, size_t cap,
                                        size_t* needed) {
  if (!config) return null_arg("config");
  std::string s;
  if (auto st = guarded([&] { s = crawlfv::config_to_string(config->value); }); st != CRAWLFV_OK)
    return st;
  return copy_out(s, buf, cap, needed);
}

crawlfv_status crawlfv_config_validate(const crawlfv_config* config) {
  if (!config) return null_arg("config");
  return guarded([&] { config->value.validate(); });
}

void crawlfv_config_free(crawlfv_config* config) { delete config; }

crawlfv_status crawlfv_sim_create(const crawlfv_config* config, crawlfv_sim** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto ops = crawlfv::CoupledOperators::build(config->value);
    auto state = crawlfv::initial_state(config->value, ops.grid);
    auto row = crawlfv::describe_state(state, ops, 0);
    *out = new crawlfv_sim{config->value, std::move(ops), std::move(state), row};
  });
}

crawlfv_status crawlfv_sim_dims(const crawlfv_sim* sim, int* n_r, int* n_theta) {
  if (!sim) return null_arg("sim");
  if (n_r) *n_r = sim->ops.grid.n_r();
  if (n_theta) *n_theta = sim->ops.grid.n_theta();
  return CRAWLFV_OK;
}

crawlfv_status crawlfv_sim_step(crawlfv_sim* sim, long n_steps) {
  if (!sim) return null_arg("sim");
  if (n_steps < 0)
    return fail(CRAWLFV_ERR_VALIDATION, "BadValue", "n_steps must be nonnegative");
  return guarded([&] {
    for (long i = 0; i < n_steps; ++i) {
      auto res = crawlfv::coupled_step(sim->state, sim->ops, sim->row.step + 1);
      if (!std::isfinite(res.row.mass) || std::abs(res.row.mass) > crawlfv::kDivergenceBound)
        throw crawlfv::Error(crawlfv::ErrorCode::NonFiniteState,
                             "state left the finite range at step " +
                                 std::to_string(res.row.step));
      sim->state = std::move(res.state);
      sim->row = res.row;
    }
  });
}

crawlfv_status crawlfv_sim_info(const crawlfv_sim* sim, crawlfv_step_info* out) {
  if (!sim) return null_arg("sim");
  if (!out) return null_arg("out");
  const auto& r = sim->row;
  *out = crawlfv_step_info{r.step, r.t, r.mass, r.v_x, r.v_y, r.polarization, r.cfl,
                           r.residual_pressure, r.residual_transport};
  return CRAWLFV_OK;
}

crawlfv_status crawlfv_sim_get_state(const crawlfv_sim* sim, double* c_tilde, size_t n_c,
                                     double* mu_tilde, size_t n_mu) {
  if (!sim) return null_arg("sim");
  const auto& c = sim->state.c_tilde.values;
  const auto& mu = sim->state.mu_tilde.values;
  if ((c_tilde && n_c != c.size()) || (mu_tilde && n_mu != mu.size()))
    return fail(CRAWLFV_ERR_VALIDATION, "DimensionMismatch",
                "expected " + std::to_string(c.size()) + " c~ and " + std::to_string(mu.size()) +
                    " mu~ values");
  if (c_tilde) std::copy(c.begin(), c.end(), c_tilde);
  if (mu_tilde) std::copy(mu.begin(), mu.end(), mu_tilde);
  return CRAWLFV_OK;
}

crawlfv_status crawlfv_sim_set_state(crawlfv_sim* sim, const double* c_tilde, size_t n_c,
                                     const double* mu_tilde, size_t n_mu) {
  if (!sim) return null_arg("sim");
  if (!c_tilde) return null_arg("c_tilde");
  if (!mu_tilde) return null_arg("mu_tilde");
  if (n_c != sim->ops.grid.n_cells() || n_mu != static_cast<size_t>(sim->ops.grid.n_theta()))
    return fail(CRAWLFV_ERR_VALIDATION, "DimensionMismatch", "state size does not match the grid");
  return guarded([&] {
    sim->state.c_tilde.values.assign(c_tilde, c_tilde + n_c);
    sim->state.mu_tilde.values.assign(mu_tilde, mu_tilde + n_mu);
    const auto keep = sim->row;
    sim->row = crawlfv::describe_state(sim->state, sim->ops, keep.step);
    sim->row.cfl = keep.cfl;
    sim->row.residual_pressure = keep.residual_pressure;
    sim->row.residual_transport = keep.residual_transport;
  });
}

crawlfv_status crawlfv_sim_mass(const crawlfv_sim* sim, double* mass) {
  if (!sim) return null_arg("sim");
  if (!mass) return null_arg("mass");
  *mass = sim->row.mass;
  return CRAWLFV_OK;
}

crawlfv_status crawlfv_sim_velocity(const crawlfv_sim* sim, double* v_x, double* v_y) {
  if (!sim) return null_arg("sim");
  if (v_x) *v_x = sim->row.v_x;
  if (v_y) *v_y = sim->row.v_y;
  return CRAWLFV_OK;
}

void crawlfv_sim_free(crawlfv_sim* sim) { delete sim; }

crawlfv_status crawlfv_run(const crawlfv_config* config, crawlfv_run_summary* out) {
  if (!config) return null_arg("config");
  return guarded([&] {
    const auto rep = crawlfv::run_simulation(config->value);
    if (out) {
      out->steps = rep.steps;
      out->steady_reached = rep.t_steady.has_value() ? 1 : 0;
      out->t_steady = rep.t_steady.value_or(0.0);
      out->pol_steady = rep.pol_steady.value_or(0.0);
      out->final_polarization = rep.final_polarization;
      out->max_mass_drift = rep.max_mass_drift;
      out->max_cfl = rep.max_cfl;
      out->cfl_warnings = rep.cfl_warnings;
    }
  });
}

crawlfv_status crawlfv_sweep(const crawlfv_config* config, crawlfv_sweep_summary* out) {
  if (!config) return null_arg("config");
  return guarded([&] {
    const auto& c = config->value;
    c.validate();
    const auto records = crawlfv::run_sweep(c, c.dr_list, c.dt_list, c.kon_list, c.sweep_workers);
    const auto dir = crawlfv::resolve_output_dir(c);
    crawlfv::write_sweep_csv(records, dir / "sweep.csv");
    if (out) {
      *out = crawlfv_sweep_summary{records.size(), 0, 0};
      for (const auto& r : records) {
        if (r.status == "ok") ++out->n_ok;
        if (r.status.rfind("failed", 0) == 0 || r.status.rfind("skipped", 0) == 0) ++out->n_failed;
      }
    }
  });
}

crawlfv_status crawlfv_poisson_check(const crawlfv_config* config, crawlfv_boundary_mode mode,
                                     crawlfv_poisson_level* levels, size_t cap,
                                     size_t* n_levels, double* observed_order) {
  if (!config) return null_arg("config");
  if (mode != CRAWLFV_BOUNDARY_PAPER && mode != CRAWLFV_BOUNDARY_FACE)
    return fail(CRAWLFV_ERR_VALIDATION, "BadValue", "unknown boundary mode");
  return guarded([&] {
    const auto& c = config->value;
    const auto study = crawlfv::poisson_convergence(
        c.r_min, c.r_max, c.phys.k_d, c.poisson_levels,
        mode == CRAWLFV_BOUNDARY_FACE ? crawlfv::BoundaryMode::Face : crawlfv::BoundaryMode::Paper);
    if (n_levels) *n_levels = study.levels.size();
    if (levels)
      for (size_t i = 0; i < study.levels.size() && i < cap; ++i)
        levels[i] = crawlfv_poisson_level{study.levels[i].n_r, study.levels[i].dr,
                                          study.levels[i].error};
    if (observed_order) *observed_order = study.observed_order;
  });
}

crawlfv_status crawlfv_mass_check(const crawlfv_config* config, long steps,
                                  crawlfv_mass_summary* out) {
  if (!config) return null_arg("config");
  return guarded([&] {
    const auto& c = config->value;
    const auto m = crawlfv::mass_check(c, steps < 0 ? c.mass_check_steps : steps);
    if (out) *out = crawlfv_mass_summary{m.steps, m.initial_mass, m.final_mass, m.max_relative_drift};
  });
}

}  // extern "C"
