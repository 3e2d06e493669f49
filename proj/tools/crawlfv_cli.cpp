// Command-line front end; talks to the solver only through the C API.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crawlfv/crawlfv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

int exit_code(crawlfv_status s) {
  switch (s) {
    case CRAWLFV_OK: return kExitOk;
    case CRAWLFV_ERR_NULL:
    case CRAWLFV_ERR_VALIDATION: return kExitValidation;
    case CRAWLFV_ERR_SOLVER: return kExitSolver;
    default: return kExitOther;
  }
}

int report(crawlfv_status s) {
  if (s != CRAWLFV_OK)
    std::fprintf(stderr, "error (%s, %s): %s\n", crawlfv_status_string(s),
                 crawlfv_last_error_kind(), crawlfv_last_error());
  return exit_code(s);
}

// Owns a config handle for the lifetime of one command.
struct ConfigHandle {
  crawlfv_config* ptr = nullptr;
  ~ConfigHandle() { crawlfv_config_free(ptr); }
};

crawlfv_status load(const std::string& path, const std::vector<std::string>& overrides,
                    ConfigHandle& h) {
  if (auto s = crawlfv_config_load(path.c_str(), &h.ptr); s != CRAWLFV_OK) return s;
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return CRAWLFV_ERR_VALIDATION;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(kv.substr(0, eq));
    const std::string value = trim(kv.substr(eq + 1));
    if (auto s = crawlfv_config_set(h.ptr, key.c_str(), value.c_str()); s != CRAWLFV_OK) return s;
  }
  return crawlfv_config_validate(h.ptr);
}

std::string get(const ConfigHandle& h, const char* key) {
  size_t n = 0;
  crawlfv_config_get(h.ptr, key, nullptr, 0, &n);
  std::string s(n, '\0');
  crawlfv_config_get(h.ptr, key, s.data(), n, nullptr);
  s.resize(n ? n - 1 : 0);
  return s;
}

std::string output_dir(const ConfigHandle& h) {
  if (const char* env = std::getenv("CRAWLFV_OUTDIR"); env && *env) return env;
  return get(h, "output_dir");
}

int cmd_run(const std::string& path, const std::vector<std::string>& sets) {
  ConfigHandle h;
  if (auto s = load(path, sets, h); s != CRAWLFV_OK) return report(s);
  crawlfv_run_summary r{};
  if (auto s = crawlfv_run(h.ptr, &r); s != CRAWLFV_OK) return report(s);
  std::printf("steps               %ld\n", r.steps);
  if (r.steady_reached) {
    std::printf("t_steady            %.10g\n", r.t_steady);
    std::printf("pol_steady          %.10e\n", r.pol_steady);
  } else {
    std::printf("t_steady            none\n");
  }
  std::printf("final_polarization  %.10e\n", r.final_polarization);
  std::printf("max_mass_drift      %.3e\n", r.max_mass_drift);
  std::printf("max_cfl             %.4f\n", r.max_cfl);
  if (r.cfl_warnings > 0)
    std::fprintf(stderr,
                 "warning: advective CFL number above 1 on %ld steps; nonnegativity is not "
                 "guaranteed\n",
                 r.cfl_warnings);
  std::printf("output              %s\n", output_dir(h).c_str());
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::vector<std::string>& sets) {
  ConfigHandle h;
  if (auto s = load(path, sets, h); s != CRAWLFV_OK) return report(s);
  crawlfv_sweep_summary r{};
  if (auto s = crawlfv_sweep(h.ptr, &r); s != CRAWLFV_OK) return report(s);
  std::printf("runs %zu, steady %zu, failed or skipped %zu\n", r.n_runs, r.n_ok, r.n_failed);
  std::printf("wrote %s/sweep.csv\n", output_dir(h).c_str());
  return kExitOk;
}

int cmd_poisson(const std::string& path, const std::vector<std::string>& sets,
                const std::string& mode) {
  ConfigHandle h;
  if (auto s = load(path, sets, h); s != CRAWLFV_OK) return report(s);
  std::vector<crawlfv_boundary_mode> modes;
  if (mode == "paper" || mode == "both") modes.push_back(CRAWLFV_BOUNDARY_PAPER);
  if (mode == "face" || mode == "both") modes.push_back(CRAWLFV_BOUNDARY_FACE);
  for (auto m : modes) {
    std::vector<crawlfv_poisson_level> levels(64);
    size_t n = 0;
    double order = 0.0;
    if (auto s = crawlfv_poisson_check(h.ptr, m, levels.data(), levels.size(), &n, &order);
        s != CRAWLFV_OK)
      return report(s);
    std::printf("mode %s\n", m == CRAWLFV_BOUNDARY_PAPER ? "paper" : "face");
    std::printf("  %6s %12s %14s\n", "N_r", "dr", "max error");
    for (size_t i = 0; i < n && i < levels.size(); ++i)
      std::printf("  %6d %12.5e %14.6e\n", levels[i].n_r, levels[i].dr, levels[i].error);
    std::printf("  observed order %.4f\n", order);
  }
  return kExitOk;
}

int cmd_mass(const std::string& path, const std::vector<std::string>& sets, long steps) {
  ConfigHandle h;
  if (auto s = load(path, sets, h); s != CRAWLFV_OK) return report(s);
  crawlfv_mass_summary r{};
  if (auto s = crawlfv_mass_check(h.ptr, steps, &r); s != CRAWLFV_OK) return report(s);
  std::printf("steps               %ld\n", r.steps);
  std::printf("initial_mass        %.17g\n", r.initial_mass);
  std::printf("final_mass          %.17g\n", r.final_mass);
  std::printf("max_relative_drift  %.3e\n", r.max_relative_drift);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume crawling-cell solver on an annulus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(crawlfv_version()));

  std::string path;
  std::vector<std::string> sets;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", path, "key = value configuration file")->required();
    sub->add_option("--set", sets, "override a key, e.g. --set k_on=3")->take_all();
  };

  auto* run = app.add_subcommand("run", "simulate one configuration");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "run the dr_list x dt_list x kon_list product");
  add_common(sweep);
  auto* poisson = app.add_subcommand("poisson-check", "pressure convergence study");
  add_common(poisson);
  std::string mode = "both";
  poisson->add_option("--mode", mode, "paper, face or both")
      ->check(CLI::IsMember({"paper", "face", "both"}));
  auto* mass = app.add_subcommand("mass-check", "run N coupled steps and report mass drift");
  add_common(mass);
  long steps = -1;
  mass->add_option("--steps", steps, "number of steps (default: mass_check_steps)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  if (*run) return cmd_run(path, sets);
  if (*sweep) return cmd_sweep(path, sets);
  if (*poisson) return cmd_poisson(path, sets, mode);
  if (*mass) return cmd_mass(path, sets, steps);
  return kExitOther;
}
