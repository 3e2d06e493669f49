#include "sweep_harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "cli_io.hpp"
#include "error.hpp"
#include "simulation_driver.hpp"

namespace crawlfv {

namespace {

struct Job {
  double k_on;
  double dr;
  double dt;
};

std::string run_dir_name(const Job& job) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "kon_%.6g_dr_%.6g_dt_%.6g", job.k_on, job.dr, job.dt);
  return buf;
}

SweepRecord execute(const Config& base, const Job& job) {
  SweepRecord rec;
  rec.k_on = job.k_on;
  rec.dr = job.dr;
  rec.dt = job.dt;
  const auto n_r = radial_cells_for_step(base.r_min, base.r_max, job.dr);
  if (!n_r) {
    rec.status = "skipped: dr does not divide R - R_min";
    return rec;
  }
  rec.n_r = *n_r;

  Config cfg = base;
  cfg.n_r = *n_r;
  cfg.dt = job.dt;
  cfg.phys.k_on = job.k_on;
  cfg.t_max = base.sweep_t_max;
  cfg.write_outputs = base.write_outputs && base.sweep_write_runs;
  const auto run_dir = resolve_output_dir(base) / "sweep" / run_dir_name(job);
  if (cfg.write_outputs) {
    cfg.output_dir = run_dir.string();
    // Keep per-run time series near 0.1 time-unit resolution.
    cfg.timeseries_every =
        std::max(base.timeseries_every, static_cast<int>(std::lround(0.1 / job.dt)));
    cfg.snapshot_every = 0;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const RunReport report = run_simulation(cfg, run_dir);
    rec.t_steady = report.t_steady;
    rec.pol_steady = report.pol_steady;
    rec.final_polarization = report.final_polarization;
    rec.mass_drift = report.max_mass_drift;
    rec.status = report.t_steady ? "ok" : "no_steady_state";
  } catch (const std::exception& e) {
    rec.status = std::string("failed: ") + e.what();
  }
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

std::optional<int> radial_cells_for_step(double r_min, double r_max, double dr) {
  if (!(dr > 0.0) || !(r_max > r_min)) return std::nullopt;
  const double span = r_max - r_min;
  const double n = std::round(span / dr);
  if (n < 2.0 || std::abs(n * dr - span) > 1e-9 * span) return std::nullopt;
  return static_cast<int>(n);
}

std::vector<SweepRecord> run_sweep(const Config& base, const std::vector<double>& dr_list,
                                   const std::vector<double>& dt_list,
                                   const std::vector<double>& kon_list, int workers) {
  std::vector<Job> jobs;
  for (double kon : kon_list)
    for (double dr : dr_list)
      for (double dt : dt_list) jobs.push_back({kon, dr, dt});

  std::vector<SweepRecord> records(jobs.size());
  unsigned n_workers = workers > 0 ? static_cast<unsigned>(workers)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) records[i] = execute(base, jobs[i]);
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    if (a.k_on != b.k_on) return a.k_on < b.k_on;
    if (a.dr != b.dr) return a.dr < b.dr;
    return a.dt < b.dt;
  });
  return records;
}

void write_sweep_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("none");
  };
  f << "k_on,dr,dt,n_r,t_steady,pol_steady,final_polarization,mass_drift,wall_time,status\n";
  for (const auto& r : records) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    f << format_number(r.k_on) << ',' << format_number(r.dr) << ',' << format_number(r.dt) << ','
      << r.n_r << ',' << opt(r.t_steady) << ',' << opt(r.pol_steady) << ','
      << format_number(r.final_polarization) << ',' << format_number(r.mass_drift) << ','
      << format_number(r.wall_time) << ',' << status << '\n';
  }
  if (!f) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace crawlfv
