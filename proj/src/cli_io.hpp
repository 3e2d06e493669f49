#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "simulation_driver.hpp"

namespace crawlfv {

/// Flat `key = value` text; `#` starts a comment. Unknown keys and
/// unparsable values are errors carrying the 1-based line number. Keys not
/// present keep their defaults.
Config parse_config(const std::filesystem::path& path);
Config parse_config_string(std::string_view text);

/// Sets one key from its textual value (same rules as the file parser).
void set_config_value(Config& config, std::string_view key, std::string_view value);
/// Textual value of one key, formatted so that set_config_value round-trips.
std::string get_config_value(const Config& config, std::string_view key);
const std::vector<std::string>& config_keys();

/// Full resolved configuration in parse_config syntax.
std::string config_to_string(const Config& config);

/// Output directory: $CRAWLFV_OUTDIR when set, else config.output_dir.
std::filesystem::path resolve_output_dir(const Config& config);

/// Full-precision scientific notation used by every CSV.
std::string format_number(double x);

void write_meta(const Config& config, const std::filesystem::path& dir);
void append_meta_results(const RunReport& report, const std::filesystem::path& dir);

/// field_<step>.csv (j,k,r,theta,c_tilde,c) and mu_<step>.csv
/// (k,theta,mu_tilde,mu); indices are written 1-based.
void write_snapshot(const SimState& state, const PolarGrid& grid, long step,
                    const std::filesystem::path& dir);

/// Reads a snapshot pair back into a state on `grid`.
SimState read_snapshot(const std::filesystem::path& field_csv, const std::filesystem::path& mu_csv,
                       const PolarGrid& grid);

/// timeseries.csv with columns
/// step,t,mass,v_x,v_y,polarization,cfl,residual_pressure,residual_transport.
/// Rows are subsampled by `every`; the last row is always kept.
void write_timeseries(const Diagnostics& diagnostics, const std::filesystem::path& dir,
                      int every = 1);

}  // namespace crawlfv
