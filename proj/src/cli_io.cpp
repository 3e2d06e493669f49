#include "cli_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <cstdint>
#include <sstream>

#include "error.hpp"

namespace crawlfv {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw Error(ErrorCode::BadValue, "empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw Error(ErrorCode::BadValue, "not a number: '" + s + "'");
  return v;
}

int parse_int(std::string_view text) {
  const std::string s = trim(text);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || v < INT32_MIN ||
      v > INT32_MAX)
    throw Error(ErrorCode::BadValue, "not an integer: '" + s + "'");
  return static_cast<int>(v);
}

bool parse_bool(std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw Error(ErrorCode::BadValue, "not a boolean: '" + s + "'");
}

template <class T, class F>
std::vector<T> parse_list(std::string_view text, F parse_one) {
  std::vector<T> out;
  const std::string s = trim(text);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_one(std::string_view(s).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>)
      out += fmt_g(v[i]);
    else
      out += std::to_string(v[i]);
  }
  return out;
}

struct KeyHandler {
  std::function<void(Config&, std::string_view)> set;
  std::function<std::string(const Config&)> get;
};

#define CRAWLFV_DOUBLE(name, member)                                             \
  {name,                                                                        \
   {[](Config& c, std::string_view v) { c.member = parse_double(v); },          \
    [](const Config& c) { return fmt_g(c.member); }}}
#define CRAWLFV_INT(name, member)                                                \
  {name,                                                                        \
   {[](Config& c, std::string_view v) { c.member = parse_int(v); },             \
    [](const Config& c) { return std::to_string(c.member); }}}
#define CRAWLFV_BOOL(name, member)                                               \
  {name,                                                                        \
   {[](Config& c, std::string_view v) { c.member = parse_bool(v); },            \
    [](const Config& c) { return std::string(c.member ? "true" : "false"); }}}
#define CRAWLFV_STRING(name, member)                                             \
  {name,                                                                        \
   {[](Config& c, std::string_view v) { c.member = trim(v); },                  \
    [](const Config& c) { return c.member; }}}
#define CRAWLFV_DLIST(name, member)                                              \
  {name,                                                                        \
   {[](Config& c, std::string_view v) { c.member = parse_list<double>(v, parse_double); }, \
    [](const Config& c) { return join(c.member); }}}

// Ordered as written to meta.txt.
const std::vector<std::pair<std::string, KeyHandler>>& handlers() {
  static const std::vector<std::pair<std::string, KeyHandler>> table = {
      CRAWLFV_DOUBLE("R_min", r_min),
      CRAWLFV_DOUBLE("R", r_max),
      CRAWLFV_INT("N_r", n_r),
      CRAWLFV_INT("N_theta", n_theta),
      CRAWLFV_DOUBLE("k_d", phys.k_d),
      CRAWLFV_DOUBLE("delta", phys.delta),
      CRAWLFV_DOUBLE("gamma", phys.gamma),
      CRAWLFV_DOUBLE("D", phys.D),
      CRAWLFV_DOUBLE("k_on", phys.k_on),
      CRAWLFV_DOUBLE("k_off", phys.k_off),
      CRAWLFV_DOUBLE("dt", dt),
      CRAWLFV_DOUBLE("t_max", t_max),
      {"boundary_mode",
       {[](Config& c, std::string_view v) { c.boundary_mode = boundary_mode_from_string(trim(v)); },
        [](const Config& c) { return std::string(to_string(c.boundary_mode)); }}},
      CRAWLFV_DOUBLE("solver_tol", solver_tol),
      {"pressure_solver",
       {[](Config& c, std::string_view v) {
          const auto s = trim(v);
          if (s == "direct")
            c.pressure_solver = SolveMethod::Direct;
          else if (s == "iterative")
            c.pressure_solver = SolveMethod::Iterative;
          else
            throw Error(ErrorCode::BadValue, "pressure_solver must be 'direct' or 'iterative'");
        },
        [](const Config& c) { return std::string(to_string(c.pressure_solver)); }}},
      CRAWLFV_DOUBLE("T_ss", t_ss),
      CRAWLFV_DOUBLE("eps_ss", eps_ss),
      CRAWLFV_STRING("initial", initial),
      CRAWLFV_STRING("initial_field", initial_field),
      CRAWLFV_STRING("initial_mu", initial_mu),
      CRAWLFV_STRING("output_dir", output_dir),
      CRAWLFV_BOOL("write_outputs", write_outputs),
      CRAWLFV_INT("snapshot_every", snapshot_every),
      CRAWLFV_INT("timeseries_every", timeseries_every),
      CRAWLFV_DLIST("dr_list", dr_list),
      CRAWLFV_DLIST("dt_list", dt_list),
      CRAWLFV_DLIST("kon_list", kon_list),
      CRAWLFV_DOUBLE("sweep_t_max", sweep_t_max),
      CRAWLFV_INT("sweep_workers", sweep_workers),
      CRAWLFV_BOOL("sweep_write_runs", sweep_write_runs),
      {"poisson_levels",
       {[](Config& c, std::string_view v) { c.poisson_levels = parse_list<int>(v, parse_int); },
        [](const Config& c) { return join(c.poisson_levels); }}},
      CRAWLFV_INT("mass_check_steps", mass_check_steps),
  };
  return table;
}

#undef CRAWLFV_DOUBLE
#undef CRAWLFV_INT
#undef CRAWLFV_BOOL
#undef CRAWLFV_STRING
#undef CRAWLFV_DLIST

const KeyHandler* find_handler(std::string_view key) {
  for (const auto& [name, h] : handlers())
    if (name == key) return &h;
  return nullptr;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::out | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  return f;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, h] : handlers()) k.push_back(name);
    return k;
  }();
  return keys;
}

void set_config_value(Config& config, std::string_view key, std::string_view value) {
  const KeyHandler* h = find_handler(trim(key));
  if (!h) throw Error(ErrorCode::UnknownKey, "unknown key '" + trim(key) + "'");
  h->set(config, value);
}

std::string get_config_value(const Config& config, std::string_view key) {
  const KeyHandler* h = find_handler(trim(key));
  if (!h) throw Error(ErrorCode::UnknownKey, "unknown key '" + trim(key) + "'");
  return h->get(config);
}

Config parse_config_string(std::string_view text) {
  Config config;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string::npos)
      throw Error(ErrorCode::BadValue, where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const KeyHandler* h = find_handler(key);
    if (!h) throw Error(ErrorCode::UnknownKey, where + ": unknown key '" + key + "'");
    try {
      h->set(config, std::string_view(line).substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::BadValue, where + " (" + key + "): " + e.what());
    }
  }
  return config;
}

Config parse_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::MissingFile, "cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_string(ss.str());
}

std::string config_to_string(const Config& config) {
  std::string out;
  for (const auto& [name, h] : handlers()) out += name + " = " + h.get(config) + "\n";
  return out;
}

fs::path resolve_output_dir(const Config& config) {
  if (const char* env = std::getenv("CRAWLFV_OUTDIR"); env && *env) return fs::path(env);
  return fs::path(config.output_dir);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", x);
  return buf;
}

void write_meta(const Config& config, const fs::path& dir) {
  ensure_dir(dir);
  auto f = open_out(dir / "meta.txt");
  f << "# crawlfv resolved configuration\n" << config_to_string(config);
  if (!f) throw Error(ErrorCode::IoError, "failed writing meta.txt");
}

void append_meta_results(const RunReport& report, const fs::path& dir) {
  std::ofstream f(dir / "meta.txt", std::ios::app);
  if (!f) throw Error(ErrorCode::IoError, "cannot append to meta.txt");
  f << "# result: steps = " << report.steps << "\n";
  f << "# result: t_steady = "
    << (report.t_steady ? format_number(*report.t_steady) : std::string("none")) << "\n";
  f << "# result: pol_steady = "
    << (report.pol_steady ? format_number(*report.pol_steady) : std::string("none")) << "\n";
  f << "# result: final_polarization = " << format_number(report.final_polarization) << "\n";
  f << "# result: max_mass_drift = " << format_number(report.max_mass_drift) << "\n";
  f << "# result: max_cfl = " << format_number(report.max_cfl) << "\n";
  if (report.cfl_warnings > 0)
    f << "# warning: advective CFL number above 1 on " << report.cfl_warnings
      << " steps; nonnegativity is not guaranteed\n";
}

void write_snapshot(const SimState& state, const PolarGrid& g, long step, const fs::path& dir) {
  if (state.c_tilde.values.size() != g.n_cells() ||
      state.mu_tilde.values.size() != static_cast<std::size_t>(g.n_theta()))
    throw Error(ErrorCode::DimensionMismatch, "snapshot state does not match the grid");
  ensure_dir(dir);
  {
    auto f = open_out(dir / ("field_" + std::to_string(step) + ".csv"));
    f << "j,k,r,theta,c_tilde,c\n";
    for (int j = 0; j < g.n_r(); ++j) {
      const double r = g.r_center(j);
      for (int k = 0; k < g.n_theta(); ++k) {
        const double ct = state.c_tilde.values[g.index(j, k)];
        f << (j + 1) << ',' << (k + 1) << ',' << format_number(r) << ','
          << format_number(g.theta_center(k)) << ',' << format_number(ct) << ','
          << format_number(ct / r) << '\n';
      }
    }
    if (!f) throw Error(ErrorCode::IoError, "failed writing field snapshot");
  }
  auto f = open_out(dir / ("mu_" + std::to_string(step) + ".csv"));
  f << "k,theta,mu_tilde,mu\n";
  for (int k = 0; k < g.n_theta(); ++k) {
    const double m = state.mu_tilde.values[k];
    f << (k + 1) << ',' << format_number(g.theta_center(k)) << ',' << format_number(m) << ','
      << format_number(m / g.r_max()) << '\n';
  }
  if (!f) throw Error(ErrorCode::IoError, "failed writing mu snapshot");
}

SimState read_snapshot(const fs::path& field_csv, const fs::path& mu_csv, const PolarGrid& g) {
  SimState s;
  s.c_tilde.values.assign(g.n_cells(), 0.0);
  s.mu_tilde.values.assign(static_cast<std::size_t>(g.n_theta()), 0.0);

  auto read_table = [](const fs::path& path, const std::vector<std::string>& header,
                       auto&& on_row) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::MissingFile, "cannot read " + path.string());
    std::string line;
    if (!std::getline(f, line) || split_csv(line) != header)
      throw Error(ErrorCode::BadValue, path.string() + ": unexpected header");
    int line_no = 1;
    std::size_t rows = 0;
    while (std::getline(f, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto cells = split_csv(line);
      if (cells.size() != header.size())
        throw Error(ErrorCode::BadValue,
                    path.string() + ": line " + std::to_string(line_no) + " has wrong width");
      on_row(cells, line_no);
      ++rows;
    }
    return rows;
  };

  std::vector<char> seen(g.n_cells(), 0);
  const auto n_field = read_table(
      field_csv, {"j", "k", "r", "theta", "c_tilde", "c"},
      [&](const std::vector<std::string>& c, int line_no) {
        const int j = parse_int(c[0]) - 1;
        const int k = parse_int(c[1]) - 1;
        if (j < 0 || j >= g.n_r() || k < 0 || k >= g.n_theta())
          throw Error(ErrorCode::IndexOutOfRange,
                      field_csv.string() + ": line " + std::to_string(line_no));
        s.c_tilde.values[g.index(j, k)] = parse_double(c[4]);
        seen[g.index(j, k)] = 1;
      });
  if (n_field != g.n_cells() || std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorCode::DimensionMismatch, field_csv.string() + " does not cover the grid");

  std::vector<char> seen_mu(static_cast<std::size_t>(g.n_theta()), 0);
  const auto n_mu = read_table(mu_csv, {"k", "theta", "mu_tilde", "mu"},
                               [&](const std::vector<std::string>& c, int line_no) {
                                 const int k = parse_int(c[0]) - 1;
                                 if (k < 0 || k >= g.n_theta())
                                   throw Error(ErrorCode::IndexOutOfRange,
                                               mu_csv.string() + ": line " +
                                                   std::to_string(line_no));
                                 s.mu_tilde.values[k] = parse_double(c[2]);
                                 seen_mu[k] = 1;
                               });
  if (n_mu != static_cast<std::size_t>(g.n_theta()) ||
      std::find(seen_mu.begin(), seen_mu.end(), 0) != seen_mu.end())
    throw Error(ErrorCode::DimensionMismatch, mu_csv.string() + " does not cover the boundary");
  return s;
}

void write_timeseries(const Diagnostics& diagnostics, const fs::path& dir, int every) {
  ensure_dir(dir);
  auto f = open_out(dir / "timeseries.csv");
  f << "step,t,mass,v_x,v_y,polarization,cfl,residual_pressure,residual_transport\n";
  const int stride = std::max(every, 1);
  for (std::size_t i = 0; i < diagnostics.size(); ++i) {
    if (i % static_cast<std::size_t>(stride) != 0 && i + 1 != diagnostics.size()) continue;
    const auto& r = diagnostics[i];
    f << r.step << ',' << format_number(r.t) << ',' << format_number(r.mass) << ','
      << format_number(r.v_x) << ',' << format_number(r.v_y) << ','
      << format_number(r.polarization) << ',' << format_number(r.cfl) << ','
      << format_number(r.residual_pressure) << ',' << format_number(r.residual_transport)
      << '\n';
  }
  if (!f) throw Error(ErrorCode::IoError, "failed writing timeseries.csv");
}

}  // namespace crawlfv
