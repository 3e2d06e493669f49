#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli_io.hpp"
#include "error.hpp"
#include "test_support.hpp"

using namespace crawlfv;

namespace {

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(f, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error";
  return Error(ErrorCode::InvalidArgument, "");
}

}  // namespace

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const Config c = parse_config_string("");
  EXPECT_EQ(c, Config{});
  EXPECT_EQ(c.r_max, 1.5);
  EXPECT_EQ(c.r_min, 0.5);
  EXPECT_EQ(c.phys.k_off, 1.0);
  EXPECT_EQ(c.phys.D, 1.0);
  EXPECT_EQ(c.phys.k_d, 1.0);
  EXPECT_EQ(c.phys.delta, 2.0);
  EXPECT_EQ(c.phys.gamma, 2.0);
  EXPECT_EQ(c.initial, "polarised");
}

TEST(ParseConfig, SingleOverride) {
  Config expected;
  expected.phys.k_on = 3.0;
  EXPECT_EQ(parse_config_string("k_on = 3"), expected);
}

TEST(ParseConfig, UnknownKeyReportsLine) {
  const auto e = error_of([] { parse_config_string("k_onn = 3"); });
  EXPECT_EQ(e.code(), ErrorCode::UnknownKey);
  EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  const auto e2 = error_of([] { parse_config_string("# comment\n\nk_on = abc\n"); });
  EXPECT_EQ(e2.code(), ErrorCode::BadValue);
  EXPECT_NE(std::string(e2.what()).find("line 3"), std::string::npos);
  EXPECT_EQ(error_of([] { parse_config_string("k_on 3"); }).code(), ErrorCode::BadValue);
  EXPECT_EQ(error_of([] { parse_config_string("N_r = 2.5"); }).code(), ErrorCode::BadValue);
  EXPECT_EQ(error_of([] { parse_config_string("boundary_mode = ghost"); }).code(),
            ErrorCode::BadValue);
}

TEST(ParseConfig, CommentsListsAndEnums) {
  const Config c = parse_config_string(
      "# sweep\nN_r = 20 # inline\ndr_list = 2e-2, 2.5e-2\nkon_list=\nboundary_mode = face\n"
      "pressure_solver = iterative\nwrite_outputs = false\npoisson_levels = 8,16\n");
  EXPECT_EQ(c.n_r, 20);
  EXPECT_EQ(c.dr_list, (std::vector<double>{2e-2, 2.5e-2}));
  EXPECT_TRUE(c.kon_list.empty());
  EXPECT_EQ(c.boundary_mode, BoundaryMode::Face);
  EXPECT_EQ(c.pressure_solver, SolveMethod::Iterative);
  EXPECT_FALSE(c.write_outputs);
  EXPECT_EQ(c.poisson_levels, (std::vector<int>{8, 16}));
}

TEST(ParseConfig, MissingFile) {
  EXPECT_EQ(error_of([] { parse_config("/nonexistent/crawlfv.cfg"); }).code(),
            ErrorCode::MissingFile);
}

TEST(ParseConfig, FileAndStringAgree) {
  const auto dir = testkit::scratch_dir("cfg_file");
  {
    std::ofstream f(dir / "a.cfg");
    f << "k_on = 0.1\nR = 1\nN_r = 50\n";
  }
  EXPECT_EQ(parse_config(dir / "a.cfg"), parse_config_string("k_on = 0.1\nR = 1\nN_r = 50\n"));
}

TEST(ConfigEcho, RoundTripIsIdentity) {
  testkit::Gen gen(71);
  for (int trial = 0; trial < 30; ++trial) {
    Config c;
    c.r_min = gen.uniform(0.1, 1.0);
    c.r_max = c.r_min + gen.uniform(0.1, 2.0);
    c.n_r = gen.integer(2, 200);
    c.phys.k_on = gen.uniform(0, 5);
    c.phys.delta = gen.uniform(0, 5);
    c.dt = gen.uniform(1e-5, 1e-1);
    c.eps_ss = gen.uniform(1e-12, 1e-3);
    c.boundary_mode = trial % 2 ? BoundaryMode::Face : BoundaryMode::Paper;
    c.dr_list = gen.vector(static_cast<std::size_t>(gen.integer(0, 4)), 1e-3, 1e-1);
    c.output_dir = "run_" + std::to_string(trial);
    c.write_outputs = trial % 3 == 0;
    EXPECT_EQ(parse_config_string(config_to_string(c)), c);
    for (const auto& key : config_keys()) {
      Config d;
      set_config_value(d, key, get_config_value(c, key));
      EXPECT_EQ(get_config_value(d, key), get_config_value(c, key)) << key;
    }
  }
}

TEST(ConfigKeys, UnknownKeyInSetAndGet) {
  Config c;
  EXPECT_EQ(error_of([&] { set_config_value(c, "nope", "1"); }).code(), ErrorCode::UnknownKey);
  EXPECT_EQ(error_of([&] { get_config_value(c, "nope"); }).code(), ErrorCode::UnknownKey);
}

TEST(OutputDir, EnvironmentOverride) {
  Config c;
  c.output_dir = "from_config";
  ::unsetenv("CRAWLFV_OUTDIR");
  EXPECT_EQ(resolve_output_dir(c), std::filesystem::path("from_config"));
  ::setenv("CRAWLFV_OUTDIR", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_output_dir(c), std::filesystem::path("/tmp/from_env"));
  ::unsetenv("CRAWLFV_OUTDIR");
}

TEST(Snapshot, ColumnsAndScaling) {
  const auto g = PolarGrid::build(0.5, 1.5, 3, 4);
  const auto dir = testkit::scratch_dir("snap_cols");
  SimState s;
  s.c_tilde.values.resize(g.n_cells());
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 4; ++k) s.c_tilde.values[g.index(j, k)] = g.r_center(j);
  s.mu_tilde.values.assign(4, 0.0);
  write_snapshot(s, g, 7, dir);
  const auto field = lines_of(dir / "field_7.csv");
  ASSERT_EQ(field.size(), 13u);
  EXPECT_EQ(field[0], "j,k,r,theta,c_tilde,c");
  for (std::size_t i = 1; i < field.size(); ++i)
    EXPECT_NEAR(std::stod(split(field[i])[5]), 1.0, 1e-15);
  EXPECT_EQ(split(field[1])[0], "1");
  const auto mu = lines_of(dir / "mu_7.csv");
  ASSERT_EQ(mu.size(), 5u);
  EXPECT_EQ(mu[0], "k,theta,mu_tilde,mu");
  EXPECT_EQ(std::stod(split(mu[1])[3]), 0.0);
}

TEST(Snapshot, RoundTripBitExact) {
  testkit::Gen gen(72);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = gen.grid(6, 10);
    const auto s = gen.state(g, -1e3, 1e3);
    const auto dir = testkit::scratch_dir("snap_rt");
    write_snapshot(s, g, 3, dir);
    const auto back = read_snapshot(dir / "field_3.csv", dir / "mu_3.csv", g);
    EXPECT_EQ(back.c_tilde.values, s.c_tilde.values);
    EXPECT_EQ(back.mu_tilde.values, s.mu_tilde.values);
  }
}

TEST(Snapshot, ReadRejectsBadTables) {
  const auto g = PolarGrid::build(0.5, 1.5, 3, 4);
  const auto dir = testkit::scratch_dir("snap_bad");
  SimState s;
  s.c_tilde.values.assign(12, 1.0);
  s.mu_tilde.values.assign(4, 1.0);
  write_snapshot(s, g, 0, dir);
  const auto other = PolarGrid::build(0.5, 1.5, 4, 4);
  EXPECT_EQ(error_of([&] { read_snapshot(dir / "field_0.csv", dir / "mu_0.csv", other); }).code(),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(error_of([&] { read_snapshot(dir / "nope.csv", dir / "mu_0.csv", g); }).code(),
            ErrorCode::MissingFile);
  EXPECT_EQ(error_of([&] { read_snapshot(dir / "mu_0.csv", dir / "mu_0.csv", g); }).code(),
            ErrorCode::BadValue);
}

TEST(Timeseries, HeaderOnlyAndOneRow) {
  const auto dir = testkit::scratch_dir("ts");
  write_timeseries({}, dir);
  auto lines = lines_of(dir / "timeseries.csv");
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], "step,t,mass,v_x,v_y,polarization,cfl,residual_pressure,residual_transport");
  write_timeseries({DiagnosticsRow{}}, dir);
  EXPECT_EQ(lines_of(dir / "timeseries.csv").size(), 2u);
}

TEST(Timeseries, PolarizationColumnAndStride) {
  testkit::Gen gen(73);
  Diagnostics d;
  for (long i = 0; i < 11; ++i) {
    DiagnosticsRow r;
    r.step = i;
    r.t = 0.1 * i;
    r.v_x = gen.uniform(-1, 1);
    r.v_y = gen.uniform(-1, 1);
    r.polarization = std::hypot(r.v_x, r.v_y);
    d.push_back(r);
  }
  const auto dir = testkit::scratch_dir("ts_stride");
  write_timeseries(d, dir, 4);
  const auto lines = lines_of(dir / "timeseries.csv");
  ASSERT_EQ(lines.size(), 5u);  // steps 0, 4, 8 and the final 10
  EXPECT_EQ(split(lines.back())[0], "10");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto c = split(lines[i]);
    EXPECT_NEAR(std::stod(c[5]), std::hypot(std::stod(c[3]), std::stod(c[4])), 1e-15);
  }
}

TEST(Meta, EchoAndResults) {
  const auto dir = testkit::scratch_dir("meta");
  Config c;
  c.phys.k_on = 3.0;
  write_meta(c, dir);
  RunReport r;
  r.steps = 12;
  r.t_steady = 0.5;
  r.cfl_warnings = 2;
  append_meta_results(r, dir);
  std::ifstream f(dir / "meta.txt");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("# ", 0), 0u);
  EXPECT_EQ(parse_config_string(text), c);  // results are comment lines
  EXPECT_NE(text.find("# result: steps = 12"), std::string::npos);
  EXPECT_NE(text.find("# warning:"), std::string::npos);
}

TEST(FormatNumber, FullPrecision) {
  EXPECT_EQ(format_number(0.1), "1.00000000000000006e-01");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}
