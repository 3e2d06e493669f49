#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "polar_grid.hpp"
#include "transport_imex.hpp"
#include "velocity_field.hpp"

namespace crawlfv::testkit {

// Seeded generator for property tests; every test fixes its own seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::vector<double> vector(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  PolarGrid grid(int max_r = 6, int max_theta = 10) {
    const double r_min = uniform(0.1, 1.0);
    const double r_max = r_min + uniform(0.2, 1.5);
    return PolarGrid::build(r_min, r_max, integer(2, max_r), integer(3, max_theta));
  }

  SimState state(const PolarGrid& g, double lo = 0.0, double hi = 2.0) {
    SimState s;
    s.c_tilde.values = vector(g.n_cells(), lo, hi);
    s.mu_tilde.values = vector(static_cast<std::size_t>(g.n_theta()), lo, hi);
    return s;
  }

  FaceVelocityField faces(const PolarGrid& g, double scale) {
    FaceVelocityField u(g.n_r(), g.n_theta());
    for (auto& x : u.radial_values()) x = uniform(-scale, scale);
    for (auto& x : u.angular_values()) x = uniform(-scale, scale);
    return u;
  }

 private:
  std::mt19937_64 rng_;
};

// Shift every angular index by s cells: out[k + s] = in[k].
inline std::vector<double> rotate_rings(const std::vector<double>& v, int n_theta, int s) {
  std::vector<double> out(v.size());
  const std::size_t rings = v.size() / static_cast<std::size_t>(n_theta);
  for (std::size_t j = 0; j < rings; ++j)
    for (int k = 0; k < n_theta; ++k) {
      const int to = ((k + s) % n_theta + n_theta) % n_theta;
      out[j * n_theta + to] = v[j * n_theta + k];
    }
  return out;
}

inline SimState rotate(const SimState& st, const PolarGrid& g, int s) {
  SimState out = st;
  out.c_tilde.values = rotate_rings(st.c_tilde.values, g.n_theta(), s);
  out.mu_tilde.values = rotate_rings(st.mu_tilde.values, g.n_theta(), s);
  return out;
}

inline FaceVelocityField rotate(const FaceVelocityField& u, int s) {
  FaceVelocityField out = u;
  out.radial_values() = rotate_rings(u.radial_values(), u.n_theta(), s);
  out.angular_values() = rotate_rings(u.angular_values(), u.n_theta(), s);
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? m : 1e300;
}

// Fresh scratch directory under $CRAWLFV_TEST_TMP (or the system temp dir).
inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* base = std::getenv("CRAWLFV_TEST_TMP");
  std::filesystem::path root = base ? std::filesystem::path(base)
                                    : std::filesystem::temp_directory_path() / "crawlfv_tests";
  auto dir = root / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace crawlfv::testkit
