#include "verification_oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "error.hpp"

namespace crawlfv::oracle {

namespace {

using Dense = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(Dense a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw Error(ErrorCode::SingularMatrix, "dense oracle: singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// Geometry written with the 1-based indices of the scheme.
struct Geometry {
  double dr, dth;
  int nr, nt;
  double r_min, r_max;
  double r(int j) const { return r_min + (j - 0.5) * dr; }       // centre, j = 1..nr
  double rf(int jj) const { return r_min + jj * dr; }            // face j + 1/2 as rf(j)
  double theta(int k) const { return k * dth; }                  // k = 1..nt
  double theta_half(int k) const { return (k + 0.5) * dth; }     // face k + 1/2
  int km(int k) const { return k == 1 ? nt : k - 1; }
  int kp(int k) const { return k == nt ? 1 : k + 1; }
  std::size_t c(int j, int k) const {
    return static_cast<std::size_t>((k - 1) + (j - 1) * nt);
  }
  std::size_t mu(int k) const { return static_cast<std::size_t>(nr * nt + (k - 1)); }
};

Geometry make_geometry(const Annulus& a) {
  if (a.n_r < 2 || a.n_theta < 3)
    throw Error(ErrorCode::TooFewCells, "oracle grid too small");
  if (a.n_r * a.n_theta > kMaxDenseCells)
    throw Error(ErrorCode::GridTooLarge, "dense oracle limited to N_r N_theta <= 200");
  Geometry g;
  g.nr = a.n_r;
  g.nt = a.n_theta;
  g.r_min = a.r_min;
  g.r_max = a.r_max;
  g.dr = (a.r_max - a.r_min) / a.n_r;
  g.dth = 2.0 * std::numbers::pi / a.n_theta;
  return g;
}

double aup(double u, double xm, double xp) {
  if (u > 0) return u * xm;
  if (u < 0) return u * xp;
  return 0.0;
}

double plus(double x) { return x > 0 ? x : 0; }

}  // namespace

double radial_poisson_exact(double r, double r_min, double r_max, double k_d, double p_inner,
                            double p_outer) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw Error(ErrorCode::OutOfDomain, "need 0 < r_min < r_max");
  if (r < r_min || r > r_max) throw Error(ErrorCode::OutOfDomain, "r outside [r_min, r_max]");
  const double a = (p_outer - p_inner - 0.25 * k_d * (r_max * r_max - r_min * r_min)) /
                   std::log(r_max / r_min);
  // Write b through r_min so that p(r_min) is reproduced to rounding.
  return p_inner + 0.25 * k_d * (r * r - r_min * r_min) + a * std::log(r / r_min);
}

std::vector<double> dense_reference_pressure(const std::vector<double>& mu_tilde,
                                             const Annulus& annulus, const Coefficients& coef) {
  const Geometry g = make_geometry(annulus);
  const std::size_t n = static_cast<std::size_t>(g.nr * g.nt);
  Dense a(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  const double dr2 = g.dr * g.dr;
  const double dth2 = g.dth * g.dth;
  const int N = g.nr;
  for (int j = 1; j <= N; ++j) {
    for (int k = 1; k <= g.nt; ++k) {
      const auto row = g.c(j, k);
      // (1/dr^2)[-r_{j-1/2}/r_{j-1} p_{j-1} + (r_{j-1/2}+r_{j+1/2})/r_j p_j - r_{j+1/2}/r_{j+1} p_{j+1}]
      a[row][g.c(j, k)] += (g.rf(j - 1) + g.rf(j)) / (g.r(j) * dr2);
      if (j > 1) a[row][g.c(j - 1, k)] -= g.rf(j - 1) / (g.r(j - 1) * dr2);
      if (j < N) a[row][g.c(j + 1, k)] -= g.rf(j) / (g.r(j + 1) * dr2);
      // (-p_{k-1} + 2 p_k - p_{k+1}) / (r_j^2 dtheta^2)
      const double w = 1.0 / (g.r(j) * g.r(j) * dth2);
      a[row][g.c(j, g.km(k))] -= w;
      a[row][g.c(j, k)] += 2.0 * w;
      a[row][g.c(j, g.kp(k))] -= w;
      rhs[row] = -coef.k_d * g.r(j);
      if (j == N) {
        const double r_ghost = g.r(N) + g.dr;  // r_{N+1}
        const double bracket = plus(1.0 - coef.delta * mu_tilde[k - 1] / g.r(N));
        rhs[row] += g.r(N) * g.rf(N) / (r_ghost * dr2) * bracket;
      }
    }
  }
  return dense_solve(std::move(a), std::move(rhs));
}

State dense_reference_transport_step(const State& s, const Faces& faces, const Annulus& annulus,
                                     const Coefficients& coef, double dt) {
  const Geometry g = make_geometry(annulus);
  const int N = g.nr;
  const std::size_t n = static_cast<std::size_t>((N + 1) * g.nt);
  Dense a(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);

  auto cn = [&](int j, int k) { return s.c_tilde[g.c(j, k)]; };
  // Radial face j + 1/2 (1-based j) at angle k, and angular face k + 1/2 of ring j.
  auto ur = [&](int j, int k) { return faces.radial[static_cast<std::size_t>((k - 1) + j * g.nt)]; };
  auto ua = [&](int j, int k) {
    return faces.angular[static_cast<std::size_t>((k - 1) + (j - 1) * g.nt)];
  };

  const double lam = coef.D * dt / (g.dr * g.dr);
  for (int j = 1; j <= N; ++j) {
    const double rj = g.r(j);
    const double ang = coef.D * dt / (rj * rj * g.dth * g.dth);
    const double adv = dt / (rj * rj * g.dth);
    for (int k = 1; k <= g.nt; ++k) {
      const auto row = g.c(j, k);
      a[row][row] += 1.0;
      if (j > 1) {
        a[row][row] += lam * g.rf(j - 1) / rj;
        a[row][g.c(j - 1, k)] -= lam * g.rf(j - 1) / g.r(j - 1);
      }
      if (j < N) {
        a[row][row] += lam * g.rf(j) / rj;
        a[row][g.c(j + 1, k)] -= lam * g.rf(j) / g.r(j + 1);
      } else {
        a[row][row] += coef.k_on * dt / g.dr;
        a[row][g.mu(k)] -= coef.k_off * dt / g.dr;
      }
      a[row][g.c(j, g.km(k))] -= ang;
      a[row][row] += 2.0 * ang;
      a[row][g.c(j, g.kp(k))] -= ang;

      double b = cn(j, k);
      if (j > 1) b += dt / g.dr * aup(ur(j - 1, k), cn(j - 1, k), cn(j, k));
      if (j < N) b -= dt / g.dr * aup(ur(j, k), cn(j, k), cn(j + 1, k));
      b += adv * (aup(ua(j, g.km(k)), cn(j, g.km(k)), cn(j, k)) -
                  aup(ua(j, k), cn(j, k), cn(j, g.kp(k))));
      rhs[row] = b;
    }
  }
  for (int k = 1; k <= g.nt; ++k) {
    const auto row = g.mu(k);
    a[row][g.c(N, k)] = -dt * coef.k_on;
    a[row][row] = 1.0 + dt * coef.k_off;
    rhs[row] = s.mu_tilde[k - 1];
  }

  const auto x = dense_solve(std::move(a), std::move(rhs));
  State out;
  out.c_tilde.assign(x.begin(), x.begin() + N * g.nt);
  out.mu_tilde.assign(x.begin() + N * g.nt, x.end());
  return out;
}

State dense_reference_step(const State& s, const Annulus& annulus, const Coefficients& coef,
                           double dt) {
  const Geometry g = make_geometry(annulus);
  const auto p = dense_reference_pressure(s.mu_tilde, annulus, coef);

  double vx = 0.0, vy = 0.0;
  for (int k = 1; k <= g.nt; ++k) {
    const double bracket = plus(1.0 - coef.delta * s.mu_tilde[k - 1] / g.r_max);
    vx += bracket * std::cos(g.theta(k));
    vy += bracket * std::sin(g.theta(k));
  }
  vx *= coef.gamma * g.dth;
  vy *= coef.gamma * g.dth;

  Faces f;
  f.radial.assign(static_cast<std::size_t>((g.nr + 1) * g.nt), 0.0);
  f.angular.assign(static_cast<std::size_t>(g.nr * g.nt), 0.0);
  for (int k = 1; k <= g.nt; ++k) {
    const double vr = vx * std::cos(g.theta(k)) + vy * std::sin(g.theta(k));
    for (int j = 1; j < g.nr; ++j) {
      const double grad = (p[g.c(j + 1, k)] / g.r(j + 1) - p[g.c(j, k)] / g.r(j)) / g.dr;
      f.radial[static_cast<std::size_t>((k - 1) + j * g.nt)] = -grad - vr;
    }
  }
  for (int j = 1; j <= g.nr; ++j)
    for (int k = 1; k <= g.nt; ++k) {
      const double th = g.theta_half(k);
      const double vth = g.r(j) * (-vx * std::sin(th) + vy * std::cos(th));
      const double grad = (p[g.c(j, g.kp(k))] - p[g.c(j, k)]) / (g.r(j) * g.dth);
      f.angular[static_cast<std::size_t>((k - 1) + (j - 1) * g.nt)] = -grad - vth;
    }
  return dense_reference_transport_step(s, f, annulus, coef, dt);
}

double initial_mass_quadrature(const std::string& preset, double r_min, double r_max,
                               int refinement) {
  if (refinement < 1) throw Error(ErrorCode::InvalidArgument, "refinement must be positive");
  const double hr = (r_max - r_min) / refinement;
  const double ht = 2.0 * std::numbers::pi / refinement;
  double bulk = 0.0, bound = 0.0;
  for (int it = 0; it < refinement; ++it) {
    const double th = (it + 0.5) * ht;
    for (int ir = 0; ir < refinement; ++ir) {
      const double r = r_min + (ir + 0.5) * hr;
      if (preset == "polarised")
        bulk += (std::cos(th - std::numbers::pi) + 1.0) * hr * ht;
      else if (preset == "uniform")
        bulk += r * hr * ht;
      else
        throw Error(ErrorCode::InvalidArgument, "unknown preset '" + preset + "'");
    }
    if (preset == "polarised") bound += 0.5 * (std::cos(th - std::numbers::pi) + 1.0) * ht;
  }
  return bulk + bound;
}

}  // namespace crawlfv::oracle
