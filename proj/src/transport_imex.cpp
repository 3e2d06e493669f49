#include "transport_imex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace crawlfv {

namespace {

void check_state(const SimState& s, const PolarGrid& g) {
  if (s.c_tilde.values.size() != g.n_cells() ||
      s.mu_tilde.values.size() != static_cast<std::size_t>(g.n_theta()))
    throw Error(ErrorCode::DimensionMismatch, "state does not match the grid");
}

void check_faces(const FaceVelocityField& u, const PolarGrid& g) {
  if (u.n_r() != g.n_r() || u.n_theta() != g.n_theta())
    throw Error(ErrorCode::DimensionMismatch, "face velocities do not match the grid");
}

double pos(double u) { return u > 0.0 ? u : 0.0; }
double neg(double u) { return u < 0.0 ? u : 0.0; }

// I + dt/dr^2 A
SparseMatrix implicit_matrix(const SparseMatrix& a, double dt, double dr) {
  return SparseMatrix::add(SparseMatrix::identity(a.n_rows()), 1.0, a, dt / (dr * dr));
}

std::vector<double> explicit_rhs(const SimState& s, const FaceVelocityField& u,
                                 const PolarGrid& g, double dt) {
  auto e = stack_state(s);
  const auto b = assemble_advection_operator(u, g);
  const auto be = b.multiply(e);
  const double f = dt / g.dr();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= f * be[i];
  return e;
}

}  // namespace

std::vector<double> stack_state(const SimState& s) {
  std::vector<double> e;
  e.reserve(s.c_tilde.values.size() + s.mu_tilde.values.size());
  e.insert(e.end(), s.c_tilde.values.begin(), s.c_tilde.values.end());
  e.insert(e.end(), s.mu_tilde.values.begin(), s.mu_tilde.values.end());
  return e;
}

void unstack_state(std::span<const double> e, SimState& s) {
  const std::size_t nc = s.c_tilde.values.size();
  if (e.size() != nc + s.mu_tilde.values.size())
    throw Error(ErrorCode::DimensionMismatch, "stacked vector does not match the state");
  std::copy(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nc), s.c_tilde.values.begin());
  std::copy(e.begin() + static_cast<std::ptrdiff_t>(nc), e.end(), s.mu_tilde.values.begin());
}

SparseMatrix assemble_diffusion_operator(const PolarGrid& g, const PhysParams& p) {
  const int nr = g.n_r();
  const int nt = g.n_theta();
  const double dr = g.dr();
  const double aniso = (dr * dr) / (g.dtheta() * g.dtheta());
  const std::size_t n = g.n_cells() + static_cast<std::size_t>(nt);
  const std::size_t mu0 = g.n_cells();

  SparseMatrix::Builder b(n, n);
  for (int j = 0; j < nr; ++j) {
    const double rj = g.r_center(j);
    const double ang = p.D * aniso / (rj * rj);
    for (int k = 0; k < nt; ++k) {
      const std::size_t row = g.index(j, k);
      double diag = 2.0 * ang;
      if (j > 0) {
        diag += p.D * g.r_face(j) / rj;
        b.add(row, g.index(j - 1, k), -p.D * g.r_face(j) / g.r_center(j - 1));
      }
      if (j < nr - 1) {
        diag += p.D * g.r_face(j + 1) / rj;
        b.add(row, g.index(j + 1, k), -p.D * g.r_face(j + 1) / g.r_center(j + 1));
      } else {
        diag += dr * p.k_on;
        b.add(row, mu0 + static_cast<std::size_t>(k), -dr * p.k_off);
      }
      b.add(row, g.index(j, g.wrap(k - 1)), -ang);
      b.add(row, g.index(j, g.wrap(k + 1)), -ang);
      b.add(row, row, diag);
    }
  }
  for (int k = 0; k < nt; ++k) {
    const std::size_t row = mu0 + static_cast<std::size_t>(k);
    b.add(row, g.index(nr - 1, k), -dr * dr * p.k_on);
    b.add(row, row, dr * dr * p.k_off);
  }
  return std::move(b).finish();
}

SparseMatrix assemble_advection_operator(const FaceVelocityField& u, const PolarGrid& g) {
  check_faces(u, g);
  const int nr = g.n_r();
  const int nt = g.n_theta();
  const std::size_t n = g.n_cells() + static_cast<std::size_t>(nt);
  const double ratio = g.dr() / g.dtheta();

  SparseMatrix::Builder b(n, n);
  for (int j = 0; j < nr; ++j) {
    const double rj = g.r_center(j);
    const double s = ratio / (rj * rj);
    for (int k = 0; k < nt; ++k) {
      const std::size_t row = g.index(j, k);
      if (j < nr - 1) {
        const double uf = u.radial(j + 1, k);
        b.add(row, row, pos(uf));
        b.add(row, g.index(j + 1, k), neg(uf));
      }
      if (j > 0) {
        const double uf = u.radial(j, k);
        b.add(row, g.index(j - 1, k), -pos(uf));
        b.add(row, row, -neg(uf));
      }
      const int km = g.wrap(k - 1);
      const int kp = g.wrap(k + 1);
      const double up = u.angular(j, k);
      const double um = u.angular(j, km);
      b.add(row, row, s * pos(up));
      b.add(row, g.index(j, kp), s * neg(up));
      b.add(row, g.index(j, km), -s * pos(um));
      b.add(row, row, -s * neg(um));
    }
  }
  return std::move(b).finish();
}

double advective_cfl(const FaceVelocityField& u, const PolarGrid& g, double dt) {
  check_faces(u, g);
  double worst = 0.0;
  for (int j = 0; j < g.n_r(); ++j) {
    const double rj = g.r_center(j);
    for (int k = 0; k < g.n_theta(); ++k) {
      double radial = 0.0;
      if (j < g.n_r() - 1) radial += pos(u.radial(j + 1, k));
      if (j > 0) radial -= neg(u.radial(j, k));
      const double angular = pos(u.angular(j, k)) - neg(u.angular(j, g.wrap(k - 1)));
      worst = std::max(worst, radial / g.dr() + angular / (rj * rj * g.dtheta()));
    }
  }
  return dt * worst;
}

TransportStepper::TransportStepper(const PolarGrid& grid, const PhysParams& params, double dt,
                                   double tol)
    : grid_(grid),
      dt_(dt),
      tol_(tol),
      diffusion_(assemble_diffusion_operator(grid, params)),
      lu_(implicit_matrix(diffusion_, dt, grid.dr())) {
  if (!(dt > 0.0)) throw Error(ErrorCode::BadValue, "dt must be positive");
}

SimState TransportStepper::step(const SimState& state, const FaceVelocityField& u,
                                StepReport* report) const {
  check_state(state, grid_);
  const auto rhs = explicit_rhs(state, u, grid_, dt_);
  auto res = lu_.solve(rhs, tol_);
  SimState out = state;
  unstack_state(res.x, out);
  out.t = state.t + dt_;
  if (report) {
    report->solve = res.report;
    report->cfl = advective_cfl(u, grid_, dt_);
  }
  return out;
}

SimState imex_step(const SimState& state, const SparseMatrix& diffusion_op,
                   const FaceVelocityField& u, double dt, const PolarGrid& grid, double tol,
                   StepReport* report) {
  if (!(dt > 0.0)) throw Error(ErrorCode::BadValue, "dt must be positive");
  check_state(state, grid);
  const std::size_t n = grid.n_cells() + static_cast<std::size_t>(grid.n_theta());
  if (diffusion_op.n_rows() != n || diffusion_op.n_cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "diffusion operator does not match the grid");
  const auto rhs = explicit_rhs(state, u, grid, dt);
  auto res = LuFactorization(implicit_matrix(diffusion_op, dt, grid.dr())).solve(rhs, tol);
  SimState out = state;
  unstack_state(res.x, out);
  out.t = state.t + dt;
  if (report) {
    report->solve = res.report;
    report->cfl = advective_cfl(u, grid, dt);
  }
  return out;
}

}  // namespace crawlfv
