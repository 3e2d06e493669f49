#include "pressure_poisson.hpp"

#include <string>

#include "error.hpp"

namespace crawlfv {

namespace {

// Flux distance between the last/first cell centre and the Dirichlet datum.
double boundary_gap(const PolarGrid& g, BoundaryMode mode) {
  return mode == BoundaryMode::Paper ? g.dr() : 0.5 * g.dr();
}

}  // namespace

SparseMatrix assemble_pressure_operator(const PolarGrid& g, BoundaryMode mode) {
  const int nr = g.n_r();
  const int nt = g.n_theta();
  const double dr2 = g.dr() * g.dr();
  const double dth2 = g.dtheta() * g.dtheta();
  const double gap = boundary_gap(g, mode);

  SparseMatrix::Builder b(g.n_cells(), g.n_cells());
  for (int j = 0; j < nr; ++j) {
    const double rj = g.r_center(j);
    const double r_in = g.r_face(j);
    const double r_out = g.r_face(j + 1);
    const double ang = 1.0 / (rj * rj * dth2);
    for (int k = 0; k < nt; ++k) {
      const std::size_t row = g.index(j, k);
      double diag = 2.0 * ang;
      if (j > 0) {
        diag += r_in / (rj * dr2);
        b.add(row, g.index(j - 1, k), -r_in / (g.r_center(j - 1) * dr2));
      } else {
        diag += r_in / (rj * gap * g.dr());
      }
      if (j < nr - 1) {
        diag += r_out / (rj * dr2);
        b.add(row, g.index(j + 1, k), -r_out / (g.r_center(j + 1) * dr2));
      } else {
        diag += r_out / (rj * gap * g.dr());
      }
      b.add(row, g.index(j, g.wrap(k - 1)), -ang);
      b.add(row, g.index(j, g.wrap(k + 1)), -ang);
      b.add(row, row, diag);
    }
  }
  return std::move(b).finish();
}

double pressure_boundary_bracket(const PolarGrid& g, double mu_tilde, double delta,
                                 BoundaryMode mode) {
  const double r_ref = mode == BoundaryMode::Paper ? g.r_center(g.n_r() - 1) : g.r_max();
  return positive_part(1.0 - delta * mu_tilde / r_ref);
}

std::vector<double> assemble_pressure_rhs(const PolarGrid& g, const BoundaryField& mu,
                                          const PhysParams& params, BoundaryMode mode) {
  if (mu.values.size() != static_cast<std::size_t>(g.n_theta()))
    throw Error(ErrorCode::DimensionMismatch,
                "boundary field has " + std::to_string(mu.values.size()) +
                    " entries, grid has N_theta=" + std::to_string(g.n_theta()));
  const int nr = g.n_r();
  std::vector<double> rhs(g.n_cells());
  for (int j = 0; j < nr; ++j)
    for (int k = 0; k < g.n_theta(); ++k) rhs[g.index(j, k)] = -params.k_d * g.r_center(j);

  // Outer flux r_{N+1/2} (p_out - p~_N / r_N) / gap, divided once more by dr.
  const double r_last = g.r_center(nr - 1);
  const double r_out = g.r_face(nr);
  const double gap = boundary_gap(g, mode);
  for (int k = 0; k < g.n_theta(); ++k) {
    const double bracket = pressure_boundary_bracket(g, mu.values[k], params.delta, mode);
    // Paper mode places the ghost p~ = r_N [.]_+ at r_{N+1} = R + dr/2.
    const double p_out = mode == BoundaryMode::Paper
                             ? r_last * bracket / (g.r_max() + 0.5 * g.dr())
                             : bracket;
    rhs[g.index(nr - 1, k)] += r_out * p_out / (gap * g.dr());
  }
  return rhs;
}

PressureSolver::PressureSolver(const PolarGrid& grid, BoundaryMode mode, SolveMethod method,
                               double tol)
    : grid_(grid), mode_(mode), method_(method), tol_(tol),
      op_(assemble_pressure_operator(grid, mode)) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  radius_.resize(grid.n_cells());
  for (int j = 0; j < grid.n_r(); ++j)
    for (int k = 0; k < grid.n_theta(); ++k) radius_[grid.index(j, k)] = grid.r_center(j);
  if (method == SolveMethod::Direct)
    lu_.emplace(op_);
  else
    symmetric_op_ = op_.scale_columns(radius_);
}

PressureField PressureSolver::solve(const BoundaryField& mu, const PhysParams& params,
                                    SolveReport* report) const {
  const auto rhs = assemble_pressure_rhs(grid_, mu, params, mode_);
  PressureField out;
  if (lu_) {
    auto res = lu_->solve(rhs, tol_);
    out.values = std::move(res.x);
    if (report) *report = res.report;
    return out;
  }
  auto res = conjugate_gradient(symmetric_op_, rhs, tol_);
  out.values = std::move(res.x);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= radius_[i];
  res.report.residual_norm = relative_residual(op_, out.values, rhs);
  if (report) *report = res.report;
  return out;
}

PressureField solve_pressure(const PolarGrid& grid, const BoundaryField& mu,
                             const PhysParams& params, BoundaryMode mode, double tol,
                             SolveMethod method) {
  return PressureSolver(grid, mode, method, tol).solve(mu, params);
}

}  // namespace crawlfv
