#pragma once

#include <optional>
#include <vector>

#include "model.hpp"
#include "polar_grid.hpp"
#include "sparse_linalg.hpp"

namespace crawlfv {

/// Scaled pressure p~ = r p on every cell.
struct PressureField {
  std::vector<double> values;

  /// Unscaled pressure p = p~ / r at cell (j, k).
  double pressure(const PolarGrid& g, int j, int k) const {
    return values[g.index(j, k)] / g.r_center(j);
  }
};

/// Operator L of the finite-volume Poisson problem: L P = R where
/// P(k + j N_theta) = p~(j, k). Radial couplings are -r_{j+-1/2} / (r_{j+-1} dr^2),
/// angular couplings -1 / (r_j^2 dtheta^2) with periodic wrap. The outer and
/// inner rows follow the Dirichlet closure selected by `mode`.
SparseMatrix assemble_pressure_operator(const PolarGrid& grid, BoundaryMode mode);

/// Outer Dirichlet bracket at angular cell k: [1 - delta mu~_k / r_ref]_+ with
/// r_ref = r_{N_r} in paper mode and R in face mode.
double pressure_boundary_bracket(const PolarGrid& grid, double mu_tilde, double delta,
                                 BoundaryMode mode);

/// Right-hand side: -k_d r_j everywhere plus the outer Dirichlet term on the
/// last ring.
std::vector<double> assemble_pressure_rhs(const PolarGrid& grid, const BoundaryField& mu,
                                          const PhysParams& params, BoundaryMode mode);

/// Assembles the operator once and reuses its factorization for every
/// right-hand side. The iterative path runs CG on the symmetric matrix
/// L diag(r), i.e. in the unscaled variable p = p~ / r.
class PressureSolver {
 public:
  PressureSolver(const PolarGrid& grid, BoundaryMode mode,
                 SolveMethod method = SolveMethod::Direct,
                 double tol = kDefaultSolveTolerance);

  PressureField solve(const BoundaryField& mu, const PhysParams& params,
                      SolveReport* report = nullptr) const;

  const SparseMatrix& op() const noexcept { return op_; }
  BoundaryMode mode() const noexcept { return mode_; }

 private:
  PolarGrid grid_;
  BoundaryMode mode_;
  SolveMethod method_;
  double tol_;
  SparseMatrix op_;
  std::vector<double> radius_;  // r_j at every cell
  SparseMatrix symmetric_op_;   // op_ * diag(radius_)
  std::optional<LuFactorization> lu_;
};

PressureField solve_pressure(const PolarGrid& grid, const BoundaryField& mu,
                             const PhysParams& params, BoundaryMode mode,
                             double tol = kDefaultSolveTolerance,
                             SolveMethod method = SolveMethod::Direct);

}  // namespace crawlfv
