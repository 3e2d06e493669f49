#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace crawlfv {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices within a row are strictly
/// increasing; exact zeros produced by summation are not stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t n_rows, std::size_t n_cols);

  static SparseMatrix identity(std::size_t n);
  /// Duplicate (row, col) pairs are summed.
  static SparseMatrix from_triplets(std::size_t n_rows, std::size_t n_cols,
                                    std::vector<Triplet> triplets);

  /// Incremental row-ordered assembly. Rows must be opened in increasing
  /// order; entries within a row may come in any order and repeat.
  class Builder;

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const noexcept {
    return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const noexcept {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_index() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;
  std::vector<std::size_t> zero_rows() const;
  bool has_zero_row() const { return !zero_rows().empty(); }
  bool all_finite() const;

  std::vector<double> multiply(std::span<const double> x) const;
  /// x^T A
  std::vector<double> left_multiply(std::span<const double> x) const;
  SparseMatrix transpose() const;
  /// A * diag(d)
  SparseMatrix scale_columns(std::span<const double> d) const;
  std::vector<double> diagonal() const;
  bool is_symmetric() const;

  /// alpha * A + beta * B
  static SparseMatrix add(const SparseMatrix& a, double alpha, const SparseMatrix& b, double beta);
  static double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

class SparseMatrix::Builder {
 public:
  Builder(std::size_t n_rows, std::size_t n_cols);
  void add(std::size_t row, std::size_t col, double value);
  SparseMatrix finish() &&;

 private:
  void close_row();

  SparseMatrix m_;
  std::size_t current_row_ = 0;
  std::vector<std::pair<std::size_t, double>> pending_;
};

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x);

enum class SolveMethod { Direct, Iterative };

const char* to_string(SolveMethod method) noexcept;

struct SolveReport {
  int iterations = 0;
  /// ||A x - b|| / ||b|| (absolute when b = 0)
  double residual_norm = 0.0;
  SolveMethod method = SolveMethod::Direct;
};

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

inline constexpr double kDefaultSolveTolerance = 1e-12;

double relative_residual(const SparseMatrix& a, std::span<const double> x,
                         std::span<const double> b);

/// Sparse LU factorization, reusable across right-hand sides. Solving is
/// const and safe to call concurrently.
class LuFactorization {
 public:
  explicit LuFactorization(const SparseMatrix& a);
  ~LuFactorization();
  LuFactorization(LuFactorization&&) noexcept;
  LuFactorization& operator=(LuFactorization&&) noexcept;

  /// Adds iterative refinement steps until the residual meets tol; throws
  /// SolverDiverged if it cannot.
  SolveResult solve(std::span<const double> b, double tol = kDefaultSolveTolerance) const;
  std::size_t size() const noexcept { return a_.n_rows(); }

 private:
  struct Impl;
  SparseMatrix a_;
  std::unique_ptr<Impl> impl_;
};

/// Jacobi-preconditioned conjugate gradients; A must be symmetric positive
/// definite. Iteration cap 10 n.
SolveResult conjugate_gradient(const SparseMatrix& a, std::span<const double> b,
                               double tol = kDefaultSolveTolerance);

/// Jacobi-preconditioned BiCGSTAB for nonsymmetric systems. Iteration cap 10 n.
SolveResult bicgstab(const SparseMatrix& a, std::span<const double> b,
                     double tol = kDefaultSolveTolerance);

/// Direct: sparse LU. Iterative: CG when A is exactly symmetric, BiCGSTAB
/// otherwise.
SolveResult solve_linear(const SparseMatrix& a, std::span<const double> b,
                         double tol = kDefaultSolveTolerance,
                         SolveMethod method = SolveMethod::Direct);

}  // namespace crawlfv
