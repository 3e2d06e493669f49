#include "sparse_linalg.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"

namespace crawlfv {

namespace {

void check_dims(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(got));
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> inverse_diagonal(const SparseMatrix& a) {
  auto d = a.diagonal();
  for (double& x : d) x = (x != 0.0) ? 1.0 / x : 1.0;
  return d;
}

std::size_t iteration_cap(std::size_t n) { return std::max<std::size_t>(10 * n, 10); }

}  // namespace

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), row_ptr_(n_rows + 1, 0) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  Builder b(n, n);
  for (std::size_t i = 0; i < n; ++i) b.add(i, i, 1.0);
  return std::move(b).finish();
}

SparseMatrix SparseMatrix::from_triplets(std::size_t n_rows, std::size_t n_cols,
                                         std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& x, const Triplet& y) {
    return x.row < y.row;
  });
  Builder b(n_rows, n_cols);
  for (const auto& t : triplets) b.add(t.row, t.col, t.value);
  return std::move(b).finish();
}

SparseMatrix::Builder::Builder(std::size_t n_rows, std::size_t n_cols) : m_(n_rows, n_cols) {
  m_.row_ptr_.assign(1, 0);
}

void SparseMatrix::Builder::add(std::size_t row, std::size_t col, double value) {
  if (row >= m_.n_rows_ || col >= m_.n_cols_)
    throw Error(ErrorCode::IndexOutOfRange,
                "entry (" + std::to_string(row) + ", " + std::to_string(col) + ")");
  if (row < current_row_)
    throw Error(ErrorCode::InvalidArgument, "rows must be assembled in increasing order");
  while (current_row_ < row) close_row();
  pending_.emplace_back(col, value);
}

void SparseMatrix::Builder::close_row() {
  std::sort(pending_.begin(), pending_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t i = 0;
  while (i < pending_.size()) {
    const std::size_t col = pending_[i].first;
    double sum = 0.0;
    for (; i < pending_.size() && pending_[i].first == col; ++i) sum += pending_[i].second;
    if (sum != 0.0) {
      m_.cols_.push_back(col);
      m_.values_.push_back(sum);
    }
  }
  pending_.clear();
  m_.row_ptr_.push_back(m_.cols_.size());
  ++current_row_;
}

SparseMatrix SparseMatrix::Builder::finish() && {
  while (current_row_ < m_.n_rows_) close_row();
  return std::move(m_);
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_rows_ || j >= n_cols_)
    throw Error(ErrorCode::IndexOutOfRange,
                "entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<std::size_t> SparseMatrix::zero_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_rows_; ++i)
    if (row_ptr_[i] == row_ptr_[i + 1]) out.push_back(i);
  return out;
}

bool SparseMatrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  check_dims(n_cols_, x.size(), "matvec");
  std::vector<double> y(n_rows_, 0.0);
  for (std::size_t i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[cols_[p]];
    y[i] = s;
  }
  return y;
}

std::vector<double> SparseMatrix::left_multiply(std::span<const double> x) const {
  check_dims(n_rows_, x.size(), "left matvec");
  std::vector<double> y(n_cols_, 0.0);
  for (std::size_t i = 0; i < n_rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) y[cols_[p]] += x[i] * values_[p];
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t i = 0; i < n_rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      t.push_back({cols_[p], i, values_[p]});
  return from_triplets(n_cols_, n_rows_, std::move(t));
}

SparseMatrix SparseMatrix::scale_columns(std::span<const double> d) const {
  check_dims(n_cols_, d.size(), "column scaling");
  SparseMatrix out = *this;
  for (std::size_t p = 0; p < out.values_.size(); ++p) out.values_[p] *= d[out.cols_[p]];
  return out;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(std::min(n_rows_, n_cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

bool SparseMatrix::is_symmetric() const {
  if (n_rows_ != n_cols_) return false;
  return max_abs_difference(*this, transpose()) == 0.0;
}

SparseMatrix SparseMatrix::add(const SparseMatrix& a, double alpha, const SparseMatrix& b,
                               double beta) {
  check_dims(a.n_rows_, b.n_rows_, "matrix sum rows");
  check_dims(a.n_cols_, b.n_cols_, "matrix sum cols");
  Builder out(a.n_rows_, a.n_cols_);
  for (std::size_t i = 0; i < a.n_rows_; ++i) {
    for (std::size_t p = a.row_ptr_[i]; p < a.row_ptr_[i + 1]; ++p)
      out.add(i, a.cols_[p], alpha * a.values_[p]);
    for (std::size_t p = b.row_ptr_[i]; p < b.row_ptr_[i + 1]; ++p)
      out.add(i, b.cols_[p], beta * b.values_[p]);
  }
  return std::move(out).finish();
}

double SparseMatrix::max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix d = add(a, 1.0, b, -1.0);
  double m = 0.0;
  for (double v : d.values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x) {
  return a.multiply(x);
}

const char* to_string(SolveMethod method) noexcept {
  return method == SolveMethod::Direct ? "direct" : "iterative";
}

double relative_residual(const SparseMatrix& a, std::span<const double> x,
                         std::span<const double> b) {
  auto r = a.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  const double nb = norm2(b);
  const double nr = norm2(r);
  return nb > 0.0 ? nr / nb : nr;
}

// ---------------------------------------------------------------------------
// Direct

struct LuFactorization::Impl {
  Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor>, Eigen::COLAMDOrdering<int>> lu;
};

LuFactorization::LuFactorization(const SparseMatrix& a) : a_(a), impl_(std::make_unique<Impl>()) {
  if (a.n_rows() != a.n_cols())
    throw Error(ErrorCode::DimensionMismatch, "LU requires a square matrix");
  if (const auto zr = a.zero_rows(); !zr.empty())
    throw Error(ErrorCode::SingularMatrix,
                "structurally zero row " + std::to_string(zr.front()));
  const auto n = static_cast<Eigen::Index>(a.n_rows());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(a.nnz());
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t p = 0; p < cols.size(); ++p)
      t.emplace_back(static_cast<int>(i), static_cast<int>(cols[p]), vals[p]);
  }
  Eigen::SparseMatrix<double, Eigen::ColMajor> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  impl_->lu.analyzePattern(m);
  impl_->lu.factorize(m);
  if (impl_->lu.info() != Eigen::Success)
    throw Error(ErrorCode::SingularMatrix, "LU factorization failed: " + impl_->lu.lastErrorMessage());
}

LuFactorization::~LuFactorization() = default;
LuFactorization::LuFactorization(LuFactorization&&) noexcept = default;
LuFactorization& LuFactorization::operator=(LuFactorization&&) noexcept = default;

SolveResult LuFactorization::solve(std::span<const double> b, double tol) const {
  check_dims(a_.n_rows(), b.size(), "LU solve");
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  Eigen::VectorXd x = impl_->lu.solve(rhs);
  SolveResult out;
  out.x.assign(x.data(), x.data() + n);
  out.report.method = SolveMethod::Direct;
  out.report.residual_norm = relative_residual(a_, out.x, b);
  for (int refine = 0; refine < 3 && !(out.report.residual_norm <= tol); ++refine) {
    auto r = a_.multiply(out.x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    Eigen::Map<const Eigen::VectorXd> rr(r.data(), n);
    Eigen::VectorXd dx = impl_->lu.solve(rr);
    for (Eigen::Index i = 0; i < n; ++i) out.x[static_cast<std::size_t>(i)] += dx[i];
    out.report.residual_norm = relative_residual(a_, out.x, b);
  }
  if (!(out.report.residual_norm <= tol))
    throw Error(ErrorCode::SolverDiverged,
                "direct solve residual " + std::to_string(out.report.residual_norm) +
                    " above tolerance");
  return out;
}

// ---------------------------------------------------------------------------
// Iterative

SolveResult conjugate_gradient(const SparseMatrix& a, std::span<const double> b, double tol) {
  check_dims(a.n_rows(), b.size(), "CG");
  const std::size_t n = b.size();
  const auto minv = inverse_diagonal(a);
  const double nb = norm2(b);
  SolveResult out;
  out.x.assign(n, 0.0);
  out.report.method = SolveMethod::Iterative;
  if (nb == 0.0) return out;

  const std::size_t cap = iteration_cap(n);
  std::size_t it = 0;
  std::vector<double> r(b.begin(), b.end()), z(n), p(n), ap;
  // Restart from the true residual whenever the recurrence claims convergence.
  while (it < cap) {
    for (std::size_t i = 0; i < n; ++i) z[i] = minv[i] * r[i];
    p = z;
    double rz = dot(r, z);
    while (it < cap && norm2(r) > tol * nb) {
      ap = a.multiply(p);
      const double pap = dot(p, ap);
      if (!(pap > 0.0)) break;
      const double alpha = rz / pap;
      for (std::size_t i = 0; i < n; ++i) {
        out.x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      for (std::size_t i = 0; i < n; ++i) z[i] = minv[i] * r[i];
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
      ++it;
    }
    out.report.residual_norm = relative_residual(a, out.x, b);
    if (out.report.residual_norm <= tol) break;
    r = a.multiply(out.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    ++it;
  }
  out.report.iterations = static_cast<int>(it);
  if (!(out.report.residual_norm <= tol))
    throw Error(ErrorCode::SolverDiverged,
                "CG hit the iteration cap (" + std::to_string(cap) + ") with residual " +
                    std::to_string(out.report.residual_norm));
  return out;
}

SolveResult bicgstab(const SparseMatrix& a, std::span<const double> b, double tol) {
  check_dims(a.n_rows(), b.size(), "BiCGSTAB");
  const std::size_t n = b.size();
  const auto minv = inverse_diagonal(a);
  const double nb = norm2(b);
  SolveResult out;
  out.x.assign(n, 0.0);
  out.report.method = SolveMethod::Iterative;
  if (nb == 0.0) return out;

  const std::size_t cap = iteration_cap(n);
  std::size_t it = 0;
  std::vector<double> r(n), r0(n), p(n), v(n), s(n), t(n), ph(n), sh(n);
  while (it < cap) {
    r = a.multiply(out.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    r0 = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    while (it < cap && norm2(r) > tol * nb) {
      const double rho_new = dot(r0, r);
      if (rho_new == 0.0 || omega == 0.0) break;
      const double beta = (rho_new / rho) * (alpha / omega);
      rho = rho_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
      for (std::size_t i = 0; i < n; ++i) ph[i] = minv[i] * p[i];
      v = a.multiply(ph);
      const double r0v = dot(r0, v);
      if (r0v == 0.0) break;
      alpha = rho / r0v;
      for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
      for (std::size_t i = 0; i < n; ++i) sh[i] = minv[i] * s[i];
      t = a.multiply(sh);
      const double tt = dot(t, t);
      omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        out.x[i] += alpha * ph[i] + omega * sh[i];
        r[i] = s[i] - omega * t[i];
      }
      ++it;
    }
    out.report.residual_norm = relative_residual(a, out.x, b);
    if (out.report.residual_norm <= tol) break;
    ++it;
  }
  out.report.iterations = static_cast<int>(it);
  if (!(out.report.residual_norm <= tol))
    throw Error(ErrorCode::SolverDiverged,
                "BiCGSTAB hit the iteration cap (" + std::to_string(cap) + ") with residual " +
                    std::to_string(out.report.residual_norm));
  return out;
}

SolveResult solve_linear(const SparseMatrix& a, std::span<const double> b, double tol,
                         SolveMethod method) {
  if (a.n_rows() != a.n_cols())
    throw Error(ErrorCode::DimensionMismatch, "solve_linear requires a square matrix");
  check_dims(a.n_rows(), b.size(), "solve_linear");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (method == SolveMethod::Direct) return LuFactorization(a).solve(b, tol);
  if (a.is_symmetric()) return conjugate_gradient(a, b, tol);
  return bicgstab(a, b, tol);
}

}  // namespace crawlfv
