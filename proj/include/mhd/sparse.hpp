#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mhd {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed-row sparse matrix. Column indices are strictly increasing within a row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  /// Duplicate entries are summed. Exact zeros produced by summation are kept; only
  /// drop_zeros() removes them.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal_entries() const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
  /// y = A^T x
  void multiply_transpose(std::span<const double> x, std::span<double> y) const;
  std::vector<double> transpose_times(std::span<const double> x) const;

  SparseMatrix transpose() const;
  SparseMatrix scaled(double s) const;
  /// Rows and columns selected by index lists, renumbered in list order.
  SparseMatrix submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;
  SparseMatrix drop_zeros(double tol = 0.0) const;

  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
/// alpha * A + beta * B
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0, double beta = 1.0);
/// Max-norm of A - A^T.
double symmetry_defect(const SparseMatrix& a);

/// Dense block vectors and small kernels used by the solvers.
namespace vec {
double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double max_abs(std::span<const double> a);
/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
std::vector<double> linear_combination(double a, std::span<const double> x, double b, std::span<const double> y);
}  // namespace vec

}  // namespace mhd
