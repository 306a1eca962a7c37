#include "mhd/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhd {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw std::invalid_argument("SparseMatrix::from_triplets: entry out of range");
    }
  }
  // Stable sort keeps the accumulation order of duplicates deterministic.
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  SparseMatrix m(rows, cols);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t k = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (k < triplets.size() && triplets[k].row == r) {
      const std::size_t c = triplets[k].col;
      double sum = 0.0;
      while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
        sum += triplets[k].value;
        ++k;
      }
      m.col_idx_.push_back(c);
      m.values_.push_back(sum);
    }
    m.row_ptr_[r + 1] = m.col_idx_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<double> ones(n, 1.0);
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  SparseMatrix m(d.size(), d.size());
  m.col_idx_.resize(d.size());
  m.values_.assign(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    m.col_idx_[i] = i;
    m.row_ptr_[i + 1] = i + 1;
  }
  return m;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<double> SparseMatrix::diagonal_entries() const {
  std::vector<double> d(std::min(rows_, cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[i] = s;
  }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

void SparseMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
  if (x.size() != rows_ || y.size() != cols_) {
    throw std::invalid_argument("SparseMatrix::multiply_transpose: size mismatch");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) y[col_idx_[k]] += values_[k] * xi;
  }
}

std::vector<double> SparseMatrix::transpose_times(std::span<const double> x) const {
  std::vector<double> y(cols_);
  multiply_transpose(x, y);
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  std::vector<std::size_t> count(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++count[c + 1];
  for (std::size_t c = 0; c < cols_; ++c) count[c + 1] += count[c];
  t.row_ptr_ = count;
  t.col_idx_.resize(nnz());
  t.values_.resize(nnz());
  std::vector<std::size_t> next(count.begin(), count.end() - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t pos = next[col_idx_[k]]++;
      t.col_idx_[pos] = i;
      t.values_[pos] = values_[k];
    }
  }
  return t;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix m = *this;
  for (double& v : m.values_) v *= s;
  return m;
}

SparseMatrix SparseMatrix::submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const {
  std::vector<std::size_t> col_map(cols_, static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < col_ids.size(); ++j) {
    if (col_ids[j] >= cols_) throw std::invalid_argument("submatrix: column index out of range");
    col_map[col_ids[j]] = j;
  }
  SparseMatrix m(row_ids.size(), col_ids.size());
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    const std::size_t r = row_ids[i];
    if (r >= rows_) throw std::invalid_argument("submatrix: row index out of range");
    std::vector<std::pair<std::size_t, double>> entries;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t c = col_map[col_idx_[k]];
      if (c != static_cast<std::size_t>(-1)) entries.emplace_back(c, values_[k]);
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& [c, v] : entries) {
      m.col_idx_.push_back(c);
      m.values_.push_back(v);
    }
    m.row_ptr_[i + 1] = m.col_idx_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::drop_zeros(double tol) const {
  SparseMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (std::abs(values_[k]) > tol) {
        m.col_idx_.push_back(col_idx_[k]);
        m.values_.push_back(values_[k]);
      }
    }
    m.row_ptr_[i + 1] = m.col_idx_.size();
  }
  return m;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  std::vector<Triplet> trip;
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<char> used(b.cols(), 0);
  std::vector<std::size_t> pattern;
  const auto arp = a.row_ptr(), aci = a.col_idx();
  const auto av = a.values();
  const auto brp = b.row_ptr(), bci = b.col_idx();
  const auto bv = b.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    pattern.clear();
    for (std::size_t ka = arp[i]; ka < arp[i + 1]; ++ka) {
      const std::size_t k = aci[ka];
      for (std::size_t kb = brp[k]; kb < brp[k + 1]; ++kb) {
        const std::size_t j = bci[kb];
        if (!used[j]) {
          used[j] = 1;
          pattern.push_back(j);
        }
        acc[j] += av[ka] * bv[kb];
      }
    }
    for (std::size_t j : pattern) {
      trip.push_back({i, j, acc[j]});
      acc[j] = 0.0;
      used[j] = 0;
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(trip));
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
  std::vector<Triplet> trip;
  trip.reserve(a.nnz() + b.nnz());
  auto push = [&trip](const SparseMatrix& m, double s) {
    const auto rp = m.row_ptr(), ci = m.col_idx();
    const auto v = m.values();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) trip.push_back({i, ci[k], s * v[k]});
    }
  };
  push(a, alpha);
  push(b, beta);
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(trip));
}

double symmetry_defect(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetry_defect: matrix not square");
  return add(a, a.transpose(), 1.0, -1.0).max_abs();
}

namespace vec {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

std::vector<double> linear_combination(double a, std::span<const double> x, double b, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

}  // namespace vec

}  // namespace mhd
