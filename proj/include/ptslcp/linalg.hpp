#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptslcp/error.hpp"

namespace ptslcp {

/// Dense real vector. Thin value wrapper over std::vector<double>.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double value = 0.0) : data_(n, value) {}
  Vector(std::initializer_list<double> values) : data_(values) {}
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  std::span<const double> view() const { return data_; }
  const std::vector<double>& values() const { return data_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
  }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

inline void require_same_size(const Vector& a, const Vector& b,
                              const char* what) {
  if (a.size() != b.size())
    throw DimensionMismatch(std::string(what) + ": length " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
}

inline double dot(const Vector& a, const Vector& b) {
  require_same_size(a, b, "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double norm2_squared(const Vector& a) { return dot(a, a); }
inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double norm1(const Vector& a) {
  double sum = 0.0;
  for (double v : a) sum += std::abs(v);
  return sum;
}

inline double sum(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

inline double min_entry(const Vector& a) {
  return a.empty() ? 0.0 : *std::min_element(a.begin(), a.end());
}

/// a + alpha * b
inline Vector axpy(const Vector& a, double alpha, const Vector& b) {
  require_same_size(a, b, "axpy");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + alpha * b[i];
  return out;
}

/// Componentwise product.
inline Vector hadamard(const Vector& a, const Vector& b) {
  require_same_size(a, b, "hadamard");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

/// Square dense matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  /// Takes `n*n` row-major entries. Throws DimensionMismatch on a size
  /// mismatch and DomainError on non-finite entries.
  DenseMatrix(std::size_t n, std::vector<double> row_major)
      : n_(n), entries_(std::move(row_major)) {
    if (entries_.size() != n_ * n_)
      throw DimensionMismatch("matrix of dimension " + std::to_string(n_) +
                              " needs " + std::to_string(n_ * n_) +
                              " entries, got " +
                              std::to_string(entries_.size()));
    for (double v : entries_)
      if (!std::isfinite(v)) throw DomainError("matrix entry is not finite");
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }

  const std::vector<double>& row_major() const { return entries_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Max absolute row sum.
  double norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
      m = std::max(m, row);
    }
    return m;
  }

  DenseMatrix transposed() const {
    DenseMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector operator*(const Vector& x) const {
    if (x.size() != n_)
      throw DimensionMismatch("matrix-vector product: dimension " +
                              std::to_string(n_) + " vs " +
                              std::to_string(x.size()));
    Vector y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = entries_.data() + i * n_;
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  DenseMatrix operator*(const DenseMatrix& b) const {
    if (b.n_ != n_) throw DimensionMismatch("matrix product dimension");
    DenseMatrix c(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// PA = LU with unit-diagonal L stored below the diagonal of `lu`.
struct LuFactors {
  std::size_t n = 0;
  std::vector<double> lu;
  std::vector<std::size_t> perm;  // row i of PA is row perm[i] of A
};

/// Relative pivot threshold below which a matrix is declared singular.
inline constexpr double kSingularPivotRatio = 1e-14;

inline LuFactors lu_factor(const DenseMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw DimensionMismatch("lu_factor: empty matrix");
  const double scale = a.max_abs();
  if (!std::isfinite(scale)) throw DomainError("lu_factor: non-finite entry");
  const double threshold = kSingularPivotRatio * scale;

  LuFactors f{n, a.row_major(), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return f.lu[i * n + j];
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > best) {
        best = std::abs(at(i, k));
        p = i;
      }
    if (!(best > threshold) || scale == 0.0)
      throw SingularMatrix("lu_factor: pivot " + std::to_string(best) +
                           " at column " + std::to_string(k) +
                           " below threshold");
    if (p != k) {
      std::swap_ranges(f.lu.begin() + k * n, f.lu.begin() + (k + 1) * n,
                       f.lu.begin() + p * n);
      std::swap(f.perm[k], f.perm[p]);
    }
    const double pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = at(i, k) / pivot;
      at(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= l * at(k, j);
    }
  }
  return f;
}

inline Vector solve(const LuFactors& f, const Vector& b) {
  const std::size_t n = f.n;
  if (b.size() != n)
    throw DimensionMismatch("solve: rhs length " + std::to_string(b.size()) +
                            " vs dimension " + std::to_string(n));
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= f.lu[i * n + j] * y[j];
    y[i] = acc;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= f.lu[ii * n + j] * y[j];
    y[ii] = acc / f.lu[ii * n + ii];
  }
  return y;
}

inline Vector solve(const DenseMatrix& a, const Vector& b) {
  return solve(lu_factor(a), b);
}

}  // namespace ptslcp
