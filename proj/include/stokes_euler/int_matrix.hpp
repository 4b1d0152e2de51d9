#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace stokes_euler {

using BigInt = boost::multiprecision::cpp_int;

/// Small dense integer matrix, row-major. Sizes here never exceed a dozen,
/// so everything is plain loops.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) fail(ErrorKind::InvalidArgument, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<std::int64_t>& data() const noexcept { return data_; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    check_same_shape(a, b);
    IntMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }
  friend IntMatrix operator-(const IntMatrix& a) {
    IntMatrix c = a;
    for (auto& v : c.data_) v = -v;
    return c;
  }
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + (-b); }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::InvalidArgument, "matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_unit_upper_triangular() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*this)(i, i) != 1) return false;
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != 0) return false;
    }
    return true;
  }

  /// Rows joined by newlines, columns right-aligned to the widest entry.
  std::string to_text() const {
    std::size_t width = 1;
    for (auto v : data_) width = std::max(width, std::to_string(v).size());
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto s = std::to_string((*this)(i, j));
        if (j) out << ' ';
        out << std::string(width - s.size(), ' ') << s;
      }
      out << '\n';
    }
    return out.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_text(); }

 private:
  static void check_same_shape(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      fail(ErrorKind::InvalidArgument, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact determinant by fraction-free Gaussian elimination (Bareiss).
inline BigInt determinant(const IntMatrix& m) {
  if (!m.square()) fail(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Exact inverse of a unit upper-triangular integer matrix.
inline IntMatrix unit_upper_inverse(const IntMatrix& s) {
  if (!s.is_unit_upper_triangular()) fail(ErrorKind::InvalidArgument, "matrix is not unit upper triangular");
  const std::size_t n = s.rows();
  IntMatrix inv = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t ii = j; ii-- > 0;) {
      std::int64_t acc = 0;
      for (std::size_t k = ii + 1; k <= j; ++k) acc += s(ii, k) * inv(k, j);
      inv(ii, j) = -acc;
    }
  return inv;
}

struct IntMatrixHash {
  std::size_t operator()(const IntMatrix& m) const noexcept {
    std::size_t h = std::hash<std::size_t>{}(m.rows() * 131 + m.cols());
    for (auto v : m.data()) h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace stokes_euler
