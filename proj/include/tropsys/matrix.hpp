#pragma once

#include <tropsys/error.hpp>
#include <tropsys/scalar.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace tropsys {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over the max-plus semiring.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Scalar& fill = Scalar::neg_inf())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; every row must have the same length.
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("ragged rows in Matrix::from_rows");
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  /// Tropical identity: 0 on the diagonal, -inf elsewhere.
  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = Scalar(0);
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const {
    return std::span<const Scalar>(data_).subspan(i * cols_, cols_);
  }

  Vector col(std::size_t j) const {
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  bool is_real() const {
    for (const auto& s : data_) {
      if (s.is_neg_inf()) return false;
    }
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": matrices differ in shape (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

/// y_i = max_j (a_ij + x_j).
inline Vector matvec_maxplus(const Matrix& a, std::span<const Scalar> x) {
  if (x.size() != a.cols()) throw DimensionError("matvec_maxplus: vector length != cols");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar acc = Scalar::neg_inf();
    for (std::size_t j = 0; j < a.cols(); ++j) acc = oplus(acc, odot(a(i, j), x[j]));
    y[i] = std::move(acc);
  }
  return y;
}

/// y_i = min_j (a_ij + x_j). A -inf term makes the row -inf.
inline Vector matvec_minplus(const Matrix& a, std::span<const Scalar> x) {
  if (x.size() != a.cols()) throw DimensionError("matvec_minplus: vector length != cols");
  if (a.cols() == 0) throw DimensionError("matvec_minplus: empty minimum");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar acc = odot_min(a(i, 0), x[0]);
    for (std::size_t j = 1; j < a.cols(); ++j) acc = oplus_min(acc, odot_min(a(i, j), x[j]));
    y[i] = std::move(acc);
  }
  return y;
}

/// A* = (-a_ji); defined for real matrices only.
inline Matrix conjugate(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_neg_inf()) throw DomainError("conjugate: matrix has a -inf entry");
      out(j, i) = Scalar(Rational(-a(i, j).value()));
    }
  }
  return out;
}

/// m_kj - m_kl, with +inf when only m_kl is -inf and -inf when only m_kj is.
/// Both entries -inf is undetermined and signals a caller bug.
inline ExtScalar dif(const Matrix& m, std::size_t j, std::size_t l, std::size_t k) {
  const Scalar& mj = m(k, j);
  const Scalar& ml = m(k, l);
  if (ml.is_finite()) {
    if (mj.is_neg_inf()) return ExtScalar::neg_inf();
    return ExtScalar(Rational(mj.value() - ml.value()));
  }
  if (mj.is_finite()) return ExtScalar::pos_inf();
  throw DomainError("dif: both entries are -inf (undetermined)");
}

}  // namespace tropsys
