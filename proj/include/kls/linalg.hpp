#pragma once

#include <optional>
#include <vector>

#include "kls/poly.hpp"

namespace kls {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);
  /// Columns are the given vectors.
  static Matrix from_columns(const std::vector<std::vector<Rational>>& cols, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
  std::vector<Rational> column(int j) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;
  bool operator==(const Matrix& o) const = default;
  Matrix transpose() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

using Vector = std::vector<Rational>;

std::vector<Rational> to_rationals(const std::vector<long>& v);

/// Reduced row echelon form; pivot columns are returned through pivots.
Matrix rref(const Matrix& m, std::vector<int>* pivots = nullptr);
int rank(const Matrix& m);
Rational determinant(const Matrix& m);
/// Basis of {x : m x = 0}.
std::vector<Vector> nullspace(const Matrix& m);
/// Some x with m x = b, if one exists.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);
/// det(tI - m) by the Faddeev-LeVerrier recurrence.
Poly charpoly(const Matrix& m);

/// Indices of a maximal independent subset of the vectors, chosen greedily in order.
std::vector<int> independent_subset(const std::vector<Vector>& vectors, int dim);
/// Basis of span(sub) extended greedily by vectors of sup to a basis of span(sub + sup).
std::vector<Vector> extend_basis(const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim);

}  // namespace kls
