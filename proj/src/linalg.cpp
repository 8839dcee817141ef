#include "kls/linalg.hpp"

#include "kls/error.hpp"

namespace kls {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c) fail(ErrorCode::InvalidInput, "ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<Rational>>& cols, int rows) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[static_cast<size_t>(j)].size()) != rows) fail(ErrorCode::InvalidInput, "vector of wrong length");
    for (int i = 0; i < rows; ++i) m(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  return m;
}

std::vector<Rational> Matrix::column(int j) const {
  std::vector<Rational> v(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<size_t>(i)] = (*this)(i, j);
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::InvalidInput, "matrix shapes do not match");
  Matrix m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
    }
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::InvalidInput, "matrix shapes do not match");
  Matrix m = *this;
  for (size_t i = 0; i < data_.size(); ++i) m.data_[i] -= o.data_[i];
  return m;
}

std::vector<Rational> Matrix::operator*(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_) fail(ErrorCode::InvalidInput, "vector of wrong length");
  std::vector<Rational> out(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[static_cast<size_t>(i)] += (*this)(i, j) * v[static_cast<size_t>(j)];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

std::vector<Rational> to_rationals(const std::vector<long>& v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

Matrix rref(const Matrix& in, std::vector<int>* pivots) {
  Matrix m = in;
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = 1 / m(row, col);
    for (int j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

int rank(const Matrix& m) {
  std::vector<int> piv;
  rref(m, &piv);
  return static_cast<int>(piv.size());
}

Rational determinant(const Matrix& in) {
  if (in.rows() != in.cols()) fail(ErrorCode::InvalidInput, "determinant of a non-square matrix");
  Matrix m = in;
  Rational det = 1;
  const int n = m.rows();
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      const Rational f = m(i, col) / m(col, col);
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

std::vector<Vector> nullspace(const Matrix& m) {
  std::vector<int> piv;
  Matrix r = rref(m, &piv);
  std::vector<int> is_pivot(static_cast<size_t>(m.cols()), -1);
  for (size_t i = 0; i < piv.size(); ++i) is_pivot[static_cast<size_t>(piv[i])] = static_cast<int>(i);
  std::vector<Vector> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<size_t>(free)] >= 0) continue;
    Vector v(static_cast<size_t>(m.cols()));
    v[static_cast<size_t>(free)] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[static_cast<size_t>(piv[i])] = -r(static_cast<int>(i), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (static_cast<int>(b.size()) != m.rows()) fail(ErrorCode::InvalidInput, "right-hand side of wrong length");
  Matrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[static_cast<size_t>(i)];
  }
  std::vector<int> piv;
  Matrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Vector x(static_cast<size_t>(m.cols()));
  for (size_t i = 0; i < piv.size(); ++i) x[static_cast<size_t>(piv[i])] = r(static_cast<int>(i), m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> piv;
  Matrix r = rref(aug, &piv);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<size_t>(n - 1)] != n - 1) return std::nullopt;
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = r(i, n + j);
  return out;
}

Poly charpoly(const Matrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::InvalidInput, "characteristic polynomial of a non-square matrix");
  const int n = a.rows();
  // c[n - k] are the coefficients; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
  std::vector<Rational> c(static_cast<size_t>(n) + 1);
  c[static_cast<size_t>(n)] = 1;
  Matrix mk(n, n);
  for (int k = 1; k <= n; ++k) {
    Matrix next = a * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<size_t>(n - k + 1)];
    mk = next;
    Matrix am = a * mk;
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<size_t>(n - k)] = -tr / k;
  }
  return Poly(c);
}

std::vector<int> independent_subset(const std::vector<Vector>& vectors, int dim) {
  std::vector<int> chosen;
  std::vector<Vector> basis;
  for (size_t i = 0; i < vectors.size(); ++i) {
    basis.push_back(vectors[i]);
    if (rank(Matrix::from_columns(basis, dim)) == static_cast<int>(basis.size()))
      chosen.push_back(static_cast<int>(i));
    else
      basis.pop_back();
  }
  return chosen;
}

std::vector<Vector> extend_basis(const std::vector<Vector>& sub, const std::vector<Vector>& sup, int dim) {
  std::vector<Vector> all = sub;
  all.insert(all.end(), sup.begin(), sup.end());
  std::vector<Vector> out;
  for (int i : independent_subset(all, dim)) out.push_back(all[static_cast<size_t>(i)]);
  return out;
}

}  // namespace kls
