#include "fanih/linalg.hpp"

#include <cassert>
#include <utility>

namespace fanih {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Matrix::operator*(const Vec& v) const {
  assert(v.size() == cols_);
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(v[c]) != 0) s += a * v[c];
    }
    out[r] = std::move(s);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  assert(cols_ == other.rows_);
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c)
        if (sgn(other(k, c)) != 0) out(r, c) += a * other(k, c);
    }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

Echelon echelon(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  // Scale each row to integers; Bareiss keeps every entry a minor of this matrix.
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer lcm = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(m(r, c)) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(m(r, c)) != 0) a[r][c] = m(r, c).get_num() * (lcm / m(r, c).get_den());
  }

  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r) std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(a[i][c]) == 0) {
        // Still scale to keep the Bareiss invariant.
        for (std::size_t j = c + 1; j < cols; ++j) {
          if (sgn(a[i][j]) == 0) continue;
          a[i][j] *= a[r][c];
          mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }

  Matrix rref(rows, cols);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t c = pivots[i]; c < cols; ++c)
      if (sgn(a[i][c]) != 0) rref(i, c) = Rational(a[i][c]) / Rational(a[i][pivots[i]]);
  for (std::size_t i = pivots.size(); i-- > 0;) {
    const std::size_t pc = pivots[i];
    for (std::size_t k = 0; k < i; ++k) {
      Rational f = rref(k, pc);
      if (sgn(f) == 0) continue;
      for (std::size_t c = pc; c < cols; ++c)
        if (sgn(rref(i, c)) != 0) rref(k, c) -= f * rref(i, c);
    }
  }
  return {std::move(rref), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return echelon(m).rank(); }

std::vector<Vec> kernel_basis(const Matrix& m) {
  const Echelon e = echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rref(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const Echelon e = echelon(aug);
  Vec x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.rref(i, m.cols());
  }
  return x;
}

Rational determinant(const Matrix& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  Matrix a = m;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vectors, std::size_t dim) {
  const Echelon e = echelon(Matrix::from_rows(vectors, dim));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.rref.row(i));
  return out;
}

Vec SpanBuilder::reduce(const Vec& v) const {
  Vec w = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = w[pivots_[i]];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(rows_[i][c]) != 0) w[c] -= f * rows_[i][c];
  }
  return w;
}

bool SpanBuilder::add(const Vec& v) {
  Vec w = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && sgn(w[p]) == 0) ++p;
  if (p == dim_) return false;
  const Rational lead = w[p];
  for (auto& x : w) x /= lead;
  // Keep earlier rows reduced at the new pivot.
  for (auto& row : rows_) {
    const Rational f = row[p];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(w[c]) != 0) row[c] -= f * w[c];
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

bool SpanBuilder::contains(const Vec& v) const { return is_zero(reduce(v)); }

}  // namespace fanih
