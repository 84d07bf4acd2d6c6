#pragma once

#include "arctic/kernel.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace arctic {

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw domain_error("ExactMatrix: need rows, cols >= 1");
    e_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), ExactRational(0));
  }
  ExactMatrix(int rows, int cols, std::vector<ExactRational> entries) : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows < 1 || cols < 1) throw domain_error("ExactMatrix: need rows, cols >= 1");
    if (e_.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
      throw domain_error("ExactMatrix: entry count does not match shape");
  }

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  template <class F>
  static ExactMatrix from_function(int rows, int cols, F&& f) {
    ExactMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = ExactRational(f(i, j));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  ExactRational& operator()(int i, int j) { return e_[idx(i, j)]; }
  const ExactRational& operator()(int i, int j) const { return e_[idx(i, j)]; }
  const std::vector<ExactRational>& entries() const { return e_; }

  std::vector<ExactRational> row(int i) const {
    std::vector<ExactRational> r(static_cast<size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = (*this)(i, j);
    return r;
  }
  std::vector<ExactRational> col(int j) const {
    std::vector<ExactRational> c(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[static_cast<size_t>(i)] = (*this)(i, j);
    return c;
  }

  // leading (m x m) block
  ExactMatrix truncated(int m) const {
    if (m < 1 || m > rows_ || m > cols_) throw domain_error("ExactMatrix::truncated: bad size");
    ExactMatrix t(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) t(i, j) = (*this)(i, j);
    return t;
  }

  ExactMatrix with_last_column(const std::vector<ExactRational>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw domain_error("with_last_column: length mismatch");
    ExactMatrix t = *this;
    for (int i = 0; i < rows_; ++i) t(i, cols_ - 1) = b[static_cast<size_t>(i)];
    return t;
  }

  bool operator==(const ExactMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

 private:
  size_t idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows_ || j >= cols_) throw std::out_of_range("ExactMatrix index");
    return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
  }
  int rows_ = 0, cols_ = 0;
  std::vector<ExactRational> e_;
};

inline ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) throw domain_error("matrix product: shape mismatch");
  ExactMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int r = 0; r < a.cols(); ++r) {
      if (a(i, r) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, r) * b(r, j);
    }
  return c;
}

inline bool is_unit_lower(const ExactMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (i == j && m(i, j) != 1) return false;
      if (j > i && m(i, j) != 0) return false;
    }
  return true;
}

inline bool is_upper(const ExactMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < i && j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

struct LUPair {
  ExactMatrix L, U;
};

struct singular_minor_error : std::runtime_error {
  int index;
  explicit singular_minor_error(int k)
      : std::runtime_error("lu_exact: leading principal minor of order " + std::to_string(k + 1) +
                           " vanishes (pivot index " + std::to_string(k) + ")"),
        index(k) {}
};

// rows cleared of denominators, then integer Bareiss with row swaps
inline ExactRational det_bareiss(const ExactMatrix& m) {
  if (!m.square()) throw domain_error("det_bareiss: matrix is not square");
  const int n = m.rows();
  std::vector<std::vector<ExactInteger>> a(static_cast<size_t>(n), std::vector<ExactInteger>(static_cast<size_t>(n)));
  ExactInteger scale = 1;
  for (int i = 0; i < n; ++i) {
    ExactInteger l = 1;
    for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale *= l;
    for (int j = 0; j < n; ++j)
      a[i][j] = exact_divide(l * m(i, j).get_num(), ExactInteger(m(i, j).get_den()));
  }
  int sign = 1;
  ExactInteger prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return make_rational(sign * a[n - 1][n - 1], scale);
}

// Doolittle, no pivoting
inline LUPair lu_exact(const ExactMatrix& m) {
  if (!m.square()) throw domain_error("lu_exact: matrix is not square");
  const int n = m.rows();
  ExactMatrix L = ExactMatrix::identity(n), U(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = k; j < n; ++j) {
      ExactRational s = m(k, j);
      for (int r = 0; r < k; ++r) s -= L(k, r) * U(r, j);
      U(k, j) = s;
    }
    if (U(k, k) == 0) throw singular_minor_error(k);
    for (int i = k + 1; i < n; ++i) {
      ExactRational s = m(i, k);
      for (int r = 0; r < k; ++r) s -= L(i, r) * U(r, k);
      L(i, k) = s / U(k, k);
    }
  }
  return {L, U};
}

// inverse of a unit lower triangular matrix by forward substitution
inline ExactMatrix unit_lower_inverse(const ExactMatrix& L) {
  if (!is_unit_lower(L)) throw domain_error("unit_lower_inverse: not unit lower triangular");
  const int n = L.rows();
  ExactMatrix X = ExactMatrix::identity(n);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      ExactRational s = 0;
      for (int r = j; r < i; ++r) s += L(i, r) * X(r, j);
      X(i, j) = -s;
    }
  return X;
}

// H = (sum_k Linv[n,k] b_k) / U_nn
inline ExactRational det_ratio_last_column(const std::vector<ExactRational>& L_inv_last_row,
                                           const std::vector<ExactRational>& b, const ExactRational& U_nn) {
  if (L_inv_last_row.size() != b.size()) throw domain_error("det_ratio_last_column: length mismatch");
  if (U_nn == 0) throw domain_error("det_ratio_last_column: U_nn is zero");
  ExactRational s = 0;
  for (size_t k = 0; k < b.size(); ++k) s += L_inv_last_row[k] * b[k];
  return s / U_nn;
}

// two-variable series sum c_{ij} z^i w^j kept for i, j < size
using CoefficientTable = ExactMatrix;

// coefficients of N(z,w)/D(z,w); N and D are polynomials given as tables
inline CoefficientTable series_quotient(const CoefficientTable& num, const CoefficientTable& den, int size) {
  if (den(0, 0) == 0) throw domain_error("series_quotient: D(0,0) = 0");
  CoefficientTable f(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      ExactRational s = (i < num.rows() && j < num.cols()) ? num(i, j) : ExactRational(0);
      for (int a = 0; a <= i && a < den.rows(); ++a)
        for (int b = 0; b <= j && b < den.cols(); ++b) {
          if (a == 0 && b == 0) continue;
          if (den(a, b) != 0) s -= den(a, b) * f(i - a, j - b);
        }
      f(i, j) = s / den(0, 0);
    }
  return f;
}

// polynomial from a list of (i, j, c) monomials
inline CoefficientTable polynomial(const std::vector<std::tuple<int, int, ExactRational>>& monomials) {
  int r = 1, c = 1;
  for (const auto& [i, j, v] : monomials) r = std::max(r, i + 1), c = std::max(c, j + 1);
  int n = std::max(r, c);
  CoefficientTable p(n, n);
  for (const auto& [i, j, v] : monomials) p(i, j) += v;
  return p;
}

// (fA * fB)(z,w) = fA(z,1/t) fB(t,w) |_{t^0}, restricted to indices < size
inline CoefficientTable gf_convolve_truncated(const CoefficientTable& fA, const CoefficientTable& fB, int size) {
  if (fA.rows() != size || fA.cols() != size || fB.rows() != size || fB.cols() != size)
    throw domain_error("gf_convolve_truncated: table size mismatch");
  CoefficientTable out(size, size);
  // coefficient of t^0 pairs z^i t^{-r} with t^r w^j
  for (int i = 0; i < size; ++i)
    for (int r = 0; r < size; ++r) {
      if (fA(i, r) == 0) continue;
      for (int j = 0; j < size; ++j) out(i, j) += fA(i, r) * fB(r, j);
    }
  return out;
}

}  // namespace arctic
