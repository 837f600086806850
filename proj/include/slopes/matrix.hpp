#pragma once

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/rational.hpp"
#include "slopes/ring.hpp"

namespace slopes {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw InputError("matrix data size does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InputError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T{0});
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw InputError("row length does not match matrix width");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<i64>;

/// Result of row reduction over a field.
template <class T>
struct RrefResult {
  Matrix<T> reduced;               ///< nonzero rows only, in reduced row-echelon form
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  ///< pivot column of each row
  Matrix<T> kernel;                ///< canonical basis of {v : M v = 0}, one vector per row
};

/// Reduced row-echelon form, rank and right kernel of M over the field `f`.
///
/// Kernel vectors are canonical: one per free column j, with a 1 in
/// position j, zeros in the other free positions.
template <class FieldOps, class T = typename FieldOps::value_type>
RrefResult<T> rref(const Matrix<T>& input, const FieldOps& f) {
  Matrix<T> m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!f.is_zero(m(i, c))) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    m.swap_rows(r, sel);
    T inv = f.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      T factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  RrefResult<T> out;
  out.rank = r;
  out.pivots = pivots;
  out.reduced = Matrix<T>(r, cols, f.zero());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.reduced(i, j) = m(i, j);

  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  out.kernel = Matrix<T>(0, cols, f.zero());
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = f.neg(out.reduced(i, free));
    out.kernel.append_row(v);
  }
  if (out.kernel.rows() == 0) out.kernel = Matrix<T>(0, cols, f.zero());
  return out;
}

/// rref over a ModulusRing; rejects rings that are not finite prime fields.
inline RrefResult<i64> rref(const IntMatrix& m, const ModulusRing& ring) {
  Field f = field_of(ring);
  IntMatrix reduced = m;
  for (auto& x : reduced.data()) x = f.from_integer(x);
  return rref(reduced, f);
}

template <class FieldOps, class T = typename FieldOps::value_type>
std::size_t rank(const Matrix<T>& m, const FieldOps& f) {
  return rref(m, f).rank;
}

/// Reduces `v` against a matrix already in reduced row-echelon form; zero result iff v is in the row span.
template <class FieldOps, class T = typename FieldOps::value_type>
std::vector<T> reduce_against(std::vector<T> v, const Matrix<T>& reduced, std::span<const std::size_t> pivots,
                              const FieldOps& f) {
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    T c = v[pivots[i]];
    if (f.is_zero(c)) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, reduced(i, j)));
  }
  return v;
}

template <class FieldOps, class T = typename FieldOps::value_type>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const FieldOps& f) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
    }
  return c;
}

/// Exact integer matrix product with overflow checks.
inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = checked::add(c(i, j), checked::mul(a(i, k), b(k, j)));
  return c;
}

/// Product modulo `modulus`, result entries in [0, modulus).
inline IntMatrix multiply_mod(const IntMatrix& a, const IntMatrix& b, i64 modulus) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      i64 x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = mod(c(i, j) + mulmod(x, b(k, j), modulus), modulus);
    }
  return c;
}

/// Smith normal form U * M * V = D.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::vector<i64> divisors;  ///< diagonal of D, min(rows, cols) entries, each dividing the next
};

/// Smith normal form over Z; divisors are nonnegative and form a divisibility chain.
inline SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t rows = M.rows(), cols = M.cols();
  IntMatrix D = M, U = IntMatrix::identity(rows), V = IntMatrix::identity(cols);
  auto row_op = [&](std::size_t target, std::size_t src, i64 q) {  // row_target -= q * row_src
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) D(target, j) = checked::sub(D(target, j), checked::mul(q, D(src, j)));
    for (std::size_t j = 0; j < rows; ++j) U(target, j) = checked::sub(U(target, j), checked::mul(q, U(src, j)));
  };
  auto col_op = [&](std::size_t target, std::size_t src, i64 q) {  // col_target -= q * col_src
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) D(i, target) = checked::sub(D(i, target), checked::mul(q, D(i, src)));
    for (std::size_t i = 0; i < cols; ++i) V(i, target) = checked::sub(V(i, target), checked::mul(q, V(i, src)));
  };
  auto floordiv = [](i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // pivot: smallest nonzero |entry| in the trailing block
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D(i, j) != 0 && (pr == rows || std::llabs(D(i, j)) < std::llabs(D(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) break;
      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        row_op(i, t, floordiv(D(i, t), D(t, t)));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        col_op(j, t, floordiv(D(t, j), D(t, t)));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold a non-divisible entry into row t
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_op(t, i, -1);
            divides = false;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < rows; ++j) U(t, j) = -U(t, j);
    }
  }
  SmithForm out{U, D, V, {}};
  for (std::size_t t = 0; t < diag; ++t) out.divisors.push_back(D(t, t));
  return out;
}

/// Smith normal form over Z/ell^m: divisors are ell^a (with ell^m standing for zero),
/// U and V invertible modulo ell^m.
inline SmithForm smith_normal_form(const IntMatrix& M, const ResidueRing& R) {
  const std::size_t rows = M.rows(), cols = M.cols();
  IntMatrix D = M, U = IntMatrix::identity(rows), V = IntMatrix::identity(cols);
  for (auto& x : D.data()) x = R.reduce(x);
  auto row_axpy = [&](std::size_t target, std::size_t src, i64 q) {  // row_target -= q * row_src
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) D(target, j) = R.sub(D(target, j), R.mul(q, D(src, j)));
    for (std::size_t j = 0; j < rows; ++j) U(target, j) = R.sub(U(target, j), R.mul(q, U(src, j)));
  };
  auto col_axpy = [&](std::size_t target, std::size_t src, i64 q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) D(i, target) = R.sub(D(i, target), R.mul(q, D(i, src)));
    for (std::size_t i = 0; i < cols; ++i) V(i, target) = R.sub(V(i, target), R.mul(q, V(i, src)));
  };
  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    std::size_t pr = rows, pc = cols;
    int best = R.exponent();
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        int v = R.valuation(D(i, j));
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (pr == rows) break;  // trailing block is zero
    D.swap_rows(t, pr);
    U.swap_rows(t, pr);
    D.swap_cols(t, pc);
    V.swap_cols(t, pc);
    // normalise pivot to ell^best by scaling row t with the inverse unit part
    i64 unit = D(t, t);
    for (int k = 0; k < best; ++k) unit /= R.ell();
    i64 uinv = R.inv(unit);
    for (std::size_t j = 0; j < cols; ++j) D(t, j) = R.mul(D(t, j), uinv);
    for (std::size_t j = 0; j < rows; ++j) U(t, j) = R.mul(U(t, j), uinv);
    const i64 pivot = D(t, t);  // = ell^best
    // every entry of the block has valuation >= best, so exact division by ell^best is possible
    auto quotient = [&](i64 x) {
      i64 q = x;
      for (int k = 0; k < best; ++k) q /= R.ell();
      return q;
    };
    for (std::size_t i = t + 1; i < rows; ++i) row_axpy(i, t, quotient(D(i, t)));
    for (std::size_t j = t + 1; j < cols; ++j) col_axpy(j, t, quotient(D(t, j)));
    (void)pivot;
  }
  SmithForm out{U, D, V, {}};
  for (std::size_t t = 0; t < diag; ++t) out.divisors.push_back(D(t, t) == 0 ? R.modulus() : D(t, t));
  return out;
}

/// Inverse of a square matrix modulo ell^m (Gauss-Jordan with unit pivots).
inline IntMatrix inverse_mod(const IntMatrix& M, const ResidueRing& R) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw InputError("inverse of a non-square matrix");
  IntMatrix a = M, inv = IntMatrix::identity(n);
  for (auto& x : a.data()) x = R.reduce(x);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i)
      if (R.is_unit(a(i, c))) {
        sel = i;
        break;
      }
    if (sel == n) throw DomainError("matrix is not invertible modulo " + std::to_string(R.modulus()));
    a.swap_rows(c, sel);
    inv.swap_rows(c, sel);
    i64 u = R.inv(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = R.mul(a(c, j), u);
      inv(c, j) = R.mul(inv(c, j), u);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      i64 q = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = R.sub(a(i, j), R.mul(q, a(c, j)));
        inv(i, j) = R.sub(inv(i, j), R.mul(q, inv(c, j)));
      }
    }
  }
  return inv;
}

/// Determinant over Z by fraction-free elimination (Bareiss), overflow-checked.
inline i64 determinant(const IntMatrix& M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = M;
  i64 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t sel = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          sel = i;
          break;
        }
      if (sel == n) return 0;
      a.swap_rows(k, sel);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = checked::sub(checked::mul(a(i, j), a(k, k)), checked::mul(a(i, k), a(k, j))) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace slopes
