#pragma once

// Exact linear algebra over the rationals.
//
// Elimination runs fraction-free on an integer copy of the matrix (each row
// scaled by the lcm of its denominators, which changes neither rank, row
// space nor kernel). Every intermediate entry is a minor of that integer
// matrix, so the Bareiss divisions are exact and entry growth stays bounded
// by Hadamard's inequality. Rationals only reappear in the final division by
// the last pivot.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacsyz/errors.hpp"

namespace jacsyz {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw input_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Always "p/q", also for integers, so that serialized values are uniform.
inline std::string fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw input_error("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw input_error("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  RatMatrix transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline RatVector multiply(const RatMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.cols()) throw input_error("dimension mismatch in matrix-vector product");
  RatVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0 && sgn(v[c]) != 0) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw input_error("dimension mismatch in matrix product");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

struct Echelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

namespace detail {

class IntegerMatrix {
 public:
  explicit IntegerMatrix(const RatMatrix& m)
      : rows_(m.rows()), cols_(m.cols()), data_(m.rows() * m.cols()) {
    for (std::size_t r = 0; r < rows_; ++r) {
      Integer scale = 1;
      for (std::size_t c = 0; c < cols_; ++c) {
        const Integer& den = m(r, c).get_den();
        if (den != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
      }
      for (std::size_t c = 0; c < cols_; ++c) {
        const Rational& q = m(r, c);
        if (sgn(q) == 0) continue;
        Integer v = scale;
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), q.get_den().get_mpz_t());
        at(r, c) = v * q.get_num();
      }
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }

  // row(i) <- (pivot * row(i) - row(i)[col] * row(r)) / prev, exactly.
  void bareiss_update(std::size_t i, std::size_t r, std::size_t col, const Integer& prev,
                      std::size_t from_col) {
    const Integer pivot = at(r, col);
    const Integer factor = at(i, col);
    Integer t;
    for (std::size_t j = from_col; j < cols_; ++j) {
      if (j == col) continue;
      Integer& x = at(i, j);
      const Integer& y = at(r, j);
      if (sgn(factor) == 0 || sgn(y) == 0) {
        if (sgn(x) == 0) continue;
        t = pivot * x;
      } else {
        t = pivot * x;
        t -= factor * y;
      }
      mpz_divexact(x.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
    }
    at(i, col) = 0;
  }

  std::size_t find_pivot(std::size_t from_row, std::size_t col) {
    for (std::size_t p = from_row; p < rows_; ++p)
      if (sgn(at(p, col)) != 0) return p;
    return rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> data_;
};

}  // namespace detail

inline std::size_t rank(const RatMatrix& m) {
  detail::IntegerMatrix a(m);
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    const std::size_t p = a.find_pivot(r, c);
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) a.bareiss_update(i, r, c, prev, c);
    prev = a.at(r, c);
    ++r;
  }
  return r;
}

// Reduced row-echelon form. Pivots are taken in the leftmost column with a
// nonzero entry among the remaining rows, scanning rows in the given order.
inline Echelon rref(const RatMatrix& m) {
  detail::IntegerMatrix a(m);
  Integer prev = 1;
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    const std::size_t p = a.find_pivot(r, c);
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r) a.bareiss_update(i, r, c, prev, 0);
    prev = a.at(r, c);
    pivots.push_back(c);
    ++r;
  }
  // Every pivot now equals `prev`; dividing by it yields the rational RREF.
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (sgn(a.at(i, c)) != 0) out(i, c) = make_rational(a.at(i, c), prev);
  return {std::move(out), std::move(pivots)};
}

// Right kernel. One vector per free column (ascending), with that column set
// to 1, the other free columns 0 and pivot columns back-substituted.
inline std::vector<RatVector> nullspace_basis(const RatMatrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw input_error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw input_error("singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

}  // namespace jacsyz
