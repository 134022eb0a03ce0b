#pragma once

// Independent reference computations for the tests. Nothing here calls the
// elimination, monomial enumeration or local-algebra code of the library.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Matrix = std::vector<std::vector<Q>>;

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

// Textbook Gauss-Jordan over Q, division at every step.
inline Rref rref(Matrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Q inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q factor = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= factor * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

// Exponent tuples in n variables of total degree < bound, in a simple
// lexicographic enumeration (order irrelevant for dimension counts).
inline std::vector<std::vector<unsigned>> monomials_below(std::size_t n, unsigned bound) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n, 0);
  // odometer over [0, bound)^n, keep total < bound
  for (;;) {
    unsigned total = 0;
    for (unsigned e : cur) total += e;
    if (total < bound) out.push_back(cur);
    std::size_t i = 0;
    while (i < n && ++cur[i] == bound) cur[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Sparse polynomial: exponent tuple -> coefficient.
using Poly = std::map<std::vector<unsigned>, Q>;

inline Poly derivative(const Poly& p, std::size_t i) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (e[i] == 0) continue;
    auto d = e;
    --d[i];
    out[d] += c * e[i];
  }
  return out;
}

// dim Q[y] / (I + m^bound), where I is generated by gens.
inline std::size_t truncated_quotient_dim(const std::vector<Poly>& gens, std::size_t n,
                                          unsigned bound) {
  const auto monos = monomials_below(n, bound);
  std::map<std::vector<unsigned>, std::size_t> col;
  for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
  Matrix rows;
  for (const auto& g : gens)
    for (const auto& u : monos) {
      std::vector<Q> row(monos.size());
      bool any = false;
      for (const auto& [e, c] : g) {
        auto prod = e;
        unsigned total = 0;
        for (std::size_t k = 0; k < n; ++k) total += (prod[k] += u[k]);
        if (total >= bound) continue;
        row[col.at(prod)] += c;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  return monos.size() - rank(rows);
}

inline std::vector<Poly> jacobian_gens(const Poly& g, std::size_t n, bool include_g) {
  std::vector<Poly> gens;
  if (include_g) gens.push_back(g);
  for (std::size_t i = 0; i < n; ++i) gens.push_back(derivative(g, i));
  return gens;
}

// Coefficients of prod_{i} (1 + t + ... + t^(len-1)) with `factors` factors.
inline std::vector<long> power_series_product(unsigned factors, unsigned len, std::size_t terms) {
  std::vector<long> acc(terms, 0);
  acc[0] = 1;
  for (unsigned f = 0; f < factors; ++f) {
    std::vector<long> next(terms, 0);
    for (std::size_t i = 0; i < terms; ++i)
      for (unsigned j = 0; j < len && i + j < terms; ++j) next[i + j] += acc[i];
    acc = std::move(next);
  }
  return acc;
}

// Number of exponent tuples of n entries summing to d, by direct counting.
inline std::size_t count_monomials(std::size_t n, unsigned d) {
  if (n == 0) return d == 0 ? 1 : 0;
  if (n == 1) return 1;
  std::size_t total = 0;
  for (unsigned e = 0; e <= d; ++e) total += count_monomials(n - 1, d - e);
  return total;
}

}  // namespace oracle
