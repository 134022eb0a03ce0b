#pragma once

// Graded pieces of the Jacobian ideal and the Hilbert function of the Milnor
// algebra M(f) = S / J_f.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jacsyz/errors.hpp"
#include "jacsyz/exactalg.hpp"
#include "jacsyz/polyring.hpp"

namespace jacsyz {

inline Integer binomial(long top, long bottom) {
  if (bottom < 0 || top < 0 || bottom > top) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
  return r;
}

inline std::size_t to_size(const Integer& z) {
  if (sgn(z) < 0 || !z.fits_ulong_p()) throw invariant_violation("dimension out of range");
  return z.get_ui();
}

// dim S_k for a polynomial ring in num_vars variables; 0 for k < 0.
inline std::size_t graded_dim(std::size_t num_vars, long k) {
  if (k < 0 || num_vars == 0) return (k == 0 && num_vars == 0) ? 1 : 0;
  return to_size(binomial(static_cast<long>(num_vars) - 1 + k, k));
}

// Rows u * g for every generator g of degree <= k and every monomial u of
// degree k - deg g; columns indexed by monomial_basis(num_vars, k).
inline RatMatrix multiplication_rows(const std::vector<HomogeneousPoly>& gens,
                                     std::size_t num_vars, unsigned k) {
  const MonomialIndex cols(monomial_basis(num_vars, k));
  std::vector<RatVector> rows;
  for (const auto& g : gens) {
    if (g.is_zero() || g.degree() > k) continue;
    for (const auto& u : monomial_basis(num_vars, k - g.degree())) {
      RatVector row(cols.size());
      for (const auto& [e, c] : g.poly().terms()) {
        Exponents prod = e;
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += u[i];
        row[cols.find(prod)] = c;
      }
      rows.push_back(std::move(row));
    }
  }
  return RatMatrix::from_rows(rows, cols.size());
}

// dim (J_f)_k.
inline std::size_t jacobian_piece_dim(const HomogeneousPoly& f, long k) {
  if (k < 0 || f.degree() == 0 || k < static_cast<long>(f.degree()) - 1) return 0;
  return rank(multiplication_rows(gradient(f), f.num_vars(), static_cast<unsigned>(k)));
}

// dim M(f)_k; 0 for negative k.
inline std::size_t milnor_dim(const HomogeneousPoly& f, long k) {
  if (k < 0) return 0;
  return graded_dim(f.num_vars(), k) - jacobian_piece_dim(f, k);
}

struct HilbertTable {
  std::vector<std::size_t> values;        // values[k] = dim M(f)_k, k = 0..k_max
  std::optional<std::size_t> stable_value;  // tau(V) once certified
  std::optional<unsigned> stable_from;
};

inline HilbertTable milnor_hilbert(const HomogeneousPoly& f, unsigned k_max) {
  HilbertTable t;
  t.values.reserve(k_max + 1);
  for (unsigned k = 0; k <= k_max; ++k) t.values.push_back(milnor_dim(f, k));
  return t;
}

// Coefficient of t^k in ((1 - t^(N-1)) / (1 - t))^(n+1): the Hilbert function
// of the Milnor algebra of a smooth degree-N hypersurface in P^n.
inline std::size_t smooth_hilbert(unsigned n, unsigned degree, long k) {
  if (degree < 2) throw input_error("smooth_hilbert needs degree >= 2");
  if (k < 0) return 0;
  const long step = static_cast<long>(degree) - 1;
  Integer acc = 0;
  for (long j = 0; j <= static_cast<long>(n) + 1 && j * step <= k; ++j) {
    Integer term = binomial(n + 1, j) * binomial(k - j * step + n, n);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return to_size(acc);
}

// Smoothness of the projective hypersurface h = 0: its Milnor algebra must
// vanish in degree v(deg - 2) + 1, one past the socle degree of a smooth one.
inline bool projective_smoothness(const HomogeneousPoly& h) {
  if (h.is_zero()) return false;
  if (h.degree() <= 1) return true;
  const long v = static_cast<long>(h.num_vars());
  return milnor_dim(h, v * (static_cast<long>(h.degree()) - 2) + 1) == 0;
}

struct TjurinaStabilization {
  std::size_t tau = 0;
  unsigned stable_from = 0;
  HilbertTable table;  // degrees 0..stable_from + n, with stabilization metadata
};

// Scans dim M(f)_k upward from T = (n+1)(N-2) for n+1 equal consecutive
// values. Gives up once the window would pass T + 3(n+1).
inline TjurinaStabilization stabilized_tjurina(const HomogeneousPoly& f) {
  if (f.degree() < 2) throw input_error("hypersurface degree must be at least 2");
  const unsigned n = static_cast<unsigned>(f.num_vars()) - 1;
  const unsigned top = (n + 1) * (f.degree() - 2);
  const unsigned window = n + 1;
  const unsigned cutoff = top + 3 * (n + 1);
  HilbertTable table = milnor_hilbert(f, top);
  unsigned run_start = top;
  for (unsigned k = top + 1; k <= cutoff; ++k) {
    table.values.push_back(milnor_dim(f, k));
    if (table.values[k] != table.values[k - 1]) run_start = k;
    if (k - run_start + 1 == window) {
      table.stable_value = table.values[k];
      table.stable_from = run_start;
      return {table.values[k], run_start, std::move(table)};
    }
  }
  throw input_error("no stabilization: singularities may be non-isolated (scanned dim M(f)_k up to k = " +
                    std::to_string(cutoff) + ")");
}

}  // namespace jacsyz
