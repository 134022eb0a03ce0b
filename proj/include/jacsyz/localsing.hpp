#pragma once

// Local algebra at an isolated singular point.
//
// Quotients O_n / I of the local ring by the Jacobian ideal J_g or the
// Tjurina ideal (g) + J_g are computed by linear algebra on truncated
// polynomials. A truncation order k is accepted once every monomial of
// degree k lies in the span of {u * generator} modulo terms of degree > k:
// that says m^k is contained in I + m^(k+1), hence m^k is contained in I by
// Nakayama, and O_n / I = P_{<k} / (I mod m^k) exactly.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacsyz/errors.hpp"
#include "jacsyz/exactalg.hpp"
#include "jacsyz/polyring.hpp"

namespace jacsyz {

inline constexpr unsigned kDefaultLocalCap = 24;

class LocalGerm {
 public:
  explicit LocalGerm(AffinePoly g) : poly_(std::move(g)) {
    if (poly_.num_vars() == 0) throw input_error("germ needs at least one variable");
    for (const auto& [e, c] : poly_.terms()) {
      const unsigned d = total_degree(e);
      if (d == 0) throw input_error("point does not lie on the hypersurface (nonzero constant term)");
      if (d == 1) throw input_error("point is not singular (nonzero linear part)");
    }
  }

  const AffinePoly& poly() const { return poly_; }
  std::size_t num_vars() const { return poly_.num_vars(); }

 private:
  AffinePoly poly_;
};

// All monomials of degree < bound, highest degree first, grevlex inside a
// degree. Pivots of the truncated ideal land on high-degree monomials, so the
// complementary cobasis is made of the smallest monomials.
inline std::vector<Exponents> local_columns(std::size_t num_vars, unsigned bound) {
  std::vector<Exponents> out;
  for (unsigned d = bound; d-- > 0;) {
    auto piece = monomial_basis(num_vars, d);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

namespace detail {

// Rows trunc_{<bound}(u * gen) for all monomials u of degree < bound.
inline RatMatrix truncated_ideal_rows(const std::vector<AffinePoly>& gens,
                                      const MonomialIndex& cols, std::size_t num_vars,
                                      unsigned bound) {
  std::vector<RatVector> rows;
  for (const auto& gen : gens) {
    if (gen.is_zero()) continue;
    const unsigned ord = gen.order();
    for (unsigned du = 0; du + ord < bound; ++du) {
      for (const auto& u : monomial_basis(num_vars, du)) {
        RatVector row(cols.size());
        bool any = false;
        for (const auto& [e, c] : gen.terms()) {
          if (total_degree(e) + du >= bound) continue;
          Exponents prod = e;
          for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += u[i];
          row[cols.find(prod)] = c;
          any = true;
        }
        if (any) rows.push_back(std::move(row));
      }
    }
  }
  return RatMatrix::from_rows(rows, cols.size());
}

// m^k contained in I + m^(k+1)?
inline bool nakayama_certificate(const std::vector<AffinePoly>& gens, std::size_t num_vars,
                                 unsigned k) {
  const MonomialIndex cols(local_columns(num_vars, k + 1));
  const Echelon e = rref(truncated_ideal_rows(gens, cols, num_vars, k + 1));
  const std::size_t top = monomial_basis(num_vars, k).size();  // leading columns
  if (e.pivots.size() < top) return false;
  for (std::size_t j = 0; j < top; ++j) {
    if (e.pivots[j] != j) return false;
    for (std::size_t c = top; c < cols.size(); ++c)
      if (sgn(e.reduced(j, c)) != 0) return false;
  }
  return true;
}

}  // namespace detail

class LocalQuotientBasis {
 public:
  LocalQuotientBasis(unsigned truncation_order, MonomialIndex columns, Echelon reduction)
      : order_(truncation_order), columns_(std::move(columns)), reduction_(std::move(reduction)) {
    std::vector<bool> pivot(columns_.size(), false);
    for (std::size_t p : reduction_.pivots) pivot[p] = true;
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (!pivot[c]) {
        cobasis_columns_.push_back(c);
        cobasis_.push_back(columns_[c]);
      }
  }

  unsigned truncation_order() const { return order_; }
  std::size_t dimension() const { return cobasis_.size(); }
  // Monomials whose classes form a basis of the quotient, in column order.
  const std::vector<Exponents>& monomial_cobasis() const { return cobasis_; }

  // Coefficients of the class of h on the cobasis.
  RatVector normal_form(const AffinePoly& h) const {
    RatVector v(columns_.size());
    for (const auto& [e, c] : h.terms()) {
      if (total_degree(e) >= order_) continue;
      v[columns_.find(e)] = c;
    }
    for (std::size_t r = 0; r < reduction_.pivots.size(); ++r) {
      const Rational factor = v[reduction_.pivots[r]];
      if (sgn(factor) == 0) continue;
      const auto row = reduction_.reduced.row(r);
      for (std::size_t c = 0; c < row.size(); ++c)
        if (sgn(row[c]) != 0) v[c] -= factor * row[c];
    }
    RatVector out;
    out.reserve(cobasis_columns_.size());
    for (std::size_t c : cobasis_columns_) out.push_back(v[c]);
    return out;
  }

 private:
  unsigned order_;
  MonomialIndex columns_;
  Echelon reduction_;
  std::vector<std::size_t> cobasis_columns_;
  std::vector<Exponents> cobasis_;
};

inline std::vector<AffinePoly> local_generators(const LocalGerm& g, bool include_g) {
  std::vector<AffinePoly> gens;
  if (include_g) gens.push_back(g.poly());
  for (std::size_t i = 0; i < g.num_vars(); ++i) gens.push_back(g.poly().derivative(i));
  return gens;
}

// O_n / J_g (include_g = false) or O_n / ((g) + J_g) (include_g = true).
// min_order forces a larger truncation than the first certified one.
inline LocalQuotientBasis local_quotient(const LocalGerm& g, bool include_g,
                                         unsigned cap = kDefaultLocalCap, unsigned min_order = 0) {
  const auto gens = local_generators(g, include_g);
  const std::size_t nv = g.num_vars();
  for (unsigned k = 0; k <= 2 * cap; ++k) {
    if (!detail::nakayama_certificate(gens, nv, k)) continue;
    const unsigned order = std::max(k, min_order);
    MonomialIndex cols(local_columns(nv, order));
    Echelon e = rref(detail::truncated_ideal_rows(gens, cols, nv, order));
    return LocalQuotientBasis(order, std::move(cols), std::move(e));
  }
  throw input_error("isolated-singularity certificate failed (no truncation order up to " +
                    std::to_string(2 * cap) + ")");
}

struct MilnorTjurina {
  std::size_t mu = 0;
  std::size_t tau = 0;
};

inline MilnorTjurina milnor_tjurina(const LocalGerm& g, unsigned cap = kDefaultLocalCap) {
  const std::size_t mu = local_quotient(g, false, cap).dimension();
  const std::size_t tau = local_quotient(g, true, cap).dimension();
  if (tau > mu) throw invariant_violation("Tjurina number exceeds Milnor number");
  return {mu, tau};
}

// An isolated germ is weighted homogeneous iff g lies in J_g iff mu == tau.
inline bool is_weighted_homogeneous(const LocalGerm& g, unsigned cap = kDefaultLocalCap) {
  const auto [mu, tau] = milnor_tjurina(g, cap);
  return mu == tau;
}

struct SingularPointRecord {
  RatVector point;  // as supplied
  std::size_t chart = 0;
  LocalGerm germ;
  std::size_t mu = 0;
  std::size_t tau = 0;
  bool is_wh = false;
  unsigned milnor_order = 0;  // certified truncation orders
  LocalQuotientBasis tjurina;
};

// Chart: first nonzero coordinate of q.
inline SingularPointRecord analyze_point(const HomogeneousPoly& f, RatVector q,
                                         unsigned cap = kDefaultLocalCap) {
  if (q.size() != f.num_vars()) throw input_error("point has wrong number of coordinates");
  std::optional<std::size_t> chart;
  for (std::size_t i = 0; i < q.size() && !chart; ++i)
    if (sgn(q[i]) != 0) chart = i;
  if (!chart) throw input_error("the zero vector is not a projective point");
  LocalGerm germ(local_germ(f, *chart, q));
  LocalQuotientBasis milnor = local_quotient(germ, false, cap);
  LocalQuotientBasis tjurina = local_quotient(germ, true, cap);
  const std::size_t mu = milnor.dimension();
  const std::size_t tau = tjurina.dimension();
  if (tau > mu || mu == 0) throw invariant_violation("inconsistent local Milnor/Tjurina numbers");
  return SingularPointRecord{std::move(q), *chart,          std::move(germ),
                             mu,           tau,             mu == tau,
                             milnor.truncation_order(),     std::move(tjurina)};
}

// Normal-form coefficients of the germ of h at the point modulo the Tjurina
// ideal; all zero iff h lies in the local ideal of the singular subscheme.
inline RatVector tjurina_functionals(const SingularPointRecord& record, const HomogeneousPoly& h) {
  if (h.num_vars() != record.point.size())
    throw input_error("form and singular point live in different projective spaces");
  return record.tjurina.normal_form(local_germ(h, record.chart, record.point));
}

}  // namespace jacsyz
