#pragma once

// Graded pieces of the module of Jacobian syzygies
//
//   AR(f)_m = { (a_0, ..., a_n) in S_m^(n+1) : sum_i a_i f_i = 0 },
//   KR(f)_m = span of u * (f_j e_i - f_i e_j), deg u = m - N + 1,
//   ER(f)_m = AR(f)_m / KR(f)_m,
//
// and the splitting of an AR basis into a KR basis plus ER representatives
// by testing one component against the singular subscheme Y. Syzygies are
// stored as coefficient tuples; a flattened coordinate vector lists the
// coefficients of a_0 on monomial_basis(n+1, m), then a_1, and so on.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacsyz/errors.hpp"
#include "jacsyz/exactalg.hpp"
#include "jacsyz/localsing.hpp"
#include "jacsyz/milnor.hpp"
#include "jacsyz/polyring.hpp"

namespace jacsyz {

struct SyzygyVector {
  unsigned m = 0;
  std::vector<HomogeneousPoly> components;

  friend bool operator==(const SyzygyVector&, const SyzygyVector&) = default;
};

inline bool verify_syzygy(const HomogeneousPoly& f, const std::vector<HomogeneousPoly>& components) {
  if (components.size() != f.num_vars()) return false;
  std::optional<unsigned> degree;
  Polynomial sum(f.num_vars());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& a = components[i];
    if (a.num_vars() != f.num_vars()) return false;
    if (!a.is_zero()) {
      if (degree && *degree != a.degree()) return false;
      degree = a.degree();
    }
    sum += a.poly() * partial_derivative(f, i).poly();
  }
  return sum.is_zero();
}

// Throws input_error unless the components form a syzygy of f in degree m.
inline SyzygyVector make_syzygy(const HomogeneousPoly& f, unsigned m,
                                std::vector<HomogeneousPoly> components) {
  for (const auto& a : components)
    if (!a.is_zero() && a.degree() != m) throw input_error("syzygy component of the wrong degree");
  if (!verify_syzygy(f, components)) throw input_error("not a syzygy: sum a_i f_i != 0");
  return SyzygyVector{m, std::move(components)};
}

inline RatVector flatten(const SyzygyVector& s, const MonomialIndex& basis) {
  RatVector out;
  out.reserve(s.components.size() * basis.size());
  for (const auto& a : s.components) {
    const RatVector v = coefficient_vector(a, basis);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

inline SyzygyVector unflatten(std::span<const Rational> v, const MonomialIndex& basis,
                              std::size_t num_vars, unsigned m) {
  SyzygyVector s{m, {}};
  for (std::size_t i = 0; i < num_vars; ++i)
    s.components.push_back(from_coefficients(basis, v.subspan(i * basis.size(), basis.size()),
                                             num_vars, m));
  return s;
}

// The map S_m^(n+1) -> S_(m+N-1), (a_i) -> sum a_i f_i, as a matrix.
inline RatMatrix syzygy_matrix(const HomogeneousPoly& f, unsigned m) {
  const std::size_t v = f.num_vars();
  const MonomialIndex source(monomial_basis(v, m));
  const MonomialIndex target(monomial_basis(v, m + f.degree() - 1));
  const auto partials = gradient(f);
  RatMatrix a(target.size(), v * source.size());
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < source.size(); ++j)
      for (const auto& [e, c] : partials[i].poly().terms()) {
        Exponents prod = e;
        for (std::size_t k = 0; k < v; ++k) prod[k] += source[j][k];
        a(target.find(prod), i * source.size() + j) += c;
      }
  return a;
}

// A basis of AR(f)_m together with the data needed to read coordinates.
struct ArBasis {
  unsigned m = 0;
  MonomialIndex monomials;             // basis of S_m
  std::vector<SyzygyVector> vectors;   // kernel basis of syzygy_matrix
  std::vector<RatVector> flat;         // same vectors, flattened
  std::vector<std::size_t> free_columns;

  std::size_t size() const { return vectors.size(); }

  // Coordinates of a syzygy in this basis: the kernel basis is the identity
  // on the free columns, so they are just the entries there.
  RatVector coordinates(std::span<const Rational> flat_syzygy) const {
    RatVector c;
    c.reserve(free_columns.size());
    for (std::size_t k : free_columns) c.push_back(flat_syzygy[k]);
    return c;
  }
};

inline ArBasis ar_basis_full(const HomogeneousPoly& f, unsigned m) {
  if (f.degree() == 0) throw input_error("f must have positive degree");
  ArBasis out;
  out.m = m;
  out.monomials = MonomialIndex(monomial_basis(f.num_vars(), m));
  const RatMatrix a = syzygy_matrix(f, m);
  const Echelon e = rref(a);
  std::vector<bool> pivot(a.cols(), false);
  for (std::size_t p : e.pivots) pivot[p] = true;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!pivot[c]) out.free_columns.push_back(c);
  for (std::size_t f_col : out.free_columns) {
    RatVector v(a.cols());
    v[f_col] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f_col);
    out.vectors.push_back(unflatten(v, out.monomials, f.num_vars(), m));
    out.flat.push_back(std::move(v));
  }
  return out;
}

inline std::vector<SyzygyVector> ar_basis(const HomogeneousPoly& f, unsigned m) {
  return ar_basis_full(f, m).vectors;
}

// u * (f_j e_i - f_i e_j) for i < j and monomials u of degree m - N + 1.
inline std::vector<SyzygyVector> koszul_generators(const HomogeneousPoly& f, unsigned m) {
  std::vector<SyzygyVector> out;
  if (f.degree() == 0 || m + 1 < f.degree()) return out;
  const std::size_t v = f.num_vars();
  const auto partials = gradient(f);
  for (const auto& u : monomial_basis(v, m + 1 - f.degree())) {
    const HomogeneousPoly mono(Polynomial::monomial(u, 1), m + 1 - f.degree());
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t j = i + 1; j < v; ++j) {
        SyzygyVector s{m, std::vector<HomogeneousPoly>(v, HomogeneousPoly::zero(v, m))};
        s.components[i] = mono * partials[j];
        s.components[j] = -(mono * partials[i]);
        out.push_back(std::move(s));
      }
  }
  return out;
}

inline RatMatrix koszul_matrix(const HomogeneousPoly& f, unsigned m) {
  const MonomialIndex basis(monomial_basis(f.num_vars(), m));
  std::vector<RatVector> rows;
  for (const auto& s : koszul_generators(f, m)) rows.push_back(flatten(s, basis));
  return RatMatrix::from_rows(rows, f.num_vars() * basis.size());
}

inline std::size_t koszul_dim(const HomogeneousPoly& f, unsigned m) {
  return rank(koszul_matrix(f, m));
}

// Rank test: s lies in KR(f)_m.
inline bool in_koszul_span(const HomogeneousPoly& f, const SyzygyVector& s) {
  const MonomialIndex basis(monomial_basis(f.num_vars(), s.m));
  const RatMatrix k = koszul_matrix(f, s.m);
  std::vector<RatVector> rows;
  for (std::size_t r = 0; r < k.rows(); ++r) rows.emplace_back(k.row(r).begin(), k.row(r).end());
  const std::size_t before = rank(k);
  rows.push_back(flatten(s, basis));
  return rank(RatMatrix::from_rows(rows, k.cols())) == before;
}

struct SyzygyDims {
  std::size_t ar = 0;
  std::size_t kr = 0;
  std::size_t er = 0;
  friend bool operator==(const SyzygyDims&, const SyzygyDims&) = default;
};

// Dimensions from the Hilbert functions of M(f) and of a smooth hypersurface
// of the same degree; all zero for m < 0.
inline SyzygyDims prop1_dims(const HomogeneousPoly& f, long m) {
  if (m < 0) return {};
  const long n = static_cast<long>(f.num_vars()) - 1;
  const long big_n = f.degree();
  const Integer common = Integer(n + 1) * binomial(n + m, n) - binomial(n + m + big_n - 1, n);
  const std::size_t mf = milnor_dim(f, m + big_n - 1);
  const std::size_t mg = smooth_hilbert(static_cast<unsigned>(n), f.degree(), m + big_n - 1);
  const Integer ar = common + Integer(static_cast<unsigned long>(mf));
  const Integer kr = common + Integer(static_cast<unsigned long>(mg));
  if (mf < mg) throw invariant_violation("dim M(f) below the smooth Hilbert function");
  return {to_size(ar), to_size(kr), mf - mg};
}

// dim ER(f)_m via the Hilbert functions; 0 for m < 0.
inline std::size_t er_dim(const HomogeneousPoly& f, long m) { return prop1_dims(f, m).er; }

// nN - 2n - 1.
inline long duality_degree(const HomogeneousPoly& f) {
  const long n = static_cast<long>(f.num_vars()) - 1;
  return n * static_cast<long>(f.degree()) - 2 * n - 1;
}

// (n+1)(N-2).
inline long socle_degree(const HomogeneousPoly& f) {
  return static_cast<long>(f.num_vars()) * (static_cast<long>(f.degree()) - 2);
}

struct TransversalityReport {
  bool ok = false;
  std::string reason;  // empty when ok
};

inline TransversalityReport transversality_report(const HomogeneousPoly& f, std::size_t chart,
                                                  const std::vector<RatVector>& points) {
  if (chart >= f.num_vars()) return {false, "chart index out of range"};
  for (std::size_t i = 0; i < points.size(); ++i)
    if (sgn(points[i].at(chart)) == 0)
      return {false, "singular point #" + std::to_string(i + 1) + " lies on the hyperplane x_" +
                         std::to_string(chart) + " = 0"};
  if (!projective_smoothness(restrict_to_hyperplane(f, chart)))
    return {false, "the hyperplane section x_" + std::to_string(chart) + " = 0 is singular"};
  return {true, {}};
}

inline bool transversality_check(const HomogeneousPoly& f, std::size_t chart,
                                 const std::vector<RatVector>& points) {
  return transversality_report(f, chart, points).ok;
}

inline RatVector transform_point(const RatMatrix& inverse_change, std::span<const Rational> q) {
  return multiply(inverse_change, q);
}

struct CoordinateChange {
  RatMatrix matrix;   // f'(x) = f(matrix * x)
  RatMatrix inverse;  // singular points map q -> inverse * q
  unsigned trial = 0; // 0 is the identity
};

inline constexpr unsigned kTransversalTrials = 100;

// Seeded search over small-integer matrices (entries in [-2, 2]) for
// coordinates in which every coordinate hyperplane is transversal to V.
// Trial 0 is the identity.
inline CoordinateChange find_transversal_coordinates(const HomogeneousPoly& f,
                                                     const std::vector<RatVector>& points,
                                                     std::uint64_t seed) {
  const std::size_t v = f.num_vars();
  std::mt19937_64 rng(seed);
  std::string last_failure;
  for (unsigned trial = 0; trial < kTransversalTrials; ++trial) {
    RatMatrix a = RatMatrix::identity(v);
    if (trial > 0) {
      for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) a(i, j) = static_cast<long>(rng() % 5) - 2;
      if (rank(a) != v) {
        last_failure = "trial " + std::to_string(trial) + ": singular matrix";
        continue;
      }
    }
    const RatMatrix inv = inverse(a);
    const HomogeneousPoly g = linear_change(f, a);
    std::vector<RatVector> moved;
    for (const auto& q : points) moved.push_back(transform_point(inv, q));
    bool all_ok = true;
    for (std::size_t c = 0; c < v && all_ok; ++c) {
      const auto rep = transversality_report(g, c, moved);
      if (!rep.ok) {
        all_ok = false;
        last_failure = "trial " + std::to_string(trial) + ": " + rep.reason;
      }
    }
    if (all_ok) return {std::move(a), inv, trial};
  }
  throw input_error("no transversal coordinate system found in " + std::to_string(kTransversalTrials) +
                    " trials; last failure: " + last_failure);
}

inline RatVector stacked_functionals(const std::vector<SingularPointRecord>& records,
                                     const HomogeneousPoly& h) {
  RatVector out;
  for (const auto& r : records) {
    const RatVector part = tjurina_functionals(r, h);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::size_t total_tau(const std::vector<SingularPointRecord>& records) {
  std::size_t t = 0;
  for (const auto& r : records) t += r.tau;
  return t;
}

inline std::size_t total_mu(const std::vector<SingularPointRecord>& records) {
  std::size_t t = 0;
  for (const auto& r : records) t += r.mu;
  return t;
}

struct IdealPieceDims {
  std::size_t ideal = 0;     // dim I_m
  std::size_t quotient = 0;  // dim S_m / I_m
};

// I_m: degree-m forms whose germ at every singular point lies in the local
// Tjurina ideal. The records must cover the whole singular locus.
inline IdealPieceDims ideal_piece_dim(const HomogeneousPoly& f,
                                      const std::vector<SingularPointRecord>& records, long m) {
  if (m < 0) return {};
  const std::size_t v = f.num_vars();
  const auto basis = monomial_basis(v, static_cast<unsigned>(m));
  RatMatrix e(total_tau(records), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const RatVector col = stacked_functionals(
        records, HomogeneousPoly(Polynomial::monomial(basis[j], 1), static_cast<unsigned>(m)));
    for (std::size_t i = 0; i < col.size(); ++i) e(i, j) = col[i];
  }
  const std::size_t q = rank(e);
  return {basis.size() - q, q};
}

// Kernel of p_c : AR(f)_m -> S_m / I_m, (a_0..a_n) -> [a_c], as coordinate
// vectors in the given AR basis.
inline std::vector<RatVector> projection_kernel(const ArBasis& ar,
                                                const std::vector<SingularPointRecord>& records,
                                                std::size_t chart) {
  RatMatrix e(total_tau(records), ar.size());
  for (std::size_t j = 0; j < ar.size(); ++j) {
    const RatVector col = stacked_functionals(records, ar.vectors[j].components.at(chart));
    for (std::size_t i = 0; i < col.size(); ++i) e(i, j) = col[i];
  }
  return nullspace_basis(e);
}

// Basis of KR(f)_m in AR coordinates (rref rows).
inline Echelon koszul_coordinates(const HomogeneousPoly& f, const ArBasis& ar) {
  std::vector<RatVector> rows;
  for (const auto& s : koszul_generators(f, ar.m)) rows.push_back(ar.coordinates(flatten(s, ar.monomials)));
  Echelon e = rref(RatMatrix::from_rows(rows, ar.size()));
  return e;
}

inline SyzygyVector combine(const ArBasis& ar, std::span<const Rational> coords,
                            std::size_t num_vars) {
  RatVector flat(num_vars * ar.monomials.size());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (sgn(coords[j]) == 0) continue;
    for (std::size_t k = 0; k < flat.size(); ++k)
      if (sgn(ar.flat[j][k]) != 0) flat[k] += coords[j] * ar.flat[j][k];
  }
  return unflatten(flat, ar.monomials, num_vars, ar.m);
}

// Does span(rows) contain span(sub)? Both lists of equal-length vectors.
inline bool span_contains(const std::vector<RatVector>& rows, const std::vector<RatVector>& sub,
                          std::size_t cols) {
  const std::size_t base = rank(RatMatrix::from_rows(rows, cols));
  std::vector<RatVector> all = rows;
  all.insert(all.end(), sub.begin(), sub.end());
  return rank(RatMatrix::from_rows(all, cols)) == base;
}

struct SplitResult {
  unsigned m = 0;
  std::size_t chart = 0;
  std::vector<SyzygyVector> kr_basis;
  std::vector<SyzygyVector> er_representatives;
  std::vector<std::size_t> er_indices;  // positions in the AR basis
  SyzygyDims dims;
  std::size_t kernel_dim = 0;  // dim ker p_chart
  std::vector<bool> wh_verdict;
  bool kernel_matches_kr = false;
};

// Splits an AR(f)_m basis using the projection onto component `chart`.
//
// ker p_chart always contains KR(f)_m; with a transversal chart it equals
// KR(f)_m for every m exactly when all singular points are weighted
// homogeneous. When it matches, kr_basis is the kernel basis; otherwise it
// is an echelon basis of KR(f)_m. ER representatives are the AR basis
// elements on the non-pivot columns of the echelon form of KR(f)_m in AR
// coordinates.
inline SplitResult split_basis(const HomogeneousPoly& f, unsigned m,
                               const std::vector<SingularPointRecord>& records, std::size_t chart) {
  std::vector<RatVector> points;
  for (const auto& r : records) points.push_back(r.point);
  const auto trans = transversality_report(f, chart, points);
  if (!trans.ok)
    throw input_error("transversality check failed for chart x_" + std::to_string(chart) + ": " +
                      trans.reason + "; use find_transversal_coordinates to pick coordinates");

  const std::size_t v = f.num_vars();
  const ArBasis ar = ar_basis_full(f, m);
  const std::vector<RatVector> kernel = projection_kernel(ar, records, chart);
  const Echelon kr = koszul_coordinates(f, ar);
  const std::size_t kr_dim = kr.pivots.size();

  std::vector<RatVector> kr_rows;
  for (std::size_t r = 0; r < kr_dim; ++r)
    kr_rows.emplace_back(kr.reduced.row(r).begin(), kr.reduced.row(r).end());
  if (kernel.size() < kr_dim || !span_contains(kernel, kr_rows, ar.size()))
    throw invariant_violation("Koszul syzygies outside the projection kernel in degree " +
                              std::to_string(m));

  SplitResult out;
  out.m = m;
  out.chart = chart;
  out.kernel_dim = kernel.size();
  out.dims = {ar.size(), kr_dim, ar.size() - kr_dim};
  out.kernel_matches_kr = kernel.size() == kr_dim;
  for (const auto& r : records) out.wh_verdict.push_back(r.is_wh);

  const auto& kr_source = out.kernel_matches_kr ? kernel : kr_rows;
  for (const auto& c : kr_source) {
    SyzygyVector s = combine(ar, c, v);
    if (out.kernel_matches_kr && !in_koszul_span(f, s))
      throw invariant_violation("kernel element outside the Koszul span");
    out.kr_basis.push_back(std::move(s));
  }
  std::vector<bool> pivot(ar.size(), false);
  for (std::size_t p : kr.pivots) pivot[p] = true;
  for (std::size_t j = 0; j < ar.size(); ++j)
    if (!pivot[j]) {
      out.er_indices.push_back(j);
      out.er_representatives.push_back(ar.vectors[j]);
    }
  return out;
}

struct DefectRow {
  long m = 0;
  std::size_t quotient_dim = 0;  // dim S_m / I_m
  long defect = 0;               // mu(V) - dim S_m / I_m
  long dual_degree = 0;          // nN - 2n - 1 - m
  std::size_t dual_er = 0;       // dim ER(f)_(dual_degree)
};

inline DefectRow defect(const HomogeneousPoly& f, const std::vector<SingularPointRecord>& records,
                        long m) {
  DefectRow row;
  row.m = m;
  row.quotient_dim = ideal_piece_dim(f, records, m).quotient;
  row.defect = static_cast<long>(total_mu(records)) - static_cast<long>(row.quotient_dim);
  row.dual_degree = duality_degree(f) - m;
  row.dual_er = er_dim(f, row.dual_degree);
  return row;
}

struct AuditRow {
  long m = 0;
  // (1) er_m + er_(d-m) <= mu, and 2 er_m <= mu when 2m <= d
  std::size_t er = 0;
  std::size_t er_dual = 0;
  long margin1 = 0;
  bool half_bound_applies = false;
  long half_margin = 0;
  // (2) defect_m + defect_(d-m) <= mu
  long defect = 0;
  long defect_dual = 0;
  long margin2 = 0;
  // (3) M(f)_m + M(f)_(T-m) - 2 M(g)_m <= mu
  long lhs3 = 0;
  long margin3 = 0;
  bool ok = true;
};

struct AuditReport {
  bool applicable = false;
  std::string reason;  // why not applicable
  std::size_t mu = 0;
  long dual_degree = 0;
  long socle_degree = 0;
  std::vector<AuditRow> rows;
  bool ok = true;
};

// Checks the three inequalities that hold when every singularity is isolated
// and weighted homogeneous. A violated inequality marks the report not ok.
inline AuditReport audit_corollary_B(const HomogeneousPoly& f,
                                     const std::vector<SingularPointRecord>& records, long m_lo,
                                     long m_hi) {
  AuditReport rep;
  rep.mu = total_mu(records);
  rep.dual_degree = duality_degree(f);
  rep.socle_degree = socle_degree(f);
  for (const auto& r : records)
    if (!r.is_wh) {
      rep.reason = "not all singularities are weighted homogeneous";
      return rep;
    }
  rep.applicable = true;
  const long mu = static_cast<long>(rep.mu);
  const long d = rep.dual_degree;
  const unsigned n = static_cast<unsigned>(f.num_vars()) - 1;
  auto defect_at = [&](long k) {
    return mu - static_cast<long>(ideal_piece_dim(f, records, k).quotient);
  };
  for (long m = m_lo; m <= m_hi; ++m) {
    AuditRow row;
    row.m = m;
    row.er = er_dim(f, m);
    row.er_dual = er_dim(f, d - m);
    row.margin1 = mu - static_cast<long>(row.er + row.er_dual);
    row.half_bound_applies = 2 * m <= d;
    row.half_margin = mu - 2 * static_cast<long>(row.er);
    row.defect = defect_at(m);
    row.defect_dual = defect_at(d - m);
    row.margin2 = mu - (row.defect + row.defect_dual);
    row.lhs3 = static_cast<long>(milnor_dim(f, m)) +
               static_cast<long>(milnor_dim(f, rep.socle_degree - m)) -
               2 * static_cast<long>(smooth_hilbert(n, f.degree(), m));
    row.margin3 = mu - row.lhs3;
    row.ok = row.margin1 >= 0 && row.margin2 >= 0 && row.margin3 >= 0 &&
             (!row.half_bound_applies || row.half_margin >= 0);
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace jacsyz
