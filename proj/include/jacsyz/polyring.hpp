#pragma once

// Sparse polynomials over Q in a fixed number of variables.
//
// Terms are kept in graded reverse lexicographic order, largest first, with
// x_0 > x_1 > ... > x_n. All graded-piece matrices in this library index their
// columns by `monomial_basis`, which uses the same order, so bases and
// printed output are reproducible.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacsyz/errors.hpp"
#include "jacsyz/exactalg.hpp"

namespace jacsyz {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

// a before b iff a > b in grevlex.
struct GrevlexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

namespace detail {
inline void enumerate_exponents(std::size_t var, unsigned remaining, Exponents& cur,
                                std::vector<Exponents>& out) {
  if (var + 1 == cur.size()) {
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    cur[var] = e;
    enumerate_exponents(var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}
}  // namespace detail

// All exponent vectors of the given total degree, grevlex descending.
inline std::vector<Exponents> monomial_basis(std::size_t num_vars, unsigned degree) {
  std::vector<Exponents> out;
  if (num_vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents cur(num_vars, 0);
  detail::enumerate_exponents(0, degree, cur, out);
  std::sort(out.begin(), out.end(), GrevlexDescending{});
  return out;
}

// Column lookup for a list of monomials.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  explicit MonomialIndex(std::vector<Exponents> monomials) : monomials_(std::move(monomials)) {
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
  }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Exponents>& monomials() const { return monomials_; }
  const Exponents& operator[](std::size_t i) const { return monomials_[i]; }
  // size() when absent.
  std::size_t find(const Exponents& e) const {
    auto it = index_.find(e);
    return it == index_.end() ? monomials_.size() : it->second;
  }

 private:
  std::vector<Exponents> monomials_;
  std::map<Exponents, std::size_t> index_;
};

class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, GrevlexDescending>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c) {
    Polynomial p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t num_vars, std::size_t i) {
    Exponents e(num_vars, 0);
    e.at(i) = 1;
    return monomial(std::move(e), 1);
  }
  static Polynomial monomial(Exponents e, const Rational& c) {
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(Exponents e, const Rational& c) {
    if (e.size() != num_vars_) throw input_error("exponent vector has wrong length");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  // Largest total degree; 0 for the zero polynomial.
  unsigned max_degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
  }
  // Smallest total degree (the order at the origin); 0 for the zero polynomial.
  unsigned order() const {
    return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
  }

  bool is_homogeneous() const { return terms_.empty() || max_degree() == order(); }

  Polynomial homogeneous_part(unsigned degree) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == degree) out.terms_.emplace(e, c);
    return out;
  }

  // Terms of total degree < bound.
  Polynomial truncated_below(unsigned bound) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) < bound) out.terms_.emplace(e, c);
    return out;
  }

  Polynomial derivative(std::size_t i) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(i) == 0) continue;
      Exponents d = e;
      --d[i];
      out.add_term(std::move(d), c * e[i]);
    }
    return out;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != num_vars_) throw input_error("point has wrong number of coordinates");
    Rational acc = 0;
    Rational term;
    for (const auto& [e, c] : terms_) {
      term = c;
      for (std::size_t i = 0; i < num_vars_ && sgn(term) != 0; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
      acc += term;
    }
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial out(a.num_vars_);
    Exponents e(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(num_vars_, 1);
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw input_error("polynomials live in different rings");
  }

  std::size_t num_vars_ = 0;
  Terms terms_;
};

using AffinePoly = Polynomial;

// A form of fixed degree. The zero form keeps a nominal degree.
class HomogeneousPoly {
 public:
  HomogeneousPoly() = default;
  HomogeneousPoly(Polynomial p, unsigned degree) : poly_(std::move(p)), degree_(degree) {
    for (const auto& [e, c] : poly_.terms())
      if (total_degree(e) != degree_)
        throw input_error("term of degree " + std::to_string(total_degree(e)) +
                          " in a form of degree " + std::to_string(degree_));
  }

  // Degree read off the terms.
  static HomogeneousPoly from(Polynomial p) {
    if (!p.is_homogeneous()) throw input_error("polynomial is not homogeneous");
    const unsigned d = p.max_degree();
    return HomogeneousPoly(std::move(p), d);
  }
  static HomogeneousPoly zero(std::size_t num_vars, unsigned degree) {
    return HomogeneousPoly(Polynomial(num_vars), degree);
  }

  const Polynomial& poly() const { return poly_; }
  std::size_t num_vars() const { return poly_.num_vars(); }
  unsigned degree() const { return degree_; }
  bool is_zero() const { return poly_.is_zero(); }

  Rational evaluate(std::span<const Rational> point) const { return poly_.evaluate(point); }

  friend HomogeneousPoly operator+(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    return HomogeneousPoly(a.poly_ + b.poly_, common_degree(a, b));
  }
  friend HomogeneousPoly operator-(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    return HomogeneousPoly(a.poly_ - b.poly_, common_degree(a, b));
  }
  friend HomogeneousPoly operator-(const HomogeneousPoly& a) {
    return HomogeneousPoly(-a.poly_, a.degree_);
  }
  friend HomogeneousPoly operator*(const Rational& s, const HomogeneousPoly& a) {
    return HomogeneousPoly(s * a.poly_, a.degree_);
  }
  friend HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    return HomogeneousPoly(a.poly_ * b.poly_, a.degree_ + b.degree_);
  }

  // Degrees are compared only for nonzero forms.
  friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.poly_ == b.poly_;
    return a.degree_ == b.degree_ && a.poly_ == b.poly_;
  }

 private:
  static unsigned common_degree(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    if (a.is_zero()) return b.degree_;
    if (b.is_zero()) return a.degree_;
    if (a.degree_ != b.degree_) throw input_error("adding forms of different degrees");
    return a.degree_;
  }

  Polynomial poly_;
  unsigned degree_ = 0;
};

inline HomogeneousPoly partial_derivative(const HomogeneousPoly& p, std::size_t i) {
  if (i >= p.num_vars()) throw input_error("variable index out of range");
  if (p.degree() == 0) return HomogeneousPoly::zero(p.num_vars(), 0);
  return HomogeneousPoly(p.poly().derivative(i), p.degree() - 1);
}

inline std::vector<HomogeneousPoly> gradient(const HomogeneousPoly& p) {
  std::vector<HomogeneousPoly> out;
  out.reserve(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i) out.push_back(partial_derivative(p, i));
  return out;
}

inline Rational evaluate(const HomogeneousPoly& p, std::span<const Rational> point) {
  return p.evaluate(point);
}

// Sum_i x_i * dp/dx_i == degree * p for an arbitrary term set.
inline bool euler_check(const Polynomial& p, unsigned degree) {
  Polynomial lhs(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i)
    lhs += Polynomial::variable(p.num_vars(), i) * p.derivative(i);
  return lhs == Rational(degree) * p;
}

inline bool euler_check(const HomogeneousPoly& f) { return euler_check(f.poly(), f.degree()); }

// p(images[0], ..., images[k-1]).
inline Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images) {
  if (images.size() != p.num_vars()) throw input_error("substitution arity mismatch");
  if (images.empty()) return p;
  const std::size_t target_vars = images.front().num_vars();
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    powers[i].push_back(Polynomial::constant(target_vars, 1));
  Polynomial out(target_vars);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target_vars, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
      if (e[i] > 0) term = term * powers[i][e[i]];
    }
    out += term;
  }
  return out;
}

// f(A x): x_i is replaced by sum_j A(i, j) x_j.
inline HomogeneousPoly linear_change(const HomogeneousPoly& f, const RatMatrix& a) {
  const std::size_t v = f.num_vars();
  if (a.rows() != v || a.cols() != v) throw input_error("coordinate change has wrong size");
  if (rank(a) != v) throw input_error("non-invertible coordinate change");
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < v; ++i) {
    Polynomial li(v);
    for (std::size_t j = 0; j < v; ++j) {
      Exponents e(v, 0);
      e[j] = 1;
      li.add_term(std::move(e), a(i, j));
    }
    images.push_back(std::move(li));
  }
  return HomogeneousPoly(substitute(f.poly(), images), f.degree());
}

// The form in the remaining variables obtained by setting x_c = 0.
inline HomogeneousPoly restrict_to_hyperplane(const HomogeneousPoly& f, std::size_t c) {
  if (c >= f.num_vars()) throw input_error("variable index out of range");
  Polynomial out(f.num_vars() - 1);
  for (const auto& [e, coef] : f.poly().terms()) {
    if (e[c] != 0) continue;
    Exponents r;
    r.reserve(e.size() - 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != c) r.push_back(e[i]);
    out.add_term(std::move(r), coef);
  }
  return HomogeneousPoly(std::move(out), f.degree());
}

// Dehomogenize at x_c = 1 (after scaling q so that q_c = 1) and translate the
// image of q to the origin. Local variables are the x_i, i != c, in order.
inline AffinePoly local_germ(const HomogeneousPoly& f, std::size_t chart,
                             std::span<const Rational> q) {
  const std::size_t v = f.num_vars();
  if (q.size() != v) throw input_error("point has wrong number of coordinates");
  if (chart >= v) throw input_error("chart index out of range");
  if (sgn(q[chart]) == 0) throw input_error("point not in chart");
  const std::size_t n = v - 1;
  std::vector<Polynomial> images;
  images.reserve(v);
  std::size_t local = 0;
  for (std::size_t i = 0; i < v; ++i) {
    if (i == chart) {
      images.push_back(Polynomial::constant(n, 1));
      continue;
    }
    Polynomial yi = Polynomial::variable(n, local++);
    yi += Polynomial::constant(n, q[i] / q[chart]);
    images.push_back(std::move(yi));
  }
  return substitute(f.poly(), images);
}

inline RatVector coefficient_vector(const HomogeneousPoly& p, const MonomialIndex& basis) {
  RatVector v(basis.size());
  for (const auto& [e, c] : p.poly().terms()) {
    const std::size_t k = basis.find(e);
    if (k == basis.size()) throw invariant_violation("monomial outside the graded basis");
    v[k] = c;
  }
  return v;
}

inline HomogeneousPoly from_coefficients(const MonomialIndex& basis, std::span<const Rational> v,
                                         std::size_t num_vars, unsigned degree) {
  Polynomial p(num_vars);
  for (std::size_t k = 0; k < v.size(); ++k) p.add_term(basis[k], v[k]);
  return HomogeneousPoly(std::move(p), degree);
}

inline std::vector<std::string> default_variable_names(std::size_t num_vars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_vars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

// Explicit-operator syntax accepted by parse_poly, e.g. "-3/2*x^2*y+z^3".
inline std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (names.size() != p.num_vars()) throw input_error("wrong number of variable names");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (negative) {
      out += "-";
    } else if (!first) {
      out += "+";
    }
    first = false;
    const Rational mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

inline std::string to_string(const HomogeneousPoly& p, const std::vector<std::string>& names) {
  return to_string(p.poly(), names);
}

}  // namespace jacsyz
