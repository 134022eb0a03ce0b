#pragma once

// Polynomial expressions and problem files.
//
// Expression grammar (explicit '*' required, no implicit multiplication):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*          '/' only by nonzero constants
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | variable | '(' expr ')'
//
// Problem file: '#' starts a comment; sections
//
//   vars: x y z w            (spaces or commas)
//   f: x*y*z + x*y*w + ...   (may continue on following lines)
//   points:
//   [1,0,0,0]                (one projective point per line, rational entries)

#include <cctype>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jacsyz/errors.hpp"
#include "jacsyz/exactalg.hpp"
#include "jacsyz/polyring.hpp"

namespace jacsyz {

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw input_error("syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const Polynomial d = unary();
        if (d.is_zero() || d.max_degree() != 0) {
          pos_ = at;
          fail("division is only allowed by a nonzero constant");
        }
        p *= 1 / d.coefficient(Exponents(vars_.size(), 0));
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(vars_.size(), Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

inline Polynomial parse_expression(std::string_view text, const std::vector<std::string>& vars) {
  return detail::ExpressionParser(text, vars).parse();
}

// Rejects non-homogeneous input, listing the terms whose degree differs from
// that of the leading term.
inline HomogeneousPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  Polynomial p = parse_expression(text, vars);
  if (!p.is_homogeneous()) {
    const unsigned d = p.max_degree();
    Polynomial offending(p.num_vars());
    for (const auto& [e, c] : p.terms())
      if (total_degree(e) != d) offending.add_term(e, c);
    throw input_error("polynomial is not homogeneous: leading degree " + std::to_string(d) +
                      ", offending terms: " + to_string(offending, vars));
  }
  return HomogeneousPoly::from(std::move(p));
}

// "[a, b/c, ...]" with integer or p/q entries.
inline RatVector parse_point(std::string_view text) {
  const std::string t = detail::trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw input_error("point must be written as [c_0, ..., c_n]: '" + t + "'");
  RatVector out;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string s = detail::trim(item);
    const auto slash = s.find('/');
    try {
      if (s.empty()) throw std::invalid_argument("empty");
      for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
          throw std::invalid_argument("bad char");
      if (slash == std::string::npos) {
        out.emplace_back(Integer(s));
      } else {
        out.push_back(make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1))));
      }
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("bad coordinate '" + s + "' in point " + t);
    }
  }
  return out;
}

inline std::string point_string(const RatVector& q) {
  std::string s = "[";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) s += ",";
    s += q[i].get_str();
  }
  return s + "]";
}

struct ProblemInput {
  std::vector<std::string> variables;
  std::string f_text;
  HomogeneousPoly f;
  std::vector<RatVector> singular_points;
};

// Each point must be a nonzero vector on which f and all partials vanish.
inline void validate_points(const HomogeneousPoly& f, const std::vector<RatVector>& points) {
  const auto partials = gradient(f);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& q = points[i];
    const std::string tag = "point #" + std::to_string(i + 1) + " " + point_string(q);
    if (q.size() != f.num_vars()) throw input_error(tag + " has the wrong number of coordinates");
    bool nonzero = false;
    for (const auto& c : q) nonzero = nonzero || sgn(c) != 0;
    if (!nonzero) throw input_error(tag + " is the zero vector");
    if (sgn(f.evaluate(q)) != 0) throw input_error(tag + " does not lie on f = 0");
    for (std::size_t j = 0; j < partials.size(); ++j)
      if (sgn(partials[j].evaluate(q)) != 0)
        throw input_error(tag + " is not singular (partial derivative " + std::to_string(j) +
                          " does not vanish)");
  }
}

inline ProblemInput parse_problem(std::istream& in) {
  ProblemInput p;
  enum class Section { none, vars, f, points } section = Section::none;
  std::string line;
  std::size_t line_no = 0;
  bool have_vars = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    auto starts = [&](std::string_view key) { return t.rfind(key, 0) == 0; };
    if (starts("vars:")) {
      section = Section::vars;
      t = detail::trim(t.substr(5));
      for (char& c : t)
        if (c == ',') c = ' ';
      std::stringstream ss(t);
      std::string name;
      while (ss >> name) p.variables.push_back(name);
      have_vars = true;
      continue;
    }
    if (starts("f:")) {
      section = Section::f;
      p.f_text = detail::trim(t.substr(2));
      continue;
    }
    if (starts("points:")) {
      section = Section::points;
      t = detail::trim(t.substr(7));
      if (t.empty()) continue;
    }
    switch (section) {
      case Section::f:
        p.f_text += " " + t;
        break;
      case Section::points:
        p.singular_points.push_back(parse_point(t));
        break;
      default:
        throw input_error("line " + std::to_string(line_no) + ": text outside a section");
    }
  }
  if (!have_vars || p.variables.size() < 2) throw input_error("missing or too short 'vars:' section");
  if (p.f_text.empty()) throw input_error("missing 'f:' section");
  p.f = parse_poly(p.f_text, p.variables);
  if (p.f.is_zero()) throw input_error("f is the zero polynomial");
  if (p.f.degree() < 2) throw input_error("f must have degree at least 2");
  validate_points(p.f, p.singular_points);
  return p;
}

inline ProblemInput parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file '" + path + "'");
  return parse_problem(in);
}

}  // namespace jacsyz
