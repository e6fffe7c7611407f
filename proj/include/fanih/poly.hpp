#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fanih/linalg.hpp"
#include "fanih/rational.hpp"

namespace fanih {

/// Exponent vector.
using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m);

/// Degree-lexicographic order: larger total degree first, then lexicographic
/// with x1 > x2 > ...
struct DegLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial in a fixed number of variables. Degrees reported by
/// degree() are doubled: a linear form has degree 2.
class Poly {
 public:
  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly linear(const Vec& coeffs);
  static Poly monomial(const Monomial& m, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, Rational, DegLex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Paper degree of the leading term; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  /// Coefficient of the constant monomial.
  Rational constant_term() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  void add_term(const Monomial& m, const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Substitutes x_i -> sum_j m(i, j) y_j. The result has m.cols() variables.
  Poly substitute(const Matrix& m) const;
  Rational evaluate(const Vec& point) const;

  /// Human readable form such as "2*x1^2*x2 - 1/3*x3".
  std::string to_string() const;

 private:
  std::size_t nvars_;
  std::map<Monomial, Rational, DegLex> terms_;
};

/// All monomials of total degree k in nvars variables, in DegLex order.
const std::vector<Monomial>& monomials(std::size_t nvars, unsigned k);
std::size_t monomial_index(std::size_t nvars, const Monomial& m);

/// dim of the homogeneous part of degree q of the polynomial ring.
std::size_t poly_dim(std::size_t nvars, int q);

/// Coefficient vector of the degree-q part of p over monomials(nvars, q/2).
Vec coefficients(const Poly& p, int q);
Poly from_coefficients(std::size_t nvars, int q, const Vec& c);

}  // namespace fanih
