#ifndef CTLAB_POLYNOMIAL_HPP
#define CTLAB_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctlab/rational.hpp"

namespace ctlab {

using Variables = std::vector<std::string>;
using ExponentVector = std::vector<int>;

int total_degree(const ExponentVector& e);

/// Graded lexicographic order, greatest first. This is the monomial order
/// used for leading terms and exact division.
struct GradedLexGreater {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

/// A weight vector alpha, optionally divided by an index r (orbifold weight
/// (1/r)(a_1,...,a_n)). Numerators are positive and gcd(a_1,...,a_n,r) = 1.
class Weight {
public:
  explicit Weight(std::vector<std::int64_t> numerators, std::int64_t index = 1);

  std::size_t size() const noexcept { return numerators_.size(); }
  std::int64_t numerator(std::size_t i) const { return numerators_.at(i); }
  const std::vector<std::int64_t>& numerators() const noexcept { return numerators_; }
  std::int64_t index() const noexcept { return index_; }
  bool is_integral() const noexcept { return index_ == 1; }

  /// alpha_i as a rational number.
  Rational operator[](std::size_t i) const;
  /// |alpha| = sum of alpha_i.
  Rational total() const;
  /// Weighted degree of a monomial, sum alpha_i m_i.
  Rational degree_of(const ExponentVector& e) const;

  /// "(3,2,1)" or "1/5(3,2,1)".
  std::string to_string() const;

  friend bool operator==(const Weight&, const Weight&) = default;

private:
  std::vector<std::int64_t> numerators_;
  std::int64_t index_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in graded-lex order with the leading term first; zero
/// coefficients are never stored. Every polynomial carries its ordered list of
/// variable names, and binary operations require equal lists.
class Polynomial {
public:
  using TermMap = std::map<ExponentVector, Rational, GradedLexGreater>;

  Polynomial() = default;
  explicit Polynomial(Variables variables);

  static Polynomial constant(Variables variables, const Rational& c);
  static Polynomial variable(Variables variables, std::size_t index);
  static Polynomial variable(Variables variables, const std::string& name);
  static Polynomial monomial(Variables variables, ExponentVector exponents,
                             const Rational& c = 1);

  const Variables& variables() const noexcept { return variables_; }
  std::size_t arity() const noexcept { return variables_.size(); }
  /// Position of `name` in the variable list; throws PreconditionError.
  std::size_t index_of(const std::string& name) const;

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// A single term (a scalar multiple of a monomial), constants included.
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Rational coefficient(const ExponentVector& e) const;
  Rational constant_term() const;
  /// Leading term in graded-lex order; throws on the zero polynomial.
  const TermMap::value_type& leading_term() const;

  /// Maximum total degree; -1 for zero.
  int degree() const;
  /// Degree in one variable; -1 for zero.
  int degree_in(std::size_t var) const;
  /// True when variable `var` occurs in some term.
  bool depends_on(std::size_t var) const;

  /// Adds c * x^e in place.
  void add_term(const ExponentVector& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

  /// Same polynomial with a different (same-length) list of variable names.
  Polynomial renamed(Variables variables) const;

  /// Canonical text: ascending total degree, lex-descending within a degree,
  /// explicit '*' and '^'.
  std::string to_string() const;

private:
  void require_same_context(const Polynomial& other) const;

  Variables variables_;
  TermMap terms_;
};

Polynomial pow(const Polynomial& p, unsigned exponent);

/// Product truncated to total degree <= cap. Sets `*dropped` when a nonzero
/// contribution was discarded.
Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, int cap,
                              bool* dropped = nullptr);
/// Terms of total degree <= cap.
Polynomial truncate(const Polynomial& p, int cap);

/// Order of vanishing at the origin; infinity for zero.
Order ord0(const Polynomial& p);
/// Homogeneous component of total degree d.
Polynomial homogeneous_part(const Polynomial& p, int d);

/// v_alpha(p): minimum weighted degree over the terms; infinity for zero.
Valuation weighted_valuation(const Polynomial& p, const Weight& w);
/// Sum of the terms whose weighted degree equals d.
Polynomial weighted_part(const Polynomial& p, const Weight& w, const Rational& d);
/// Lowest weighted-degree part (zero for zero).
Polynomial weighted_initial_part(const Polynomial& p, const Weight& w);

Polynomial derivative(const Polynomial& p, std::size_t var);
Polynomial derivative(const Polynomial& p, const std::string& var);

/// Substitutes the constant c for one variable (the variable stays in the
/// context).
Polynomial evaluate_at(const Polynomial& p, std::size_t var, const Rational& c);
/// Full evaluation at a point.
Rational evaluate(const Polynomial& p, const std::vector<Rational>& point);

/// Removes variable `var` from the context. The polynomial must not depend
/// on it.
Polynomial drop_variable(const Polynomial& p, std::size_t var);
/// Re-expresses p in a larger context (every variable of p must appear).
Polynomial embed(const Polynomial& p, const Variables& target);

/// Coefficients of p viewed as a univariate polynomial in `var`; entry k is
/// the coefficient of var^k (a polynomial in the same context, free of var).
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);
/// Inverse of coefficients_in.
Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var,
                             const Variables& variables);

/// Componentwise minimum exponent over all terms (the monomial content).
ExponentVector monomial_content(const Polynomial& p);
/// p divided by x^e; every term must be divisible.
Polynomial divide_by_monomial(const Polynomial& p, const ExponentVector& e);

}  // namespace ctlab

#endif
