#ifndef CTLAB_GCD_HPP
#define CTLAB_GCD_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ctlab/polynomial.hpp"

namespace ctlab {

/// Scales p so its coefficients are coprime integers and the leading
/// coefficient (graded-lex) is positive. Zero stays zero.
Polynomial normalize(const Polynomial& p);

/// f / g when g divides f exactly, otherwise nullopt. g must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

/// True when f == c * g for some nonzero rational c.
bool proportional(const Polynomial& f, const Polynomial& g);

/// Pseudo-remainder of a by b as polynomials in `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var);

/// Content with respect to `var`: normalized gcd of the coefficients of p
/// viewed in var.
Polynomial content_in(const Polynomial& p, std::size_t var);
Polynomial primitive_part_in(const Polynomial& p, std::size_t var);

/// Normalized greatest common divisor over Q (content recursion plus
/// subresultant PRS in the last variable that occurs). gcd(0, 0) = 0.
Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g);

/// f = c * x^monomial_content * prod layer.factor^layer.multiplicity.
struct SquareFreeDecomposition {
  struct Layer {
    Polynomial factor;
    int multiplicity;
  };

  ExponentVector monomial_content;
  std::vector<Layer> layers;  // strictly increasing multiplicities

  /// x^content * prod factor^multiplicity (scalar not included).
  Polynomial reconstruct(const Variables& variables) const;
  /// Factor of the given multiplicity, or nullopt.
  std::optional<Polynomial> layer(int multiplicity) const;
  /// Layers with the monomial content folded back in: x_i^k joins the
  /// multiplicity-k layer. y^3 gives [(y, 3)].
  std::vector<Layer> full_layers(const Variables& variables) const;
};

/// Yun's algorithm applied per variable, with layers of equal multiplicity
/// merged. Throws PreconditionError for the zero polynomial.
SquareFreeDecomposition squarefree_decomposition(const Polynomial& f);

/// Sufficient irreducibility test: a primitive polynomial of degree one in
/// some variable. Returns false when undecided.
bool is_evidently_irreducible(const Polynomial& f);

}  // namespace ctlab

#endif
