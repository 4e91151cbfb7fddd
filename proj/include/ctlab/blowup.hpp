#ifndef CTLAB_BLOWUP_HPP
#define CTLAB_BLOWUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/polynomial.hpp"
#include "ctlab/substitution.hpp"

namespace ctlab {

/// Cyclic group action mu_order(residues) on affine coordinates.
struct QuotientAction {
  std::int64_t order = 1;
  std::vector<std::int64_t> residues;  // each in [0, order)

  /// Reduces the raw residues mod order.
  static QuotientAction make(std::int64_t order, const std::vector<std::int64_t>& raw);
  static QuotientAction trivial(std::size_t n) { return make(1, std::vector<std::int64_t>(n, 0)); }

  bool is_trivial() const noexcept { return order == 1; }
  /// Residue of the monomial x^e.
  std::int64_t monomial_residue(const ExponentVector& e) const;

  friend bool operator==(const QuotientAction&, const QuotientAction&) = default;
};

/// "mu_3(2,2,1)" from reduced residues, or "trivial".
std::string to_string(const QuotientAction& action);
/// Prints with explicit labels, e.g. "mu_3(-1,2,1)".
std::string format_action(std::int64_t order, const std::vector<std::int64_t>& labels);

/// One affine chart U_i of an integral weighted blowup of affine n-space.
/// Chart coordinates reuse the ambient names.
struct ChartTransform {
  Weight weight;
  std::size_t chart_index = 0;
  Substitution map;
  QuotientAction action;
  /// Residue labels in the customary form: -1 at the chart index, alpha_j
  /// elsewhere (congruent to `action.residues` mod the order).
  std::vector<std::int64_t> action_labels;

  /// "U_x".
  std::string name() const;
  /// "mu_3(-1,2,1)" or "trivial".
  std::string action_string() const;
};

/// x_j -> x_j * x_i^alpha_j (j != i), x_i -> x_i^alpha_i, acted on by
/// mu_{alpha_i}(alpha_1, .., -1, .., alpha_n). Throws UnsupportedChart for
/// orbifold weights.
ChartTransform chart_map(const Weight& w, std::size_t i, const Variables& variables);

struct StrictTransformResult {
  Polynomial strict;
  /// v_alpha(p); the power of x_i divided out.
  Rational exceptional_multiplicity;
  ChartTransform chart;
};

StrictTransformResult strict_transform(const Polynomial& p, const Weight& w, std::size_t i);

/// Strict transform with x_i = 0, as a polynomial in the other n-1 variables.
Polynomial exceptional_restriction(const Polynomial& p, const Weight& w, std::size_t i);

/// a(E, K) for the weighted blowup of smooth n-space: |alpha| - 1.
Rational discrepancy_smooth(const Weight& w);
/// a(G, K_X) for X = {phi = 0}: |alpha| - 1 - v_alpha(phi).
Rational discrepancy_hypersurface(const Weight& w, const Polynomial& phi);

struct AmbientGerm {
  enum class Kind { SmoothAffine, Hypersurface, CyclicQuotient };

  Kind kind = Kind::SmoothAffine;
  std::size_t dimension = 3;
  Polynomial phi;          // Hypersurface only
  QuotientAction action;   // CyclicQuotient only

  static AmbientGerm smooth(std::size_t n);
  static AmbientGerm hypersurface(Polynomial phi);
  static AmbientGerm cyclic_quotient(QuotientAction action);

  /// Number of coordinates a weight for this ambient must have.
  std::size_t coordinate_count() const;
  std::string kind_name() const;
};

/// a(G, K_X) for the weight on the given ambient.
Rational ambient_discrepancy(const Weight& w, const AmbientGerm& ambient);
/// a(G, K_X + cS) = a(G, K_X) - c v_alpha(psi).
Rational pair_discrepancy(const Weight& w, const AmbientGerm& ambient, const Polynomial& psi,
                          const Rational& c);
/// a(G, K_X) / v_alpha(psi). Throws PreconditionError when v_alpha(psi) = 0.
Rational threshold_upper_bound(const Weight& w, const AmbientGerm& ambient, const Polynomial& psi);

struct AdmissibilityVerdict {
  bool admissible = false;
  std::size_t witness_chart = 0;
  Polynomial witness_factor;   // in the chart coordinates minus x_i
  bool generic_smoothness_checked = false;
  /// Sample point (all chart coordinates, x_i = 0) used for the gradient check.
  std::vector<Rational> sample_point;
};

/// Scans every chart for a reduced, non-monomial component of E cap X_alpha.
AdmissibilityVerdict is_admissible(const Weight& w, const Polynomial& phi);

/// Necessary terminality probe: sum alpha_i - 1 > v_alpha(phi).
bool reid_weight_test(const Polynomial& phi, const Weight& w);

/// For a chart whose strict transform vanishes at the chart origin: the
/// action restricted to the hypersurface germ there. Coordinates in which the
/// strict transform has a linear term are eliminated. Returns nullopt when the
/// origin is not on the strict transform or the germ is not smooth there.
struct OriginQuotient {
  QuotientAction action;
  std::vector<std::int64_t> labels;   // -1 kept at the chart index
  Variables coordinates;              // surviving coordinates
};
std::optional<OriginQuotient> chart_origin_quotient(const StrictTransformResult& st);

/// 1/r(a, -a, b) up to permutation with gcd(a, r) = gcd(b, r) = 1: the
/// terminal cyclic quotient singularities of dimension three.
bool is_terminal_cyclic_quotient(const QuotientAction& action);

}  // namespace ctlab

#endif
