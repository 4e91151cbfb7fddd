#ifndef CTLAB_CERTIFICATE_HPP
#define CTLAB_CERTIFICATE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/blowup.hpp"
#include "ctlab/classify.hpp"
#include "ctlab/polynomial.hpp"

namespace ctlab {

/// Imported theorem: (smooth threefold germ, S) is canonical at c = 1 iff S
/// is smooth or Du Val.
inline constexpr const char* kOracleReid = "ReidThm2.6";

struct ChartRecord {
  std::string chart;             // "U_x"
  std::string map;               // chart substitution
  std::string action;            // "mu_3(-1,2,1)" or "trivial"
  Polynomial strict;             // strict transform of the blown-up equation
  Polynomial exceptional;        // strict transform on the exceptional divisor
  std::optional<Polynomial> divisor;  // strict transform of psi (hypersurface ambient)
  bool misses_origin = false;    // strict transform has a nonzero constant term
  std::optional<OriginQuotient> singular_point;
};

struct CertificateStep {
  Weight weight;
  Polynomial input;
  Rational discrepancy;          // a(G, K_X)
  Rational valuation;            // v_alpha(psi)
  Rational pair_discrepancy;     // at the certified constant
  std::vector<ChartRecord> charts;
};

struct CertificateLeaf {
  enum class Kind { SmoothMiss, Smooth, DuVal, CrepantChain };

  Kind kind = Kind::SmoothMiss;
  std::size_t step = 0;
  std::string chart;
  Polynomial germ;               // the surface germ the leaf speaks about
  GermClass germ_class;          // Smooth / DuVal leaves
  int chain_d = 0;               // CrepantChain: the S^d chain this leaf defers to
  std::string detail;

  std::string kind_name() const;
};

struct CrepantCertificate {
  std::string type;              // "crepant_chain" or "hypersurface_example"
  int d = 0;
  Rational constant;
  std::vector<CertificateStep> steps;
  std::vector<CertificateLeaf> leaves;
  std::vector<std::string> oracle_facts;
  /// Hypersurface example: every exceptional restriction is reduced and
  /// evidently irreducible.
  std::optional<bool> exceptional_irreducible;
};

/// ct(C^3, x^2 + y^3 + z^d) = 5/6 by a chain of (3,2,1) blowups, each crepant
/// at 5/6. Throws PreconditionError for d < 6.
CrepantCertificate certify_crepant_chain(int d);

/// ct(X, S) = 4/5 for X = {x^2 + y^3 + z^d + t z = 0}, S = {t = 0} via the
/// (3,2,1,5) blowup. Throws PreconditionError for d < 7.
CrepantCertificate certify_hypersurface_example(int d);

/// Re-checks every step and leaf; throws InvariantViolation on failure.
void verify_certificate(const CrepantCertificate& cert);

}  // namespace ctlab

#endif
