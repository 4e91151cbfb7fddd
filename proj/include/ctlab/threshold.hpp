#ifndef CTLAB_THRESHOLD_HPP
#define CTLAB_THRESHOLD_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctlab/blowup.hpp"
#include "ctlab/classify.hpp"
#include "ctlab/polynomial.hpp"

namespace ctlab {

/// Default bound on the weight sum for search_upper_bound.
inline constexpr int kDefaultSearchCap = 12;

/// A divisor S = {psi = 0} on an ambient germ.
struct PairGerm {
  AmbientGerm ambient;
  Polynomial psi;
};

struct ChartEvidence {
  std::string chart;        // "U_x"
  std::string action;       // "mu_3(-1,2,1)" or "trivial"
  Polynomial restriction;   // exceptional restriction of phi (hypersurface) or psi (smooth)
};

struct BoundReport {
  Rational bound;
  Weight witness;
  Rational discrepancy;     // a(G, K_X)
  Rational valuation;       // v_alpha(psi)
  /// nullopt for a smooth ambient.
  std::optional<AdmissibilityVerdict> admissibility;
  std::vector<ChartEvidence> per_chart_evidence;
  int search_cap = 0;       // 0 for case-tree bounds
};

/// bound = a(G, K_X) / v_alpha(psi) with chart evidence filled in.
BoundReport make_bound_report(const Weight& w, const PairGerm& pair,
                              std::optional<AdmissibilityVerdict> admissibility, int search_cap);

/// Primitive positive integer weights with n entries and sum <= cap, by
/// increasing sum and then lexicographically.
std::vector<Weight> enumerate_weights(std::size_t n, int cap);

struct SearchOutcome {
  std::optional<BoundReport> report;  // nullopt: NoWitness
  std::size_t weights_examined = 0;

  bool no_witness() const noexcept { return !report.has_value(); }
};

/// Minimum of a(G, K_X) / v_alpha(psi) over the enumerated weights; a
/// hypersurface ambient only counts admissible weights. The first weight in
/// enumeration order attaining the minimum is the witness.
SearchOutcome search_upper_bound(const PairGerm& pair, int cap = kDefaultSearchCap);

struct CaseDecomposition {
  std::string tag;      // case tag of psi (smooth ambient) or eta (hypersurface)
  std::string branch;   // branch of the case tree that produced the weight
  Polynomial input;
  std::optional<Polynomial> eta, xi, zeta, lambda;
  std::vector<std::pair<std::string, Rational>> deltas;
  /// replay(truncate(input, trace.jet_cap), trace.steps) == trace.final.
  NormalFormTrace normalizing_trace;
};

struct CaseBound {
  CaseDecomposition decomposition;
  BoundReport report;   // witness weight in the normalized coordinates
};

struct SmoothCaseResult {
  GermClass germ;
  std::optional<CaseBound> bound;  // nullopt when psi is smooth or Du Val

  bool du_val_or_smooth() const noexcept { return !bound.has_value(); }
};

/// Case tree for a smooth threefold ambient. Throws UndeterminedError when
/// the classification of psi is undecided at jet_cap.
SmoothCaseResult smooth_case_bound(const Polynomial& psi, int jet_cap = kDefaultJetCap);

struct GorensteinCaseResult {
  GermClass eta_class;              // classification of S = {phi = t = 0}
  std::optional<CaseBound> bound;   // nullopt: Unhandled
  std::string unhandled_reason;

  bool unhandled() const noexcept { return !bound.has_value(); }
};

/// Case tree for X = {phi = 0} in four variables with ord0 phi = 2. The last
/// variable is t, and psi must be a linear form with a nonzero t
/// coefficient; other linear forms are moved to t first. Every emitted weight
/// is checked for admissibility on the concrete input.
GorensteinCaseResult gorenstein_case_bound(const Polynomial& phi, const Polynomial& psi,
                                           int jet_cap = kDefaultJetCap);

struct QuotientCaseResult {
  Weight weight;              // (a, r-a, 1)/r
  Rational discrepancy;       // 1/r
  Rational valuation;
  std::optional<Rational> bound;   // nullopt: the DuValA(r-1) branch
  std::int64_t psi_residue = 0;

  bool du_val() const noexcept { return !bound.has_value(); }
  /// r - 1 in the DuValA branch.
  std::int64_t du_val_index() const noexcept { return weight.index() - 1; }
};

/// Terminal quotient 1/r(a, -a, 1) with divisor {psi = 0} in (x, y, z).
QuotientCaseResult quotient_case_bound(std::int64_t r, std::int64_t a, const Polynomial& psi);

struct IndexData {
  enum class Series { MainSeries, CAx4 };

  std::int64_t r = 1;
  std::vector<std::int64_t> coordinate_residues;  // x1..x4
  std::int64_t phi_residue = 0;
  std::optional<std::int64_t> psi_residue;
  Series series = Series::MainSeries;
  std::int64_t a = 1;                             // MainSeries only
};

/// Matches the residues against the two series patterns; nullopt if neither.
std::optional<IndexData> infer_series(std::int64_t r, const std::vector<std::int64_t>& residues,
                                      std::int64_t phi_residue,
                                      std::optional<std::int64_t> psi_residue = std::nullopt);

struct ResidueAudit {
  std::string series;             // "MainSeries(a=1)" or "cAx/4"
  std::int64_t lhs = 0;           // wt(x1x2x3x4) - wt(phi) mod r
  std::int64_t x3_residue = 0;
  bool congruence_holds = false;
  std::int64_t lambda_residue = 0;
  /// Set when a psi residue was supplied; true when wt psi == wt lambda.
  std::optional<bool> anticanonical;
};

/// Throws PreconditionError when the residues do not match the series.
ResidueAudit residue_audit(const IndexData& data);

}  // namespace ctlab

#endif
