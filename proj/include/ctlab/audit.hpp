#ifndef CTLAB_AUDIT_HPP
#define CTLAB_AUDIT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/classify.hpp"
#include "ctlab/threshold.hpp"

namespace ctlab {

inline constexpr std::uint64_t kDefaultAuditSeed = 1;

struct CorpusEntry {
  PairGerm pair;
  std::string family;   // generator label, empty for user input
};

/// Seeded corpus: perturbed normal forms of the three non Du Val cases in a
/// smooth ambient (some after a random linear change), the family
/// x^2 + y^3 + z^d for d = 6..30, and perturbed hypersurface instances of the
/// Gorenstein case tree. Perturbations sit strictly above the case-defining
/// jet, so the case of each entry is known by construction.
std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, int per_case = 70);

/// One expression per line; '#' starts a comment. A line
/// "# ambient: smooth" or "# ambient: hypersurface" switches the ambient for
/// the following lines. Smooth lines hold psi in x, y, z; hypersurface lines
/// hold "phi ; psi" in x, y, z, t. Throws ParseError with the line number.
std::vector<CorpusEntry> parse_corpus(const std::string& text);

struct AuditEntry {
  enum class Status { CtOne, Bound, Exact, Undetermined, Unhandled };

  CorpusEntry input;
  GermClass germ;         // classification of S
  Status status = Status::Undetermined;
  std::optional<Rational> bound;
  std::optional<Weight> witness;
  std::string method;     // "oracle", "tree", "search", "certificate"
  std::string certificate;
  std::string note;

  std::string status_name() const;
};

struct GapAuditReport {
  std::vector<AuditEntry> entries;
  std::vector<std::size_t> gap_violations;         // bound strictly inside (5/6, 1)
  std::vector<std::size_t> gorenstein_violations;  // hypersurface tree bound above 4/5
  std::vector<std::size_t> undetermined;           // Undetermined or Unhandled
  std::vector<std::size_t> extremal;               // bound exactly 5/6
  std::optional<Rational> epsilon_estimate;        // 1 - max bound over non Du Val entries
  std::optional<std::uint64_t> seed;
  int cap = kDefaultSearchCap;
  int jet_cap = kDefaultJetCap;
};

/// Bounds every entry (case tree first, search as fallback) and collects
/// the entries that would contradict the gap 5/6 < c < 1.
GapAuditReport gap_audit(const std::vector<CorpusEntry>& corpus, int cap = kDefaultSearchCap,
                         int jet_cap = kDefaultJetCap);
GapAuditReport gap_audit(const std::vector<PairGerm>& corpus, int cap = kDefaultSearchCap,
                         int jet_cap = kDefaultJetCap);

/// gap_audit(generate_corpus(seed)) with the seed recorded.
GapAuditReport seeded_gap_audit(std::uint64_t seed, int cap = kDefaultSearchCap, int jet_cap = kDefaultJetCap);

}  // namespace ctlab

#endif
