#ifndef CTLAB_CLASSIFY_HPP
#define CTLAB_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ctlab/polynomial.hpp"
#include "ctlab/substitution.hpp"

namespace ctlab {

/// Case tags for non-Du-Val verdicts.
namespace tags {
inline constexpr const char* kOrd3Plus = "Ord3Plus";
inline constexpr const char* kCorankOneOrdEta4Plus = "CorankOne_OrdEta4Plus";
inline constexpr const char* kCorankOneCubeCase = "CorankOne_CubeCase";
}  // namespace tags

/// Reasons for Undetermined verdicts.
namespace reasons {
inline constexpr const char* kNonIsolatedJet = "NonIsolatedJet";
inline constexpr const char* kJetInsufficient = "JetInsufficient";
}  // namespace reasons

struct GermClass {
  enum class Verdict { Smooth, DuVal, NotDuVal, Undetermined };

  Verdict verdict = Verdict::Undetermined;
  char family = 0;   // 'A', 'D' or 'E' for DuVal
  int n = 0;         // A_n, D_n, E_n
  std::string tag;   // case tag (NotDuVal) or reason (Undetermined)
  int jet_cap = 0;   // working jet the verdict was reached at

  static GermClass smooth() { return {Verdict::Smooth, 0, 0, {}, 0}; }
  static GermClass du_val(char family, int n) { return {Verdict::DuVal, family, n, {}, 0}; }
  static GermClass not_du_val(std::string tag) { return {Verdict::NotDuVal, 0, 0, std::move(tag), 0}; }
  static GermClass undetermined(std::string reason) { return {Verdict::Undetermined, 0, 0, std::move(reason), 0}; }

  bool is_smooth_or_du_val() const noexcept { return verdict == Verdict::Smooth || verdict == Verdict::DuVal; }
  /// "A3", "D5", "E6"; empty unless DuVal.
  std::string type() const;
  std::string verdict_name() const;
  /// "Smooth", "DuVal E6", "NotDuVal Ord3Plus", "Undetermined NonIsolatedJet".
  std::string to_string() const;

  friend bool operator==(const GermClass& a, const GermClass& b) {
    return a.verdict == b.verdict && a.family == b.family && a.n == b.n && a.tag == b.tag;
  }
};

struct NormalFormTrace {
  std::vector<Substitution> steps;
  Polynomial final;
  int jet_cap = kDefaultJetCap;
};

/// Rank of the quadratic part. Throws PreconditionError if psi(0) != 0.
int quadratic_rank(const Polynomial& psi);

/// Splits off squares one variable at a time until the quadratic part is
/// diagonal: final = sum c_i v_i^2 + g(other variables), ord g >= 3, exact up
/// to jet_cap. Throws PreconditionError for rank 0.
NormalFormTrace morse_split(const Polynomial& psi, int jet_cap);

/// Splits c v^2 off for one variable v with a nonzero square coefficient:
/// every other term involving v is removed, exact up to jet_cap.
NormalFormTrace split_square(const Polynomial& p, std::size_t v, int jet_cap);

/// L with L^3 proportional to c, normalized; nullopt when c is not the cube of
/// a linear form over C. Throws PreconditionError unless c is a homogeneous
/// cubic.
std::optional<Polynomial> cube_of_linear_form(const Polynomial& c);

/// Root multiplicities over C of a nonzero binary form, largest first.
std::vector<int> binary_root_multiplicities(const Polynomial& f);

struct Classification {
  GermClass germ;
  NormalFormTrace trace;
};

/// A-D-E recognition of the surface germ {psi = 0} at the origin. Works at a
/// jet of degree 8 first and widens up to jet_cap when the answer needs it.
Classification classify_surface_germ(const Polynomial& psi, int jet_cap = kDefaultJetCap);

/// ord0(phi) == 2. Throws PreconditionError if phi(0) != 0.
bool is_cdv_order_probe(const Polynomial& phi);

}  // namespace ctlab

#endif
