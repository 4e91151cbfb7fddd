#ifndef CTLAB_SUBSTITUTION_HPP
#define CTLAB_SUBSTITUTION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctlab/polynomial.hpp"

namespace ctlab {

/// Default truncation degree for formal coordinate changes.
inline constexpr int kDefaultJetCap = 24;

/// A map x_j -> image_j. All images live in one target context. With a jet
/// cap, results are truncated to total degree <= cap.
class Substitution {
public:
  Substitution(Variables target, std::vector<std::pair<std::string, Polynomial>> images,
               std::optional<int> jet_cap = std::nullopt);

  /// x_j -> x_j for every variable.
  static Substitution identity(const Variables& variables,
                               std::optional<int> jet_cap = std::nullopt);

  /// Copy with the image of `name` replaced (or added).
  Substitution with(const std::string& name, Polynomial image) const;

  const Variables& target() const noexcept { return target_; }
  const std::vector<std::pair<std::string, Polynomial>>& images() const noexcept { return images_; }
  std::optional<int> jet_cap() const noexcept { return jet_cap_; }
  bool is_jet_level() const noexcept { return jet_cap_.has_value(); }

  /// Image of `name`; throws PreconditionError when absent.
  const Polynomial& image_of(const std::string& name) const;

  /// "{x -> x+y, y -> y}" style description.
  std::string to_string() const;

private:
  Variables target_;
  std::vector<std::pair<std::string, Polynomial>> images_;
  std::optional<int> jet_cap_;
};

struct SubstitutionResult {
  Polynomial value;
  /// Set when the jet cap discarded nonzero terms.
  bool truncated = false;
};

/// Composes p with s. Every variable of p's context needs an image.
SubstitutionResult substitute(const Polynomial& p, const Substitution& s);

/// Applies a sequence of substitutions in order.
Polynomial replay(const Polynomial& p, const std::vector<Substitution>& steps);

}  // namespace ctlab

#endif
