#include "ctlab/substitution.hpp"

#include <map>
#include <sstream>

#include "ctlab/errors.hpp"

namespace ctlab {

Substitution::Substitution(Variables target, std::vector<std::pair<std::string, Polynomial>> images,
                           std::optional<int> jet_cap)
    : target_(std::move(target)), images_(std::move(images)), jet_cap_(jet_cap) {
  for (const auto& [name, image] : images_) {
    if (image.variables() != target_) {
      throw ContextMismatch("image of '" + name + "' is not in the target context");
    }
  }
  if (jet_cap_ && *jet_cap_ < 0) throw PreconditionError("jet cap must be non-negative");
}

Substitution Substitution::identity(const Variables& variables, std::optional<int> jet_cap) {
  std::vector<std::pair<std::string, Polynomial>> images;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    images.emplace_back(variables[i], Polynomial::variable(variables, i));
  }
  return Substitution(variables, std::move(images), jet_cap);
}

Substitution Substitution::with(const std::string& name, Polynomial image) const {
  auto images = images_;
  bool found = false;
  for (auto& [n, img] : images) {
    if (n == name) {
      img = image;
      found = true;
    }
  }
  if (!found) images.emplace_back(name, std::move(image));
  return Substitution(target_, std::move(images), jet_cap_);
}

const Polynomial& Substitution::image_of(const std::string& name) const {
  for (const auto& [n, img] : images_) {
    if (n == name) return img;
  }
  throw PreconditionError("substitution has no image for variable '" + name + "'");
}

std::string Substitution::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    os << (i ? ", " : "") << images_[i].first << " -> " << images_[i].second.to_string();
  }
  os << '}';
  if (jet_cap_) os << " mod deg>" << *jet_cap_;
  return os.str();
}

SubstitutionResult substitute(const Polynomial& p, const Substitution& s) {
  const std::size_t n = p.arity();
  std::vector<const Polynomial*> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = &s.image_of(p.variables()[i]);

  const int cap = s.jet_cap().value_or(-1);
  bool dropped = false;
  auto mul = [&](const Polynomial& a, const Polynomial& b) {
    return cap >= 0 ? multiply_truncated(a, b, cap, &dropped) : a * b;
  };

  // powers[i][k] = image_i^k, built on demand.
  std::vector<std::vector<Polynomial>> powers(n);
  auto power_of = [&](std::size_t i, int k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(s.target(), 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(mul(cache.back(), *images[i]));
    return cache[static_cast<std::size_t>(k)];
  };

  SubstitutionResult out{Polynomial(s.target()), false};
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(s.target(), c);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) {
      if (e[i] > 0) term = mul(term, power_of(i, e[i]));
    }
    out.value += term;
  }
  if (cap >= 0) {
    Polynomial capped = truncate(out.value, cap);
    if (!(capped == out.value)) dropped = true;
    out.value = std::move(capped);
  }
  out.truncated = dropped;
  return out;
}

Polynomial replay(const Polynomial& p, const std::vector<Substitution>& steps) {
  Polynomial cur = p;
  for (const auto& s : steps) cur = substitute(cur, s).value;
  return cur;
}

}  // namespace ctlab
