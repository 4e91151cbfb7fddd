// Shared helpers for the unit and acceptance tests.
#ifndef CTLAB_TESTS_SUPPORT_HPP
#define CTLAB_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ctlab/parser.hpp"
#include "ctlab/polynomial.hpp"
#include "ctlab/substitution.hpp"

namespace ctlab::testing {

inline const Variables kXYZ{"x", "y", "z"};
inline const Variables kXYZT{"x", "y", "z", "t"};

inline Polynomial P(const std::string& text, const Variables& vars = kXYZ) {
  return parse_polynomial(text, vars);
}

inline Polynomial P4(const std::string& text) { return parse_polynomial(text, kXYZT); }

inline Rational Q(std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); }

/// Deterministic integer draws from mt19937_64 (whose output sequence is
/// fixed by the standard, unlike the std distributions).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool coin() { return (engine_() & 1U) != 0; }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

inline Rational random_coefficient(Rng& rng) {
  std::int64_t num = 0;
  while (num == 0) num = rng.uniform(-5, 5);
  return make_rational(num, rng.uniform(1, 3));
}

/// Random polynomial with up to `max_terms` terms of total degree in
/// [min_degree, max_degree].
inline Polynomial random_polynomial(Rng& rng, const Variables& vars, int max_terms, int min_degree,
                                    int max_degree) {
  Polynomial p(vars);
  const int terms = static_cast<int>(rng.uniform(1, max_terms));
  for (int k = 0; k < terms; ++k) {
    const int deg = static_cast<int>(rng.uniform(min_degree, max_degree));
    ExponentVector e(vars.size(), 0);
    for (int d = 0; d < deg; ++d) e[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vars.size()) - 1))]++;
    p.add_term(e, random_coefficient(rng));
  }
  if (p.is_zero()) {
    ExponentVector e(vars.size(), 0);
    e[0] = min_degree;
    p.add_term(e, 1);
  }
  return p;
}

inline Polynomial random_nonzero(Rng& rng, const Variables& vars, int max_terms, int min_degree,
                                 int max_degree) {
  for (;;) {
    Polynomial p = random_polynomial(rng, vars, max_terms, min_degree, max_degree);
    if (!p.is_zero()) return p;
  }
}

// Random unimodular integer matrix as a product of elementary moves.
inline Substitution random_linear_change(Rng& rng, const Variables& vars) {
  const std::size_t n = vars.size();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (int k = 0; k < 6; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    if (i == j) {
      for (auto& row : m) row[i] = -row[i];
      continue;
    }
    const std::int64_t f = rng.uniform(-2, 2);
    for (auto& row : m) row[j] += f * row[i];
  }
  std::vector<std::pair<std::string, Polynomial>> images;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial img(vars);
    for (std::size_t j = 0; j < n; ++j) img += Polynomial::variable(vars, j) * Rational(static_cast<long>(m[i][j]));
    images.emplace_back(vars[i], img);
  }
  return Substitution(vars, images);
}

// x_i -> x_i + (random terms of degree 2..3): invertible as a formal change.
inline Substitution random_tangent_identity_change(Rng& rng, const Variables& vars) {
  std::vector<std::pair<std::string, Polynomial>> images;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Polynomial img = Polynomial::variable(vars, i);
    if (rng.coin()) img += random_polynomial(rng, vars, 2, 2, 3);
    images.emplace_back(vars[i], img);
  }
  return Substitution(vars, images);
}

}  // namespace ctlab::testing

#endif
