#include "ctlab/blowup.hpp"

#include <numeric>
#include <random>

#include "ctlab/errors.hpp"
#include "ctlab/gcd.hpp"

namespace ctlab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

QuotientAction QuotientAction::make(std::int64_t order, const std::vector<std::int64_t>& raw) {
  if (order < 1) throw PreconditionError("quotient order must be positive");
  QuotientAction a;
  a.order = order;
  a.residues.reserve(raw.size());
  for (auto r : raw) a.residues.push_back(mod(r, order));
  return a;
}

std::int64_t QuotientAction::monomial_residue(const ExponentVector& e) const {
  if (e.size() != residues.size()) throw ContextMismatch("action arity does not match monomial");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s = mod(s + residues[i] * e[i], order);
  return s;
}

std::string to_string(const QuotientAction& action) {
  if (action.is_trivial()) return "trivial";
  return format_action(action.order, action.residues);
}

std::string format_action(std::int64_t order, const std::vector<std::int64_t>& labels) {
  if (order == 1) return "trivial";
  return "mu_" + std::to_string(order) + "(" + join(labels) + ")";
}

std::string ChartTransform::name() const { return "U_" + map.target().at(chart_index); }

std::string ChartTransform::action_string() const { return format_action(action.order, action_labels); }

ChartTransform chart_map(const Weight& w, std::size_t i, const Variables& variables) {
  if (!w.is_integral()) throw UnsupportedChart("chart geometry needs an integral weight, got " + w.to_string());
  if (w.size() != variables.size()) throw ContextMismatch("weight length does not match the variables");
  if (i >= w.size()) throw PreconditionError("chart index out of range");
  std::vector<std::pair<std::string, Polynomial>> images;
  std::vector<std::int64_t> labels;
  for (std::size_t j = 0; j < w.size(); ++j) {
    ExponentVector e(w.size(), 0);
    if (j == i) {
      e[i] = static_cast<int>(w.numerator(i));
      labels.push_back(-1);
    } else {
      e[j] = 1;
      e[i] = static_cast<int>(w.numerator(j));
      labels.push_back(w.numerator(j));
    }
    images.emplace_back(variables[j], Polynomial::monomial(variables, e));
  }
  const std::int64_t order = w.numerator(i);
  return ChartTransform{w, i, Substitution(variables, std::move(images)), QuotientAction::make(order, labels),
                        labels};
}

StrictTransformResult strict_transform(const Polynomial& p, const Weight& w, std::size_t i) {
  if (p.is_zero()) throw PreconditionError("strict transform of the zero polynomial");
  ChartTransform chart = chart_map(w, i, p.variables());
  const Rational m = weighted_valuation(p, w).value();
  Polynomial pulled = substitute(p, chart.map).value;
  ExponentVector e(p.arity(), 0);
  e[i] = static_cast<int>(m.get_num().get_si());
  const ExponentVector content = monomial_content(pulled);
  if (content[i] != e[i]) {
    throw InvariantViolation("exceptional multiplicity mismatch in " + chart.name() + " for " + p.to_string());
  }
  return {divide_by_monomial(pulled, e), m, std::move(chart)};
}

Polynomial exceptional_restriction(const Polynomial& p, const Weight& w, std::size_t i) {
  const StrictTransformResult st = strict_transform(p, w, i);
  return drop_variable(evaluate_at(st.strict, i, 0), i);
}

Rational discrepancy_smooth(const Weight& w) { return w.total() - 1; }

Rational discrepancy_hypersurface(const Weight& w, const Polynomial& phi) {
  if (phi.is_zero()) throw PreconditionError("hypersurface equation is zero");
  return w.total() - 1 - weighted_valuation(phi, w).value();
}

AmbientGerm AmbientGerm::smooth(std::size_t n) {
  AmbientGerm g;
  g.kind = Kind::SmoothAffine;
  g.dimension = n;
  return g;
}

AmbientGerm AmbientGerm::hypersurface(Polynomial phi) {
  if (ord0(phi) < Order(1)) throw PreconditionError("hypersurface must pass through the origin");
  AmbientGerm g;
  g.kind = Kind::Hypersurface;
  g.dimension = phi.arity() - 1;
  g.phi = std::move(phi);
  return g;
}

AmbientGerm AmbientGerm::cyclic_quotient(QuotientAction action) {
  AmbientGerm g;
  g.kind = Kind::CyclicQuotient;
  g.dimension = action.residues.size();
  g.action = std::move(action);
  return g;
}

std::size_t AmbientGerm::coordinate_count() const {
  return kind == Kind::Hypersurface ? phi.arity() : dimension;
}

std::string AmbientGerm::kind_name() const {
  switch (kind) {
    case Kind::SmoothAffine: return "smooth";
    case Kind::Hypersurface: return "hypersurface";
    case Kind::CyclicQuotient: return "quotient";
  }
  return "?";
}

Rational ambient_discrepancy(const Weight& w, const AmbientGerm& ambient) {
  if (w.size() != ambient.coordinate_count()) throw ContextMismatch("weight length does not match the ambient");
  switch (ambient.kind) {
    case AmbientGerm::Kind::Hypersurface: return discrepancy_hypersurface(w, ambient.phi);
    case AmbientGerm::Kind::SmoothAffine:
    case AmbientGerm::Kind::CyclicQuotient: return discrepancy_smooth(w);
  }
  return 0;
}

Rational pair_discrepancy(const Weight& w, const AmbientGerm& ambient, const Polynomial& psi,
                          const Rational& c) {
  if (psi.is_zero()) throw PreconditionError("divisor equation is zero");
  if (c < 0) throw PreconditionError("coefficient c must be non-negative");
  return ambient_discrepancy(w, ambient) - c * weighted_valuation(psi, w).value();
}

Rational threshold_upper_bound(const Weight& w, const AmbientGerm& ambient, const Polynomial& psi) {
  if (psi.is_zero()) throw PreconditionError("divisor equation is zero");
  const Rational v = weighted_valuation(psi, w).value();
  if (v == 0) throw PreconditionError("divisor misses the blowup center (v_alpha(psi) = 0)");
  return ambient_discrepancy(w, ambient) / v;
}

namespace {

// Rational roots of a univariate polynomial (given by its constant
// coefficients, lowest degree first) via the rational root theorem. Gives up
// on large coefficients.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() < 2) return {};
  if (coeffs[0] == 0) return {Rational(0)};
  if (coeffs.size() == 2) return {Rational(-coeffs[0] / coeffs[1])};
  Integer den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  const Integer a0 = abs(Integer(coeffs.front() * den));
  const Integer an = abs(Integer(coeffs.back() * den));
  constexpr long kLimit = 100000;
  if (a0 > kLimit || an > kLimit) return {};
  auto divisors = [](long n) {
    std::vector<long> d;
    for (long k = 1; k <= n; ++k)
      if (n % k == 0) d.push_back(k);
    return d;
  };
  std::vector<Rational> roots;
  for (long p : divisors(a0.get_si())) {
    for (long q : divisors(an.get_si())) {
      for (int sign : {1, -1}) {
        Rational x(sign * p, q);
        x.canonicalize();
        Rational v = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
        if (v == 0) roots.push_back(x);
      }
    }
  }
  return roots;
}

// Deterministic search for a rational point on {f = 0} with f in the chart
// coordinates other than x_i; the returned point includes x_i = 0.
std::optional<std::vector<Rational>> sample_smooth_point(const Polynomial& witness, const Polynomial& strict,
                                                         std::size_t i) {
  const std::size_t n = strict.arity();
  std::vector<std::size_t> free_vars;
  for (std::size_t v = 0; v < witness.arity(); ++v)
    if (witness.depends_on(v)) free_vars.push_back(v);
  if (free_vars.empty()) return std::nullopt;
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int attempt = 0; attempt < 256; ++attempt) {
    const std::size_t solve = free_vars[static_cast<std::size_t>(attempt) % free_vars.size()];
    std::vector<Rational> pt(witness.arity());
    for (auto& c : pt) c = small(rng);
    Polynomial uni = witness;
    for (std::size_t v = 0; v < witness.arity(); ++v)
      if (v != solve) uni = evaluate_at(uni, v, pt[v]);
    std::vector<Rational> cs;
    for (const auto& c : coefficients_in(uni, solve)) cs.push_back(c.constant_term());
    for (const Rational& root : rational_roots(cs)) {
      pt[solve] = root;
      std::vector<Rational> full(n);
      for (std::size_t v = 0, k = 0; v < n; ++v) full[v] = (v == i) ? Rational(0) : pt[k++];
      for (std::size_t v = 0; v < n; ++v) {
        if (evaluate(derivative(strict, v), full) != 0) return full;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AdmissibilityVerdict is_admissible(const Weight& w, const Polynomial& phi) {
  if (phi.is_zero()) throw PreconditionError("admissibility of the zero polynomial");
  bool any_nonzero = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const StrictTransformResult st = strict_transform(phi, w, i);
    const Polynomial restriction = drop_variable(evaluate_at(st.strict, i, 0), i);
    if (restriction.is_zero()) continue;
    any_nonzero = true;
    if (restriction.is_constant()) continue;
    const auto reduced = squarefree_decomposition(restriction).layer(1);
    if (!reduced || reduced->is_constant()) continue;
    AdmissibilityVerdict out;
    out.admissible = true;
    out.witness_chart = i;
    out.witness_factor = *reduced;
    if (auto pt = sample_smooth_point(*reduced, st.strict, i)) {
      out.generic_smoothness_checked = true;
      out.sample_point = std::move(*pt);
    }
    return out;
  }
  if (!any_nonzero) throw PreconditionError("exceptional restriction vanishes in every chart");
  return {};
}

bool reid_weight_test(const Polynomial& phi, const Weight& w) {
  const Valuation v = weighted_valuation(phi, w);
  return v.is_infinite() ? false : w.total() - 1 > v.value();
}

std::optional<OriginQuotient> chart_origin_quotient(const StrictTransformResult& st) {
  const Polynomial& f = st.strict;
  if (f.constant_term() != 0) return std::nullopt;
  const std::size_t n = f.arity();
  const std::size_t i = st.chart.chart_index;
  std::optional<std::size_t> eliminated;
  for (std::size_t pass = 0; pass < 2 && !eliminated; ++pass) {
    for (std::size_t v = 0; v < n; ++v) {
      if ((pass == 0) == (v == i)) continue;  // prefer coordinates other than x_i
      ExponentVector e(n, 0);
      e[v] = 1;
      if (f.coefficient(e) != 0) {
        eliminated = v;
        break;
      }
    }
  }
  if (!eliminated) return std::nullopt;
  OriginQuotient out;
  std::vector<std::int64_t> labels;
  for (std::size_t v = 0; v < n; ++v) {
    if (v == *eliminated) continue;
    labels.push_back(st.chart.action_labels[v]);
    out.coordinates.push_back(f.variables()[v]);
  }
  out.action = QuotientAction::make(st.chart.action.order, labels);
  out.labels = std::move(labels);
  return out;
}

bool is_terminal_cyclic_quotient(const QuotientAction& action) {
  const std::int64_t r = action.order;
  if (action.residues.size() != 3) return false;
  if (r == 1) return true;
  const auto& a = action.residues;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::int64_t x = a[k], y = a[(k + 1) % 3], b = a[(k + 2) % 3];
    if (mod(x + y, r) == 0 && std::gcd(x, r) == 1 && std::gcd(b, r) == 1) return true;
  }
  return false;
}

}  // namespace ctlab
