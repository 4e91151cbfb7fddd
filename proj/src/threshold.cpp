#include "ctlab/threshold.hpp"

#include <algorithm>
#include <numeric>

#include "ctlab/errors.hpp"

namespace ctlab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

ExponentVector unit(std::size_t n, std::size_t i, int k = 1) {
  ExponentVector e(n, 0);
  e[i] = k;
  return e;
}

ExponentVector pair_exponent(std::size_t n, std::size_t i, std::size_t j) {
  ExponentVector e(n, 0);
  e[i] += 1;
  e[j] += 1;
  return e;
}

Rational finite_valuation(const Polynomial& p, const Weight& w) {
  const Valuation v = weighted_valuation(p, w);
  if (v.is_infinite()) throw PreconditionError("valuation of the zero polynomial");
  return v.value();
}

const Polynomial& ambient_equation(const AmbientGerm& ambient) {
  static const Polynomial none;
  return ambient.kind == AmbientGerm::Kind::Hypersurface ? ambient.phi : none;
}

void require_pair(const PairGerm& pair) {
  if (pair.psi.arity() != pair.ambient.coordinate_count()) {
    throw ContextMismatch("psi has " + std::to_string(pair.psi.arity()) + " variables, the ambient " +
                          std::to_string(pair.ambient.coordinate_count()));
  }
  if (pair.ambient.kind == AmbientGerm::Kind::Hypersurface && pair.ambient.phi.variables() != pair.psi.variables()) {
    throw ContextMismatch("phi and psi use different variables");
  }
  if (pair.psi.is_zero()) throw PreconditionError("psi must be nonzero");
  if (pair.psi.constant_term() != 0) throw PreconditionError("psi must vanish at the origin");
}

void compositions(int remaining, std::size_t slots, std::vector<std::int64_t>& prefix,
                  std::vector<Weight>& out) {
  if (slots == 1) {
    prefix.push_back(remaining);
    std::int64_t g = 0;
    for (auto a : prefix) g = std::gcd(g, a);
    if (g == 1) out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 1; first <= remaining - static_cast<int>(slots) + 1; ++first) {
    prefix.push_back(first);
    compositions(remaining - first, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

// Weight with the given entries placed at the given coordinate positions.
Weight placed(std::size_t n, const std::vector<std::pair<std::size_t, std::int64_t>>& entries) {
  std::vector<std::int64_t> a(n, 0);
  for (const auto& [i, v] : entries) a.at(i) = v;
  return Weight(std::move(a));
}

// Linear changes among a group of coordinates of equal weight, identity
// first. These leave every valuation unchanged but can move a reduced
// component of the exceptional restriction out of the coordinate hyperplanes.
std::vector<Substitution> shear_list(const Variables& vars, const std::vector<std::size_t>& group, int cap) {
  std::vector<Substitution> out{Substitution::identity(vars, cap)};
  auto x = [&](std::size_t i) { return Polynomial::variable(vars, i); };
  for (long c : {1L, -1L}) {
    for (std::size_t i : group) {
      for (std::size_t j : group) {
        if (i == j) continue;
        out.push_back(Substitution::identity(vars, cap).with(vars[j], x(j) + x(i) * Rational(c)));
      }
    }
  }
  if (group.size() == 3) {
    const std::size_t a = group[0], b = group[1], c = group[2];
    out.push_back(Substitution::identity(vars, cap)
                      .with(vars[a], x(a) + x(b) * Rational(2) + x(c) * Rational(3))
                      .with(vars[b], x(b) + x(c) * Rational(5)));
    out.push_back(Substitution::identity(vars, cap)
                      .with(vars[b], x(b) + x(a) * Rational(2))
                      .with(vars[c], x(c) + x(a) * Rational(3) + x(b) * Rational(5)));
  }
  return out;
}

bool is_identity(const Substitution& s) {
  for (const auto& [name, image] : s.images()) {
    if (image != Polynomial::variable(s.target(), name)) return false;
  }
  return true;
}

struct Admitted {
  Polynomial phi;
  std::optional<Substitution> change;
  AdmissibilityVerdict verdict;
};

std::optional<Admitted> admissible_somewhere(const Polynomial& phi, const Weight& w,
                                             const std::vector<std::size_t>& group, int cap) {
  for (const Substitution& s : shear_list(phi.variables(), group, cap)) {
    const bool id = is_identity(s);
    Polynomial moved = id ? phi : substitute(phi, s).value;
    AdmissibilityVerdict v = is_admissible(w, moved);
    if (v.admissible) return Admitted{std::move(moved), id ? std::nullopt : std::optional(s), std::move(v)};
  }
  return std::nullopt;
}

Polynomial divide_by_t(const Polynomial& p, std::size_t t) {
  return divide_by_monomial(p, unit(p.arity(), t));
}

std::vector<std::size_t> complement(std::size_t n, std::initializer_list<std::size_t> used) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(used.begin(), used.end(), i) == used.end()) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> square_variable(const Polynomial& p, std::size_t limit) {
  for (std::size_t v = 0; v < limit; ++v) {
    if (p.coefficient(unit(p.arity(), v, 2)) != 0) return v;
  }
  return std::nullopt;
}

}  // namespace

BoundReport make_bound_report(const Weight& w, const PairGerm& pair,
                              std::optional<AdmissibilityVerdict> admissibility, int search_cap) {
  require_pair(pair);
  const Rational v = finite_valuation(pair.psi, w);
  const Rational a = ambient_discrepancy(w, pair.ambient);
  BoundReport r{a / v, w, a, v, std::move(admissibility), {}, search_cap};
  if (w.is_integral()) {
    const bool hyper = pair.ambient.kind == AmbientGerm::Kind::Hypersurface;
    const Polynomial& target = hyper ? pair.ambient.phi : pair.psi;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const ChartTransform chart = chart_map(w, i, target.variables());
      r.per_chart_evidence.push_back({chart.name(), chart.action_string(), exceptional_restriction(target, w, i)});
    }
  }
  return r;
}

std::vector<Weight> enumerate_weights(std::size_t n, int cap) {
  if (n == 0) throw PreconditionError("weights need at least one coordinate");
  std::vector<Weight> out;
  std::vector<std::int64_t> prefix;
  for (int s = static_cast<int>(n); s <= cap; ++s) compositions(s, n, prefix, out);
  return out;
}

SearchOutcome search_upper_bound(const PairGerm& pair, int cap) {
  if (cap < 3) throw PreconditionError("search cap must be at least 3");
  if (pair.ambient.kind == AmbientGerm::Kind::CyclicQuotient) {
    throw PreconditionError("search runs over smooth or hypersurface ambients");
  }
  require_pair(pair);
  const bool hyper = pair.ambient.kind == AmbientGerm::Kind::Hypersurface;
  SearchOutcome out;
  std::optional<Rational> best;
  std::optional<Weight> witness;
  std::optional<AdmissibilityVerdict> verdict;
  for (const Weight& w : enumerate_weights(pair.ambient.coordinate_count(), cap)) {
    ++out.weights_examined;
    const Rational b = ambient_discrepancy(w, pair.ambient) / finite_valuation(pair.psi, w);
    if (best && b >= *best) continue;
    if (hyper) {
      AdmissibilityVerdict v = is_admissible(w, ambient_equation(pair.ambient));
      if (!v.admissible) continue;
      verdict = std::move(v);
    }
    best = b;
    witness = w;
  }
  if (witness) {
    out.report = make_bound_report(*witness, pair, hyper ? verdict : std::nullopt, cap);
    if (out.report->bound != *best) throw InvariantViolation("search bound is not recomputable from its witness");
  }
  return out;
}

SmoothCaseResult smooth_case_bound(const Polynomial& psi, int jet_cap) {
  if (psi.arity() != 3) throw PreconditionError("smooth case tree needs psi in three variables");
  Classification c = classify_surface_germ(psi, jet_cap);
  const GermClass& g = c.germ;
  if (g.verdict == GermClass::Verdict::Undetermined) {
    throw UndeterminedError("classification undetermined at jet " + std::to_string(g.jet_cap) + ": " + g.tag);
  }
  if (g.is_smooth_or_du_val()) return {g, std::nullopt};

  CaseDecomposition d;
  d.tag = g.tag;
  d.input = psi;
  NormalFormTrace trace = std::move(c.trace);
  if (trace.steps.empty()) trace = NormalFormTrace{{}, psi, std::max(trace.jet_cap, psi.degree())};
  const Polynomial& f = trace.final;
  const std::size_t n = 3;

  std::optional<Weight> w;
  Rational expected;
  if (g.tag == tags::kOrd3Plus) {
    d.branch = "ord3";
    w = Weight({1, 1, 1});
    expected = make_rational(2, 3);
  } else {
    const auto s = square_variable(f, n);
    if (!s) throw InvariantViolation("corank one normal form without a square term");
    const auto rest = complement(n, {*s});
    const Rational cs = f.coefficient(unit(n, *s, 2));
    d.eta = f - Polynomial::monomial(f.variables(), unit(n, *s, 2), cs);
    if (g.tag == tags::kCorankOneOrdEta4Plus) {
      d.branch = "ord-eta4";
      w = placed(n, {{*s, 2}, {rest[0], 1}, {rest[1], 1}});
      expected = make_rational(3, 4);
    } else {
      d.branch = "cube";
      const std::size_t u1 = f.coefficient(unit(n, rest[0], 3)) != 0 ? rest[0] : rest[1];
      const std::size_t u2 = u1 == rest[0] ? rest[1] : rest[0];
      if (f.coefficient(unit(n, u1, 3)) == 0) throw InvariantViolation("cube case normal form without a cube term");
      w = placed(n, {{*s, 3}, {u1, 2}, {u2, 1}});
      expected = make_rational(5, 6);
    }
  }
  d.normalizing_trace = trace;
  BoundReport r = make_bound_report(*w, PairGerm{AmbientGerm::smooth(3), f}, std::nullopt, 0);
  const bool ok = g.tag == tags::kOrd3Plus ? r.bound <= expected : r.bound == expected;
  if (!ok) {
    throw InvariantViolation(d.tag + " normal form gave bound " + to_string(r.bound) + " at " + w->to_string());
  }
  return {g, CaseBound{std::move(d), std::move(r)}};
}

GorensteinCaseResult gorenstein_case_bound(const Polynomial& phi, const Polynomial& psi, int jet_cap) {
  if (phi.arity() != 4) throw PreconditionError("the hypersurface case tree needs phi in four variables");
  if (psi.variables() != phi.variables()) throw ContextMismatch("phi and psi use different variables");
  if (!is_cdv_order_probe(phi)) throw PreconditionError("ord0 phi must be 2");
  const std::size_t n = 4, t = 3;
  const Variables& vars = phi.variables();
  if (psi.constant_term() != 0 || psi.degree() != 1) {
    throw PreconditionError("psi must be a linear form with a nonzero " + vars[t] + " coefficient");
  }
  const Rational lt = psi.coefficient(unit(n, t));
  if (lt == 0) throw PreconditionError("psi must be a linear form with a nonzero " + vars[t] + " coefficient");

  std::vector<Substitution> steps;
  Polynomial current = phi;
  const Polynomial tv = Polynomial::variable(vars, t);
  if (psi != tv) {
    // t -> (t - (psi - lt t)) / lt makes psi = t.
    Substitution s = Substitution::identity(vars).with(vars[t], (tv - (psi - tv * lt)) * (1 / lt));
    current = substitute(current, s).value;
    steps.push_back(std::move(s));
  }

  const Polynomial eta_full = evaluate_at(current, t, 0);
  GorensteinCaseResult out;
  if (eta_full.is_zero()) {
    out.eta_class = GermClass::undetermined(reasons::kNonIsolatedJet);
    out.unhandled_reason = "S is not reduced: t divides phi";
    return out;
  }
  Classification ec = classify_surface_germ(drop_variable(eta_full, t), jet_cap);
  out.eta_class = ec.germ;
  if (ec.germ.verdict == GermClass::Verdict::Undetermined) {
    out.unhandled_reason = "classification of S undetermined: " + ec.germ.tag;
    return out;
  }
  if (ec.germ.is_smooth_or_du_val()) {
    out.unhandled_reason = "S is " + ec.germ.to_string() + ", so the pair is canonical at c = 1";
    return out;
  }
  const int cap = ec.germ.jet_cap;
  current = truncate(current, cap);
  for (const Substitution& s3 : ec.trace.steps) {
    std::vector<std::pair<std::string, Polynomial>> images;
    for (const auto& [name, image] : s3.images()) images.emplace_back(name, embed(image, vars));
    images.emplace_back(vars[t], tv);
    Substitution s(vars, std::move(images), s3.jet_cap());
    current = substitute(current, s).value;
    steps.push_back(std::move(s));
  }

  CaseDecomposition d;
  d.tag = ec.germ.tag;
  d.input = phi;
  auto unhandled = [&](std::string reason) {
    out.unhandled_reason = std::move(reason);
    return out;
  };
  auto emit = [&](const Weight& w, const std::string& branch, Admitted adm) -> GorensteinCaseResult {
    if (adm.change) steps.push_back(*adm.change);
    d.branch = branch;
    d.normalizing_trace = NormalFormTrace{steps, adm.phi, cap};
    if (replay(truncate(phi, cap), steps) != adm.phi) {
      throw InvariantViolation("hypersurface normalization does not replay");
    }
    BoundReport r = make_bound_report(w, PairGerm{AmbientGerm::hypersurface(adm.phi), tv}, adm.verdict, 0);
    if (r.discrepancy <= 0) return unhandled("a(G, K_X) <= 0 at " + w.to_string() + ": X is not terminal");
    out.bound = CaseBound{std::move(d), std::move(r)};
    return out;
  };

  if (d.tag == tags::kOrd3Plus) {
    const Weight reid({1, 1, 1, 2});
    const Polynomial eta = evaluate_at(current, t, 0);
    const Polynomial zeta = divide_by_t(current - eta, t);
    d.eta = eta;
    d.zeta = zeta;
    if (!reid_weight_test(current, reid)) return unhandled("terminality probe (1,1,1,2) fails");
    const Polynomial linear = homogeneous_part(evaluate_at(zeta, t, 0), 1);
    const Polynomial eta3 = homogeneous_part(eta, 3);
    const bool cube = !eta3.is_zero() && cube_of_linear_form(drop_variable(eta3, t)).has_value();
    d.deltas.emplace_back("delta3", current.coefficient(unit(n, t, 2)));
    if (!linear.is_zero() || (!eta3.is_zero() && !cube)) {
      const std::string branch = linear.is_zero() ? "eta3-noncube" : "zeta-linear";
      auto adm = admissible_somewhere(current, reid, {0, 1, 2}, cap);
      if (!adm) return unhandled("no admissible coordinates for (1,1,1,2)");
      return emit(reid, branch, std::move(*adm));
    }
    const Weight w({2, 2, 2, 3});
    auto adm = admissible_somewhere(current, w, {0, 1, 2}, cap);
    if (!adm) return unhandled("no admissible coordinates for (2,2,2,3)");
    return emit(w, "eta3-cube", std::move(*adm));
  }

  const auto s = square_variable(current, 3);
  if (!s) throw InvariantViolation("corank one normal form of S without a square term");
  const auto rest = complement(3, {*s});
  const Rational cs = current.coefficient(unit(n, *s, 2));

  if (d.tag == tags::kCorankOneOrdEta4Plus) {
    NormalFormTrace split = split_square(current, *s, cap);
    for (auto& st : split.steps) steps.push_back(std::move(st));
    const Polynomial eta_before = evaluate_at(current, t, 0);
    current = std::move(split.final);
    const Polynomial eta = evaluate_at(current, t, 0);
    if (eta != eta_before) throw InvariantViolation("splitting off the square moved S");
    const Polynomial zeta = divide_by_t(current - eta, t);
    d.eta = eta;
    d.xi = eta - Polynomial::monomial(vars, unit(n, *s, 2), cs);
    d.zeta = zeta;
    d.lambda = homogeneous_part(evaluate_at(zeta, t, 0), 2);
    d.deltas = {{"delta1", current.coefficient(pair_exponent(n, t, rest[0]))},
                {"delta2", current.coefficient(pair_exponent(n, t, rest[1]))},
                {"delta3", current.coefficient(unit(n, t, 2))},
                {"delta", current.coefficient(unit(n, t, 3))}};
    const std::vector<std::pair<Weight, std::string>> first{
        {placed(n, {{*s, 2}, {rest[0], 1}, {rest[1], 1}, {t, 3}}), "alpha"},
        {placed(n, {{*s, 2}, {rest[0], 1}, {rest[1], 1}, {t, 2}}), "alpha'"}};
    for (const auto& [w, branch] : first) {
      if (auto adm = admissible_somewhere(current, w, rest, cap)) return emit(w, branch, std::move(*adm));
    }
    const Weight reid = placed(n, {{*s, 2}, {rest[0], 1}, {rest[1], 1}, {t, 1}});
    if (!reid_weight_test(current, reid)) return unhandled("terminality probe " + reid.to_string() + " fails");
    const Weight w = placed(n, {{*s, 3}, {rest[0], 1}, {rest[1], 1}, {t, 2}});
    if (auto adm = admissible_somewhere(current, w, rest, cap)) return emit(w, "alpha''", std::move(*adm));
    return unhandled("no admissible weight among alpha, alpha', alpha''");
  }

  // cube case: eta = c x^2 + k y^3 + xi
  const std::size_t u1 = current.coefficient(unit(n, rest[0], 3)) != 0 ? rest[0] : rest[1];
  const std::size_t u2 = u1 == rest[0] ? rest[1] : rest[0];
  const Polynomial eta = evaluate_at(current, t, 0);
  d.eta = eta;
  d.xi = eta - Polynomial::monomial(vars, unit(n, *s, 2), cs) -
         Polynomial::monomial(vars, unit(n, u1, 3), current.coefficient(unit(n, u1, 3)));
  d.zeta = divide_by_t(current - eta, t);
  d.deltas = {{"delta", current.coefficient(pair_exponent(n, t, u2))}};
  const Weight w = placed(n, {{*s, 3}, {u1, 2}, {u2, 1}, {t, 5}});
  AdmissibilityVerdict v = is_admissible(w, current);
  if (!v.admissible) return unhandled("(3,2,1,5) is not admissible");
  return emit(w, "cube", Admitted{current, std::nullopt, std::move(v)});
}

QuotientCaseResult quotient_case_bound(std::int64_t r, std::int64_t a, const Polynomial& psi) {
  if (r < 2) throw PreconditionError("index must be at least 2");
  if (a < 1 || a >= r) throw PreconditionError("a must lie in [1, r)");
  if (std::gcd(a, r) != 1) throw PreconditionError("gcd(a, r) must be 1");
  if (psi.arity() != 3) throw PreconditionError("the quotient case needs psi in three variables");
  if (psi.is_zero() || psi.constant_term() != 0) throw PreconditionError("psi must be nonzero and vanish at 0");
  const QuotientAction action = QuotientAction::make(r, {a, -a, 1});
  std::optional<std::int64_t> residue;
  for (const auto& [e, c] : psi.terms()) {
    const std::int64_t m = action.monomial_residue(e);
    if (residue && *residue != m) throw PreconditionError("psi is not semi-invariant under " + to_string(action));
    residue = m;
  }
  const Weight w({a, r - a, 1}, r);
  const Rational disc = ambient_discrepancy(w, AmbientGerm::cyclic_quotient(action));
  const Rational v = finite_valuation(psi, w);
  QuotientCaseResult out{w, disc, v, std::nullopt, *residue};
  if (v != make_rational(1, r)) out.bound = disc / v;
  return out;
}

std::optional<IndexData> infer_series(std::int64_t r, const std::vector<std::int64_t>& residues,
                                      std::int64_t phi_residue, std::optional<std::int64_t> psi_residue) {
  if (r < 2 || residues.size() != 4) return std::nullopt;
  std::vector<std::int64_t> m;
  for (auto x : residues) m.push_back(mod(x, r));
  IndexData d{r, residues, phi_residue, psi_residue, IndexData::Series::MainSeries, m[0]};
  if (mod(m[0] + m[1], r) == 0 && m[2] == mod(1, r) && m[3] == 0 && mod(phi_residue, r) == 0 &&
      std::gcd(m[0], r) == 1) {
    return d;
  }
  if (r == 4 && m == std::vector<std::int64_t>{1, 3, 1, 2} && mod(phi_residue, r) == 2) {
    d.series = IndexData::Series::CAx4;
    d.a = 1;
    return d;
  }
  return std::nullopt;
}

ResidueAudit residue_audit(const IndexData& data) {
  const std::int64_t r = data.r;
  if (r < 2) throw PreconditionError("index must be at least 2");
  if (data.coordinate_residues.size() != 4) throw PreconditionError("four coordinate residues expected");
  const auto& res = data.coordinate_residues;
  std::vector<std::int64_t> expected;
  std::int64_t expected_phi = 0;
  ResidueAudit out;
  if (data.series == IndexData::Series::MainSeries) {
    if (std::gcd(mod(data.a, r), r) != 1) throw PreconditionError("series-pattern mismatch: gcd(a, r) != 1");
    expected = {data.a, -data.a, 1, 0};
    out.series = "MainSeries(a=" + std::to_string(mod(data.a, r)) + ")";
  } else {
    if (r != 4) throw PreconditionError("series-pattern mismatch: cAx/4 needs r = 4");
    expected = {1, 3, 1, 2};
    expected_phi = 2;
    out.series = "cAx/4";
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (mod(res[i] - expected[i], r) != 0) {
      throw PreconditionError("series-pattern mismatch: residue of x" + std::to_string(i + 1) + " is " +
                              std::to_string(mod(res[i], r)) + ", expected " + std::to_string(mod(expected[i], r)));
    }
  }
  if (mod(data.phi_residue - expected_phi, r) != 0) {
    throw PreconditionError("series-pattern mismatch: phi residue " + std::to_string(mod(data.phi_residue, r)));
  }
  out.lhs = mod(res[0] + res[1] + res[2] + res[3] - data.phi_residue, r);
  out.x3_residue = mod(res[2], r);
  out.congruence_holds = out.lhs == out.x3_residue;
  // wt(lambda) - wt(x1x2x3x4) + wt(phi) == wt(omega) == 0
  out.lambda_residue = out.lhs;
  if (data.psi_residue) out.anticanonical = mod(*data.psi_residue, r) == out.lambda_residue;
  return out;
}

}  // namespace ctlab
