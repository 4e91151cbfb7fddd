#include "ctlab/classify.hpp"

#include <algorithm>

#include "ctlab/errors.hpp"
#include "ctlab/gcd.hpp"

namespace ctlab {

std::string GermClass::type() const {
  if (verdict != Verdict::DuVal) return {};
  return std::string(1, family) + std::to_string(n);
}

std::string GermClass::verdict_name() const {
  switch (verdict) {
    case Verdict::Smooth: return "Smooth";
    case Verdict::DuVal: return "DuVal";
    case Verdict::NotDuVal: return "NotDuVal";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string GermClass::to_string() const {
  switch (verdict) {
    case Verdict::Smooth: return "Smooth";
    case Verdict::DuVal: return "DuVal " + type();
    case Verdict::NotDuVal:
    case Verdict::Undetermined: return verdict_name() + " " + tag;
  }
  return "?";
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

ExponentVector unit(std::size_t n, std::size_t i, int k = 1) {
  ExponentVector e(n, 0);
  e[i] = k;
  return e;
}

void require_vanishing(const Polynomial& p) {
  if (p.constant_term() != 0) throw PreconditionError("germ does not pass through the origin: " + p.to_string());
}

Matrix quadratic_matrix(const Polynomial& p) {
  const std::size_t n = p.arity();
  Matrix m(n, std::vector<Rational>(n, 0));
  const Polynomial q = homogeneous_part(p, 2);
  for (const auto& [e, c] : q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < e[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      m[idx[0]][idx[0]] = c;
    } else {
      m[idx[0]][idx[1]] = c / 2;
      m[idx[1]][idx[0]] = c / 2;
    }
  }
  return m;
}

int matrix_rank(Matrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

// sum_k coeffs[k] * X^k, truncated to total degree <= cap.
Polynomial horner(const std::vector<Polynomial>& coeffs, const Polynomial& x, int cap) {
  Polynomial acc(x.variables());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = multiply_truncated(acc, x, cap) + truncate(*it, cap);
  }
  return acc;
}

// (1 + h)^(-1/2) truncated to degree cap; h(0) must be 0.
Polynomial inverse_sqrt_series(const Polynomial& h, int cap) {
  const Variables& vars = h.variables();
  Polynomial sum = Polynomial::constant(vars, 1);
  Polynomial power = Polynomial::constant(vars, 1);
  Rational b = 1;
  for (int k = 1; k <= cap; ++k) {
    power = multiply_truncated(power, h, cap);
    if (power.is_zero()) break;
    b *= Rational(-1, 2) - (k - 1);
    b /= k;
    sum += power * b;
  }
  return sum;
}

class Tracer {
public:
  Tracer(const Polynomial& start, int cap) : cap_(cap) {
    trace_.jet_cap = cap;
    trace_.final = truncate(start, cap);
  }

  const Polynomial& current() const { return trace_.final; }
  int cap() const { return cap_; }
  const Variables& vars() const { return trace_.final.variables(); }

  Substitution identity() const { return Substitution::identity(vars(), cap_); }

  void apply(const Substitution& s) {
    trace_.final = substitute(trace_.final, s).value;
    trace_.steps.push_back(s);
  }

  NormalFormTrace take() { return std::move(trace_); }

private:
  int cap_;
  NormalFormTrace trace_;
};

bool is_identity(const Substitution& s) {
  for (const auto& [name, image] : s.images()) {
    if (image != Polynomial::variable(s.target(), name)) return false;
  }
  return true;
}

// Removes the terms linear in v (v^2 coefficient c != 0) by v -> v + X and
// then makes the v-part exactly c v^2 by v -> v W.
void split_variable(Tracer& tr, std::size_t v) {
  const int cap = tr.cap();
  const Variables vars = tr.vars();
  const std::size_t n = vars.size();
  const Rational c = tr.current().coefficient(unit(n, v, 2));
  const Polynomial xv = Polynomial::variable(vars, v);

  Polynomial shift(vars);
  for (int it = 0;; ++it) {
    auto coeffs = coefficients_in(tr.current(), v);
    std::vector<Polynomial> deriv;
    for (std::size_t k = 1; k < coeffs.size(); ++k) deriv.push_back(coeffs[k] * Rational(static_cast<long>(k)));
    const Polynomial f = truncate(horner(deriv, shift, cap), cap - 1);
    if (f.is_zero()) break;
    if (it > cap + 1) throw InvariantViolation("Morse shift did not converge");
    shift -= f * (1 / (2 * c));
  }
  if (!shift.is_zero()) tr.apply(tr.identity().with(vars[v], xv + shift));

  auto coeffs = coefficients_in(tr.current(), v);
  if (coeffs.size() > 1 && !coeffs[1].is_zero()) throw InvariantViolation("linear term survived the Morse shift");
  if (coeffs.size() <= 2) return;
  std::vector<Polynomial> rest(coeffs.begin() + 2, coeffs.end());
  const Polynomial u = from_coefficients(rest, v, vars);
  Polynomial w = Polynomial::constant(vars, 1);
  for (int it = 0;; ++it) {
    const Polynomial uw = substitute(u, Substitution::identity(vars, cap - 2).with(vars[v], xv * w)).value;
    const Polynomial next = inverse_sqrt_series(uw * (1 / c) - Polynomial::constant(vars, 1), cap - 2);
    if (next == w) break;
    if (it > cap + 1) throw InvariantViolation("Morse scaling did not converge");
    w = next;
  }
  if (w != Polynomial::constant(vars, 1)) tr.apply(tr.identity().with(vars[v], xv * w));

  coeffs = coefficients_in(tr.current(), v);
  if (coeffs.size() != 3 || !coeffs[1].is_zero() || coeffs[2] != Polynomial::constant(vars, c)) {
    throw InvariantViolation("Morse scaling left " + tr.current().to_string());
  }
}

void morse_into(Tracer& tr, int rank) {
  const Variables vars = tr.vars();
  const std::size_t n = vars.size();
  std::vector<bool> split(n, false);
  for (int k = 0; k < rank; ++k) {
    std::optional<std::size_t> pivot;
    for (std::size_t v = 0; v < n && !pivot; ++v)
      if (!split[v] && tr.current().coefficient(unit(n, v, 2)) != 0) pivot = v;
    for (std::size_t i = 0; i < n && !pivot; ++i) {
      for (std::size_t j = i + 1; j < n && !pivot; ++j) {
        if (split[i] || split[j]) continue;
        ExponentVector e(n, 0);
        e[i] = e[j] = 1;
        if (tr.current().coefficient(e) == 0) continue;
        tr.apply(tr.identity().with(vars[j], Polynomial::variable(vars, j) + Polynomial::variable(vars, i)));
        pivot = i;
      }
    }
    if (!pivot) throw InvariantViolation("quadratic part lost rank during the Morse split");
    split_variable(tr, *pivot);
    split[*pivot] = true;
  }
}

}  // namespace

int quadratic_rank(const Polynomial& psi) {
  require_vanishing(psi);
  return matrix_rank(quadratic_matrix(psi));
}

NormalFormTrace morse_split(const Polynomial& psi, int jet_cap) {
  const int rank = quadratic_rank(psi);
  if (rank == 0) throw PreconditionError("Morse split needs a nonzero quadratic part");
  if (jet_cap < 2) throw PreconditionError("jet cap must be at least 2");
  Tracer tr(psi, jet_cap);
  morse_into(tr, rank);
  return tr.take();
}

NormalFormTrace split_square(const Polynomial& p, std::size_t v, int jet_cap) {
  require_vanishing(p);
  if (jet_cap < 2) throw PreconditionError("jet cap must be at least 2");
  if (p.coefficient(unit(p.arity(), v, 2)) == 0) {
    throw PreconditionError("no square term in " + p.variables().at(v) + " to split off");
  }
  Tracer tr(p, jet_cap);
  split_variable(tr, v);
  return tr.take();
}

std::optional<Polynomial> cube_of_linear_form(const Polynomial& c) {
  if (c.is_zero()) return std::nullopt;
  if (homogeneous_part(c, 3) != c) throw PreconditionError("expected a homogeneous cubic: " + c.to_string());
  std::optional<Polynomial> q;
  for (std::size_t i = 0; i < c.arity(); ++i) {
    const Polynomial d = derivative(c, i);
    if (d.is_zero()) continue;
    if (!q) {
      q = d;
    } else if (!proportional(*q, d)) {
      return std::nullopt;
    }
  }
  const Matrix m = quadratic_matrix(*q);
  if (matrix_rank(m) != 1) return std::nullopt;
  std::size_t r = 0;
  while (m[r][r] == 0) ++r;
  Polynomial l(c.variables());
  for (std::size_t j = 0; j < c.arity(); ++j) l.add_term(unit(c.arity(), j), m[r][j]);
  l = normalize(l);
  if (!proportional(pow(l, 3), c)) return std::nullopt;
  return l;
}

std::vector<int> binary_root_multiplicities(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("root multiplicities of the zero form");
  const int d = f.degree();
  if (homogeneous_part(f, d) != f) throw PreconditionError("expected a homogeneous form: " + f.to_string());
  int used = 0;
  for (std::size_t v = 0; v < f.arity(); ++v) used += f.depends_on(v) ? 1 : 0;
  if (used > 2) throw PreconditionError("expected a binary form: " + f.to_string());
  const auto sf = squarefree_decomposition(f);
  std::vector<int> out;
  for (int k : sf.monomial_content)
    if (k > 0) out.push_back(k);
  for (const auto& layer : sf.layers)
    for (int k = 0; k < layer.factor.degree(); ++k) out.push_back(layer.multiplicity);
  std::sort(out.rbegin(), out.rend());
  return out;
}

namespace {

struct Attempt {
  std::optional<GermClass> germ;
  const char* need = nullptr;  // set when a wider jet might help
  NormalFormTrace trace;
};

// Linear change of the two residual coordinates (u1, u2) sending the forms
// l1, l2 to u1, u2.
Substitution linear_change(const Tracer& tr, std::size_t u1, std::size_t u2, const Polynomial& l1,
                           const Polynomial& l2) {
  const std::size_t n = tr.vars().size();
  const Rational a = l1.coefficient(unit(n, u1)), b = l1.coefficient(unit(n, u2));
  const Rational c = l2.coefficient(unit(n, u1)), d = l2.coefficient(unit(n, u2));
  const Rational det = a * d - b * c;
  if (det == 0) throw InvariantViolation("dependent linear forms in a coordinate change");
  const Polynomial y = Polynomial::variable(tr.vars(), u1), z = Polynomial::variable(tr.vars(), u2);
  return tr.identity()
      .with(tr.vars()[u1], (y * d - z * b) * (1 / det))
      .with(tr.vars()[u2], (z * a - y * c) * (1 / det));
}

void apply_unless_identity(Tracer& tr, const Substitution& s) {
  if (!is_identity(s)) tr.apply(s);
}

// g = kappa u1^2 u2 + ...: remove the terms linear in u1, then D_{ord g(0,u2)+1}.
Attempt d_series(Tracer& tr, std::size_t u1, std::size_t u2, std::size_t x) {
  const int cap = tr.cap();
  const std::size_t n = tr.vars().size();
  const Variables vars = tr.vars();
  auto residual = [&] { return evaluate_at(tr.current(), x, 0); };
  ExponentVector e(n, 0);
  e[u1] = 2;
  e[u2] = 1;
  const Rational kappa = tr.current().coefficient(e);
  Polynomial shift(vars);
  for (int it = 0;; ++it) {
    auto coeffs = coefficients_in(residual(), u1);
    std::vector<Polynomial> deriv;
    for (std::size_t k = 1; k < coeffs.size(); ++k) deriv.push_back(coeffs[k] * Rational(static_cast<long>(k)));
    const Polynomial l = truncate(horner(deriv, shift, cap), cap - 1);
    if (l.is_zero()) break;
    if (it > cap + 1) throw InvariantViolation("D-series shift did not converge");
    if (monomial_content(l)[u2] < 1) throw InvariantViolation("D-series shift needs division by " + vars[u2]);
    shift -= divide_by_monomial(l, unit(n, u2)) * (1 / (2 * kappa));
  }
  if (!shift.is_zero()) tr.apply(tr.identity().with(vars[u1], Polynomial::variable(vars, u1) + shift));
  const Polynomial phi = evaluate_at(residual(), u1, 0);
  if (phi.is_zero()) return {std::nullopt, reasons::kNonIsolatedJet, {}};
  return {GermClass::du_val('D', ord0(phi).value() + 1), nullptr, {}};
}

// g = kappa u1^3 + ...: E6 / E7 / E8 by the z^4, y z^3, z^5 coefficients.
Attempt e_series(Tracer& tr, std::size_t u1, std::size_t u2) {
  if (tr.cap() < 5) return {std::nullopt, reasons::kJetInsufficient, {}};
  const std::size_t n = tr.vars().size();
  const Polynomial& g = tr.current();
  if (g.coefficient(unit(n, u2, 4)) != 0) return {GermClass::du_val('E', 6), nullptr, {}};
  ExponentVector yz3(n, 0);
  yz3[u1] = 1;
  yz3[u2] = 3;
  if (g.coefficient(yz3) != 0) return {GermClass::du_val('E', 7), nullptr, {}};
  if (g.coefficient(unit(n, u2, 5)) != 0) return {GermClass::du_val('E', 8), nullptr, {}};
  return {GermClass::not_du_val(tags::kCorankOneCubeCase), nullptr, {}};
}

Attempt classify_at(const Polynomial& psi, int cap) {
  const Order ord = ord0(psi);
  if (ord == Order(1)) return {GermClass::smooth(), nullptr, {}};
  if (ord > Order(2)) return {GermClass::not_du_val(tags::kOrd3Plus), nullptr, {}};
  const int rank = quadratic_rank(psi);
  Tracer tr(psi, cap);
  morse_into(tr, rank);
  auto finish = [&tr](Attempt a) {
    a.trace = tr.take();
    return a;
  };
  if (rank == 3) return finish({GermClass::du_val('A', 1), nullptr, {}});

  const std::size_t n = psi.arity();
  std::vector<std::size_t> rest, split;
  for (std::size_t v = 0; v < n; ++v)
    (tr.current().coefficient(unit(n, v, 2)) != 0 ? split : rest).push_back(v);
  Polynomial g = tr.current();
  for (std::size_t v : split) g = evaluate_at(g, v, 0);
  if (g.is_zero()) {
    return finish({std::nullopt, cap < 3 ? reasons::kJetInsufficient : reasons::kNonIsolatedJet, {}});
  }
  if (rank == 2) return finish({GermClass::du_val('A', ord0(g).value() - 1), nullptr, {}});

  const Polynomial g3 = homogeneous_part(g, 3);
  if (g3.is_zero()) return finish({GermClass::not_du_val(tags::kCorankOneOrdEta4Plus), nullptr, {}});
  const std::vector<int> mult = binary_root_multiplicities(g3);
  const std::size_t u1 = rest[0], u2 = rest[1];
  if (mult == std::vector<int>{1, 1, 1}) return finish({GermClass::du_val('D', 4), nullptr, {}});
  if (mult == std::vector<int>{2, 1}) {
    const auto layers = squarefree_decomposition(g3).full_layers(g3.variables());
    apply_unless_identity(tr, linear_change(tr, u1, u2, layers[1].factor, layers[0].factor));
    Attempt a = d_series(tr, u1, u2, split[0]);
    return finish(std::move(a));
  }
  const Polynomial l = *cube_of_linear_form(g3);
  const Polynomial other = l.coefficient(unit(n, u1)) != 0 ? Polynomial::variable(l.variables(), u2)
                                                           : Polynomial::variable(l.variables(), u1);
  apply_unless_identity(tr, linear_change(tr, u1, u2, l, other));
  Attempt a = e_series(tr, u1, u2);
  return finish(std::move(a));
}

}  // namespace

Classification classify_surface_germ(const Polynomial& psi, int jet_cap) {
  require_vanishing(psi);
  if (psi.arity() != 3) throw PreconditionError("surface germs live in three variables");
  if (jet_cap < 2) throw PreconditionError("jet cap must be at least 2");
  if (psi.is_zero()) {
    GermClass g = GermClass::undetermined(reasons::kNonIsolatedJet);
    g.jet_cap = jet_cap;
    return {g, NormalFormTrace{{}, psi, jet_cap}};
  }
  int working = std::min(jet_cap, 8);
  for (;;) {
    Attempt a = classify_at(psi, working);
    if (a.trace.final.arity() == 0) a.trace = NormalFormTrace{{}, truncate(psi, working), working};
    if (a.germ) {
      a.germ->jet_cap = working;
      return {*a.germ, std::move(a.trace)};
    }
    if (working >= jet_cap) {
      GermClass g = GermClass::undetermined(a.need);
      g.jet_cap = working;
      return {g, std::move(a.trace)};
    }
    working = std::min(2 * working, jet_cap);
  }
}

bool is_cdv_order_probe(const Polynomial& phi) {
  require_vanishing(phi);
  return ord0(phi) == Order(2);
}

}  // namespace ctlab
