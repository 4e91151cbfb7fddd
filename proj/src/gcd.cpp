#include "ctlab/gcd.hpp"

#include <map>

#include "ctlab/errors.hpp"

namespace ctlab {

Polynomial normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_term().second < 0) scale = -scale;
  return p * scale;
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (f.variables() != g.variables()) throw ContextMismatch("division across contexts");
  const auto& [eg, cg] = g.leading_term();
  Polynomial q(f.variables());
  Polynomial r = f;
  ExponentVector shift(f.arity());
  while (!r.is_zero()) {
    const auto& [er, cr] = r.leading_term();
    for (std::size_t i = 0; i < shift.size(); ++i) {
      shift[i] = er[i] - eg[i];
      if (shift[i] < 0) return std::nullopt;
    }
    const Rational coeff = cr / cg;
    q.add_term(shift, coeff);
    Polynomial step(f.variables());
    for (const auto& [e, c] : g.terms()) {
      ExponentVector s = e;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift[i];
      step.add_term(s, c * coeff);
    }
    r -= step;
  }
  return q;
}

bool proportional(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  return normalize(f) == normalize(g);
}

namespace {

Polynomial leading_coefficient_in(const Polynomial& p, std::size_t var) {
  auto coeffs = coefficients_in(p, var);
  return coeffs.empty() ? Polynomial(p.variables()) : coeffs.back();
}

Polynomial exact(const Polynomial& f, const Polynomial& g) {
  auto q = divide_exact(f, g);
  if (!q) throw InvariantViolation("expected exact division: " + f.to_string() + " / " + g.to_string());
  return *q;
}

Polynomial one(const Variables& vars) { return Polynomial::constant(vars, 1); }

}  // namespace

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const int db = b.degree_in(var);
  if (db < 0) throw PreconditionError("pseudo-remainder by zero");
  const int da = a.degree_in(var);
  if (da < db) return a;
  const Polynomial lcb = leading_coefficient_in(b, var);
  Polynomial r = a;
  int e = da - db + 1;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    ExponentVector shift(a.arity(), 0);
    shift[var] = dr - db;
    const Polynomial lr = leading_coefficient_in(r, var);
    r = lcb * r - lr * Polynomial::monomial(a.variables(), shift) * b;
    --e;
  }
  return pow(lcb, static_cast<unsigned>(e)) * r;
}

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.variables());
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = multivariate_gcd(g, c);
    if (g.is_constant()) return one(p.variables());
  }
  return normalize(g);
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  return exact(p, content_in(p, var));
}

namespace {

// gcd of two polynomials that are primitive with respect to var and have
// positive degree in it.
Polynomial subresultant_gcd(Polynomial a, Polynomial b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  const Variables& vars = a.variables();
  Polynomial g = one(vars);
  Polynomial h = one(vars);
  for (;;) {
    const int delta = a.degree_in(var) - b.degree_in(var);
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return one(vars);
    a = std::move(b);
    b = exact(r, g * pow(h, static_cast<unsigned>(delta)));
    g = leading_coefficient_in(a, var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
    }
  }
  return primitive_part_in(b, var);
}

int main_variable(const Polynomial& f, const Polynomial& g) {
  for (int v = static_cast<int>(f.arity()) - 1; v >= 0; --v) {
    if (f.depends_on(static_cast<std::size_t>(v)) || g.depends_on(static_cast<std::size_t>(v))) return v;
  }
  return -1;
}

}  // namespace

Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.variables() != g.variables()) throw ContextMismatch("gcd across contexts");
  if (f.is_zero()) return normalize(g);
  if (g.is_zero()) return normalize(f);
  if (f.is_constant() || g.is_constant()) return one(f.variables());
  const int v = main_variable(f, g);
  const auto var = static_cast<std::size_t>(v);
  if (!f.depends_on(var)) return multivariate_gcd(f, content_in(g, var));
  if (!g.depends_on(var)) return multivariate_gcd(content_in(f, var), g);

  const Polynomial cf = content_in(f, var);
  const Polynomial cg = content_in(g, var);
  const Polynomial c = multivariate_gcd(cf, cg);
  const Polynomial pp = subresultant_gcd(exact(f, cf), exact(g, cg), var);
  return normalize(c * pp);
}

// ---------------------------------------------------------------- square-free

Polynomial SquareFreeDecomposition::reconstruct(const Variables& variables) const {
  Polynomial out = Polynomial::monomial(variables, monomial_content);
  for (const auto& l : layers) out = out * pow(l.factor, static_cast<unsigned>(l.multiplicity));
  return out;
}

std::optional<Polynomial> SquareFreeDecomposition::layer(int multiplicity) const {
  for (const auto& l : layers) {
    if (l.multiplicity == multiplicity) return l.factor;
  }
  return std::nullopt;
}

std::vector<SquareFreeDecomposition::Layer> SquareFreeDecomposition::full_layers(
    const Variables& variables) const {
  std::map<int, Polynomial> acc;
  for (const auto& l : layers) acc.emplace(l.multiplicity, l.factor);
  for (std::size_t i = 0; i < monomial_content.size(); ++i) {
    const int k = monomial_content[i];
    if (k == 0) continue;
    const Polynomial x = Polynomial::variable(variables, i);
    auto [it, inserted] = acc.try_emplace(k, x);
    if (!inserted) it->second = it->second * x;
  }
  std::vector<Layer> out;
  for (auto& [m, f] : acc) out.push_back({normalize(f), m});
  return out;
}

namespace {

// Yun's algorithm in one variable; p must be primitive in var.
void yun(const Polynomial& p, std::size_t var, std::map<int, Polynomial>& acc) {
  const Polynomial dp = derivative(p, var);
  const Polynomial a0 = multivariate_gcd(p, dp);
  Polynomial b = exact(p, a0);
  Polynomial c = exact(dp, a0);
  Polynomial d = c - derivative(b, var);
  for (int i = 1; !b.is_constant(); ++i) {
    const Polynomial a = multivariate_gcd(b, d);
    if (!a.is_constant()) {
      auto [it, inserted] = acc.try_emplace(i, a);
      if (!inserted) it->second = it->second * a;
    }
    b = exact(b, a);
    c = exact(d, a);
    d = c - derivative(b, var);
  }
}

void decompose(const Polynomial& f, std::map<int, Polynomial>& acc) {
  if (f.is_constant()) return;
  std::size_t var = 0;
  while (!f.depends_on(var)) ++var;
  const Polynomial content = content_in(f, var);
  yun(exact(f, content), var, acc);
  decompose(content, acc);
}

}  // namespace

SquareFreeDecomposition squarefree_decomposition(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("square-free decomposition of zero");
  SquareFreeDecomposition out;
  out.monomial_content = monomial_content(f);
  std::map<int, Polynomial> acc;
  decompose(divide_by_monomial(f, out.monomial_content), acc);
  for (auto& [m, factor] : acc) out.layers.push_back({normalize(factor), m});
  return out;
}

bool is_evidently_irreducible(const Polynomial& f) {
  if (f.is_constant()) return false;
  if (f.degree() == 1) return true;
  for (std::size_t v = 0; v < f.arity(); ++v) {
    if (f.degree_in(v) != 1) continue;
    auto coeffs = coefficients_in(f, v);
    if (coeffs[0].is_zero()) continue;
    if (multivariate_gcd(coeffs[0], coeffs[1]).is_constant()) return true;
  }
  return false;
}

}  // namespace ctlab
