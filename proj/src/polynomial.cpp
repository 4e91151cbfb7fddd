#include "ctlab/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "ctlab/errors.hpp"

namespace ctlab {

int total_degree(const ExponentVector& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GradedLexGreater::operator()(const ExponentVector& a, const ExponentVector& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

// ---------------------------------------------------------------- Weight

Weight::Weight(std::vector<std::int64_t> numerators, std::int64_t index)
    : numerators_(std::move(numerators)), index_(index) {
  if (numerators_.empty()) throw PreconditionError("weight must be non-empty");
  if (index_ < 1) throw PreconditionError("weight index must be positive");
  // Integral weights are primitive lattice vectors; orbifold weights only
  // need gcd(a_1,...,a_n,r) = 1.
  std::int64_t g = index_ == 1 ? 0 : index_;
  for (auto a : numerators_) {
    if (a < 1) throw PreconditionError("weight entries must be positive: " + to_string());
    g = std::gcd(g, a);
  }
  if (g != 1) throw PreconditionError("weight is not primitive: " + to_string());
}

Rational Weight::operator[](std::size_t i) const { return make_rational(numerators_.at(i), index_); }

Rational Weight::total() const {
  const std::int64_t s = std::accumulate(numerators_.begin(), numerators_.end(), std::int64_t{0});
  return make_rational(s, index_);
}

Rational Weight::degree_of(const ExponentVector& e) const {
  if (e.size() != numerators_.size()) {
    throw ContextMismatch("weight length does not match variable count");
  }
  Integer s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += Integer(static_cast<long>(numerators_[i])) * e[i];
  Rational q(s, Integer(static_cast<long>(index_)));
  q.canonicalize();
  return q;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  if (index_ != 1) os << "1/" << index_;
  os << '(';
  for (std::size_t i = 0; i < numerators_.size(); ++i) os << (i ? "," : "") << numerators_[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Variables variables) : variables_(std::move(variables)) {}

Polynomial Polynomial::constant(Variables variables, const Rational& c) {
  Polynomial p(std::move(variables));
  p.add_term(ExponentVector(p.arity(), 0), c);
  return p;
}

Polynomial Polynomial::variable(Variables variables, std::size_t index) {
  if (index >= variables.size()) throw PreconditionError("variable index out of range");
  ExponentVector e(variables.size(), 0);
  e[index] = 1;
  return monomial(std::move(variables), std::move(e));
}

Polynomial Polynomial::variable(Variables variables, const std::string& name) {
  Polynomial probe(variables);
  return variable(std::move(variables), probe.index_of(name));
}

Polynomial Polynomial::monomial(Variables variables, ExponentVector exponents, const Rational& c) {
  if (exponents.size() != variables.size()) throw ContextMismatch("exponent length mismatch");
  Polynomial p(std::move(variables));
  p.add_term(exponents, c);
  return p;
}

std::size_t Polynomial::index_of(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) throw PreconditionError("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational Polynomial::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(ExponentVector(arity(), 0)); }

const Polynomial::TermMap::value_type& Polynomial::leading_term() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return *terms_.begin();
}

int Polynomial::degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

int Polynomial::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

bool Polynomial::depends_on(std::size_t var) const { return degree_in(var) > 0; }

void Polynomial::add_term(const ExponentVector& e, const Rational& c) {
  if (e.size() != variables_.size()) throw ContextMismatch("exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_context(const Polynomial& other) const {
  if (variables_ != other.variables_) {
    throw ContextMismatch("polynomials live in different variable contexts");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_context(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_context(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

namespace {

struct ExponentHash {
  std::size_t operator()(const ExponentVector& e) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int v : e) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

Polynomial multiply_impl(const Polynomial& a, const Polynomial& b, int cap, bool* dropped) {
  if (a.variables() != b.variables()) {
    throw ContextMismatch("polynomials live in different variable contexts");
  }
  std::unordered_map<ExponentVector, Rational, ExponentHash> acc;
  acc.reserve(a.size() * b.size());
  const std::size_t n = a.arity();
  ExponentVector e(n);
  for (const auto& [ea, ca] : a.terms()) {
    const int da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      if (cap >= 0 && da + total_degree(eb) > cap) {
        if (dropped) *dropped = true;
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = acc.try_emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  Polynomial out(a.variables());
  for (auto& [ex, c] : acc) out.add_term(ex, c);
  return out;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply_impl(a, b, -1, nullptr); }

Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, int cap, bool* dropped) {
  return multiply_impl(a, b, cap, dropped);
}

Polynomial truncate(const Polynomial& p, int cap) {
  Polynomial out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    if (total_degree(e) <= cap) out.add_term(e, c);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::renamed(Variables variables) const {
  if (variables.size() != variables_.size()) throw ContextMismatch("rename changes arity");
  Polynomial out = *this;
  out.variables_ = std::move(variables);
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    return total_degree(a->first) < total_degree(b->first);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const auto& [e, c] = *t;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? '-' : '+');
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || total_degree(e) == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << variables_[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.variables(), 1);
  Polynomial base = p;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- orders

Order ord0(const Polynomial& p) {
  if (p.is_zero()) return Order::infinity();
  int m = total_degree(p.terms().begin()->first);
  for (const auto& [e, c] : p.terms()) m = std::min(m, total_degree(e));
  return m;
}

Polynomial homogeneous_part(const Polynomial& p, int d) {
  if (d < 0) throw PreconditionError("homogeneous degree must be non-negative");
  Polynomial out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    if (total_degree(e) == d) out.add_term(e, c);
  }
  return out;
}

Valuation weighted_valuation(const Polynomial& p, const Weight& w) {
  if (w.size() != p.arity()) throw ContextMismatch("weight length does not match variable count");
  if (p.is_zero()) return Valuation::infinity();
  std::optional<Rational> best;
  for (const auto& [e, c] : p.terms()) {
    Rational d = w.degree_of(e);
    if (!best || d < *best) best = d;
  }
  return *best;
}

Polynomial weighted_part(const Polynomial& p, const Weight& w, const Rational& d) {
  if (w.size() != p.arity()) throw ContextMismatch("weight length does not match variable count");
  Polynomial out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    if (w.degree_of(e) == d) out.add_term(e, c);
  }
  return out;
}

Polynomial weighted_initial_part(const Polynomial& p, const Weight& w) {
  const Valuation v = weighted_valuation(p, w);
  if (v.is_infinite()) return p;
  return weighted_part(p, w, v.value());
}

Polynomial derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.arity()) throw PreconditionError("variable index out of range");
  Polynomial out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    ExponentVector f = e;
    f[var] -= 1;
    out.add_term(f, c * e[var]);
  }
  return out;
}

Polynomial derivative(const Polynomial& p, const std::string& var) {
  return derivative(p, p.index_of(var));
}

Polynomial evaluate_at(const Polynomial& p, std::size_t var, const Rational& c) {
  Polynomial out(p.variables());
  for (const auto& [e, coeff] : p.terms()) {
    ExponentVector f = e;
    Rational scale = coeff;
    for (int k = 0; k < e[var]; ++k) scale *= c;
    f[var] = 0;
    out.add_term(f, scale);
  }
  return out;
}

Rational evaluate(const Polynomial& p, const std::vector<Rational>& point) {
  if (point.size() != p.arity()) throw ContextMismatch("point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial drop_variable(const Polynomial& p, std::size_t var) {
  if (p.depends_on(var)) throw PreconditionError("cannot drop a variable the polynomial depends on");
  Variables vars = p.variables();
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(var));
  Polynomial out(vars);
  for (const auto& [e, c] : p.terms()) {
    ExponentVector f = e;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(var));
    out.add_term(f, c);
  }
  return out;
}

Polynomial embed(const Polynomial& p, const Variables& target) {
  Polynomial probe(target);
  std::vector<std::size_t> where(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i) where[i] = probe.index_of(p.variables()[i]);
  Polynomial out(target);
  for (const auto& [e, c] : p.terms()) {
    ExponentVector f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) f[where[i]] = e[i];
    out.add_term(f, c);
  }
  return out;
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  const int d = p.degree_in(var);
  std::vector<Polynomial> out(static_cast<std::size_t>(std::max(d + 1, 0)), Polynomial(p.variables()));
  for (const auto& [e, c] : p.terms()) {
    ExponentVector f = e;
    f[var] = 0;
    out[static_cast<std::size_t>(e[var])].add_term(f, c);
  }
  return out;
}

Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var,
                             const Variables& variables) {
  Polynomial out(variables);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& [e, c] : coeffs[k].terms()) {
      ExponentVector f = e;
      f[var] += static_cast<int>(k);
      out.add_term(f, c);
    }
  }
  return out;
}

ExponentVector monomial_content(const Polynomial& p) {
  ExponentVector m(p.arity(), 0);
  if (p.is_zero()) return m;
  m = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  }
  return m;
}

Polynomial divide_by_monomial(const Polynomial& p, const ExponentVector& m) {
  Polynomial out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    ExponentVector f = e;
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] -= m[i];
      if (f[i] < 0) throw PreconditionError("term not divisible by monomial");
    }
    out.add_term(f, c);
  }
  return out;
}

}  // namespace ctlab
