#include "ctlab/audit.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ctlab/certificate.hpp"
#include "ctlab/errors.hpp"
#include "ctlab/parser.hpp"

namespace ctlab {

namespace {

const Variables kSurface{"x", "y", "z"};
const Variables kThreefold{"x", "y", "z", "t"};

// Integer draws by modular reduction: reproducible across standard libraries,
// unlike std::uniform_int_distribution.
class Draw {
public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool coin() { return (engine_() & 1U) != 0; }

  Rational coefficient() {
    std::int64_t num = 0;
    while (num == 0) num = uniform(-5, 5);
    return make_rational(num, uniform(1, 3));
  }

private:
  std::mt19937_64 engine_;
};

using Accept = bool (*)(const ExponentVector&);

// Up to max_terms random terms of total degree in [lo, hi] passing `accept`.
Polynomial perturbation(Draw& rng, const Variables& vars, int max_terms, int lo, int hi, Accept accept) {
  Polynomial p(vars);
  const auto terms = rng.uniform(0, max_terms);
  for (std::int64_t k = 0; k < terms; ++k) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      const auto deg = rng.uniform(lo, hi);
      ExponentVector e(vars.size(), 0);
      for (std::int64_t d = 0; d < deg; ++d) e[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vars.size()) - 1))]++;
      if (!accept(e)) continue;
      p.add_term(e, rng.coefficient());
      break;
    }
  }
  return p;
}

bool any(const ExponentVector&) { return true; }
bool w321_above_6(const ExponentVector& e) { return 3 * e[0] + 2 * e[1] + e[2] >= 7; }
bool w2223_above_6(const ExponentVector& e) { return 2 * (e[0] + e[1] + e[2]) + 3 * e[3] >= 7; }
bool w3215_above_6(const ExponentVector& e) { return 3 * e[0] + 2 * e[1] + e[2] + 5 * e[3] >= 7; }

Polynomial random_form(Draw& rng, const Variables& vars, const std::vector<std::size_t>& support, int degree) {
  Polynomial p(vars);
  while (p.is_zero()) {
    const auto terms = rng.uniform(1, 4);
    for (std::int64_t k = 0; k < terms; ++k) {
      ExponentVector e(vars.size(), 0);
      for (int d = 0; d < degree; ++d) e[support[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(support.size()) - 1))]]++;
      p.add_term(e, rng.coefficient());
    }
  }
  return p;
}

// Random unimodular change of x, y, z from elementary moves.
Polynomial random_linear_change(Draw& rng, const Polynomial& p) {
  const Variables& vars = p.variables();
  std::vector<std::vector<std::int64_t>> m{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int k = 0; k < 5; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform(0, 2)), j = static_cast<std::size_t>(rng.uniform(0, 2));
    if (i == j) continue;
    const std::int64_t c = rng.uniform(-2, 2);
    for (auto& row : m) row[j] += c * row[i];
  }
  std::vector<std::pair<std::string, Polynomial>> images;
  for (std::size_t i = 0; i < 3; ++i) {
    Polynomial img(vars);
    for (std::size_t j = 0; j < 3; ++j) img += Polynomial::variable(vars, j) * make_rational(m[i][j]);
    images.emplace_back(vars[i], img);
  }
  return substitute(p, Substitution(vars, images)).value;
}

Polynomial P3(const std::string& s) { return parse_polynomial(s, kSurface); }
Polynomial P4(const std::string& s) { return parse_polynomial(s, kThreefold); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// d when p is exactly x^2 + y^3 + z^d in (x, y, z), d >= 6.
std::optional<int> zd_exponent(const Polynomial& p) {
  if (p.variables() != kSurface || p.size() != 3) return std::nullopt;
  const int d = p.degree_in(2);
  if (d < 6 || p != P3("x^2+y^3+z^" + std::to_string(d))) return std::nullopt;
  return d;
}

// d when phi = x^2 + y^3 + z^d + t z and psi = t, d >= 7.
std::optional<int> hyp_exponent(const Polynomial& phi, const Polynomial& psi) {
  if (phi.variables() != kThreefold || psi != Polynomial::variable(kThreefold, "t")) return std::nullopt;
  const int d = phi.degree_in(2);
  if (d < 7 || phi != P4("x^2+y^3+z^" + std::to_string(d) + "+t*z")) return std::nullopt;
  return d;
}

AuditEntry audit_smooth(const CorpusEntry& in, int jet_cap) {
  AuditEntry out;
  out.input = in;
  const Polynomial& psi = in.pair.psi;
  try {
    SmoothCaseResult r = smooth_case_bound(psi, jet_cap);
    out.germ = r.germ;
    if (r.du_val_or_smooth()) {
      out.status = AuditEntry::Status::CtOne;
      out.method = "oracle";
      out.note = kOracleReid;
      return out;
    }
    out.status = AuditEntry::Status::Bound;
    out.method = "tree";
    out.bound = r.bound->report.bound;
    out.witness = r.bound->report.witness;
    if (auto d = zd_exponent(psi)) {
      const CrepantCertificate cert = certify_crepant_chain(*d);
      if (cert.constant != *out.bound) throw InvariantViolation("chain constant differs from the case-tree bound");
      out.status = AuditEntry::Status::Exact;
      out.method = "certificate";
      out.certificate = "zd:d=" + std::to_string(*d);
    }
  } catch (const UndeterminedError& e) {
    out.germ = classify_surface_germ(psi, jet_cap).germ;
    out.status = AuditEntry::Status::Undetermined;
    out.note = e.what();
  }
  return out;
}

AuditEntry audit_hypersurface(const CorpusEntry& in, int cap, int jet_cap) {
  AuditEntry out;
  out.input = in;
  const Polynomial& phi = in.pair.ambient.phi;
  const Polynomial& psi = in.pair.psi;
  try {
    GorensteinCaseResult g = gorenstein_case_bound(phi, psi, jet_cap);
    out.germ = g.eta_class;
    if (!g.unhandled()) {
      out.status = AuditEntry::Status::Bound;
      out.method = "tree";
      out.bound = g.bound->report.bound;
      out.witness = g.bound->report.witness;
      if (auto d = hyp_exponent(phi, psi)) {
        const CrepantCertificate cert = certify_hypersurface_example(*d);
        if (cert.constant != *out.bound) throw InvariantViolation("example constant differs from the case-tree bound");
        out.status = AuditEntry::Status::Exact;
        out.method = "certificate";
        out.certificate = "hyp:d=" + std::to_string(*d);
      }
      return out;
    }
    out.note = g.unhandled_reason;
  } catch (const PreconditionError& e) {
    out.note = e.what();
  }
  SearchOutcome s = search_upper_bound(in.pair, cap);
  if (s.no_witness()) {
    out.status = AuditEntry::Status::Unhandled;
    out.note += out.note.empty() ? "no admissible weight" : "; no admissible weight";
    return out;
  }
  out.status = AuditEntry::Status::Bound;
  out.method = "search";
  out.bound = s.report->bound;
  out.witness = s.report->witness;
  return out;
}

}  // namespace

std::string AuditEntry::status_name() const {
  switch (status) {
    case Status::CtOne: return "ct=1";
    case Status::Bound: return "bound";
    case Status::Exact: return "exact";
    case Status::Undetermined: return "undetermined";
    case Status::Unhandled: return "unhandled";
  }
  return "?";
}

std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, int per_case) {
  if (per_case < 0) throw PreconditionError("per_case must be non-negative");
  Draw rng(seed);
  std::vector<CorpusEntry> out;
  const AmbientGerm c3 = AmbientGerm::smooth(3);
  auto push = [&](Polynomial psi, const std::string& family) {
    const bool moved = rng.coin();
    if (moved) psi = random_linear_change(rng, psi);
    out.push_back({{c3, std::move(psi)}, family + (moved ? "+linear" : "")});
  };
  for (int k = 0; k < per_case; ++k) {
    push(random_form(rng, kSurface, {0, 1, 2}, 3) + perturbation(rng, kSurface, 3, 4, 6, any), "ord3");
  }
  for (int k = 0; k < per_case; ++k) {
    push(P3("x^2") + random_form(rng, kSurface, {1, 2}, 4) + perturbation(rng, kSurface, 3, 5, 7, any), "ord-eta4");
  }
  for (int k = 0; k < per_case; ++k) {
    Polynomial psi = P3("x^2+y^3");
    for (const auto* m : {"z^6", "y*z^4", "y^2*z^2"}) {
      if (rng.coin()) psi += P3(m) * rng.coefficient();
    }
    push(psi + perturbation(rng, kSurface, 3, 4, 8, w321_above_6), "cube");
  }
  for (int d = 6; d <= 30; ++d) out.push_back({{c3, P3("x^2+y^3+z^" + std::to_string(d))}, "zd"});

  const Polynomial t = Polynomial::variable(kThreefold, "t");
  auto hyper = [&](const Polynomial& phi, const std::string& family) {
    out.push_back({{AmbientGerm::hypersurface(phi), t}, family});
  };
  for (int d = 7; d <= 12; ++d) hyper(P4("x^2+y^3+z^" + std::to_string(d) + "+t*z"), "hyp");
  const int per_tree = std::max(1, per_case / 7);
  for (int k = 0; k < per_tree; ++k) {
    hyper(P4("x^3+y^3+z^3+t*x") + perturbation(rng, kThreefold, 3, 4, 5, any), "g-ord3");
    hyper(P4("y^3+x^4+z^4+t^2") + perturbation(rng, kThreefold, 3, 3, 6, w2223_above_6), "g-cube");
    hyper(P4("x^2+y^4+z^4+t*y") + perturbation(rng, kThreefold, 3, 5, 6, any), "g-ord-eta4");
    const std::string d = std::to_string(rng.uniform(7, 12));
    hyper(P4("x^2+y^3+z^" + d + "+t*z") + perturbation(rng, kThreefold, 3, 4, 7, w3215_above_6), "g-e");
  }
  return out;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> out;
  bool hyper = false;
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::size_t start = offset;
    offset += line.size() + 1;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      const std::string comment = trim(line.substr(hash + 1));
      if (comment.rfind("ambient:", 0) == 0) {
        const std::string kind = trim(comment.substr(8));
        if (kind == "smooth") {
          hyper = false;
        } else if (kind == "hypersurface") {
          hyper = true;
        } else {
          throw ParseError("line " + std::to_string(lineno) + ": unknown ambient '" + kind + "'", start + hash);
        }
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (!hyper) {
        out.push_back({{AmbientGerm::smooth(3), parse_polynomial(line, kSurface)}, {}});
        continue;
      }
      const auto semi = line.find(';');
      if (semi == std::string::npos) {
        throw ParseError("line " + std::to_string(lineno) + ": expected 'phi ; psi'", start);
      }
      Polynomial phi = parse_polynomial(trim(line.substr(0, semi)), kThreefold);
      Polynomial psi = parse_polynomial(trim(line.substr(semi + 1)), kThreefold);
      out.push_back({{AmbientGerm::hypersurface(std::move(phi)), std::move(psi)}, {}});
    } catch (const ParseError& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      throw ParseError("line " + std::to_string(lineno) + ": " + what, start + e.offset());
    }
  }
  return out;
}

GapAuditReport gap_audit(const std::vector<CorpusEntry>& corpus, int cap, int jet_cap) {
  GapAuditReport report;
  report.cap = cap;
  report.jet_cap = jet_cap;
  const Rational five_sixths = make_rational(5, 6), four_fifths = make_rational(4, 5);
  std::optional<Rational> worst;
  for (const CorpusEntry& in : corpus) {
    if (in.pair.ambient.kind == AmbientGerm::Kind::CyclicQuotient) {
      throw PreconditionError("the gap audit takes smooth or hypersurface ambients");
    }
    const std::size_t i = report.entries.size();
    AuditEntry e = in.pair.ambient.kind == AmbientGerm::Kind::Hypersurface ? audit_hypersurface(in, cap, jet_cap)
                                                                          : audit_smooth(in, jet_cap);
    if (e.status == AuditEntry::Status::Undetermined || e.status == AuditEntry::Status::Unhandled) {
      report.undetermined.push_back(i);
    }
    if (e.bound) {
      const Rational& b = *e.bound;
      if (five_sixths < b && b < 1) report.gap_violations.push_back(i);
      if (b == five_sixths) report.extremal.push_back(i);
      const bool hyper = in.pair.ambient.kind == AmbientGerm::Kind::Hypersurface;
      if (hyper && e.method != "search" && b > four_fifths) report.gorenstein_violations.push_back(i);
      if (e.germ.verdict == GermClass::Verdict::NotDuVal && (!worst || *worst < b)) worst = b;
    }
    report.entries.push_back(std::move(e));
  }
  if (worst) report.epsilon_estimate = 1 - *worst;
  return report;
}

GapAuditReport gap_audit(const std::vector<PairGerm>& corpus, int cap, int jet_cap) {
  std::vector<CorpusEntry> entries;
  entries.reserve(corpus.size());
  for (const auto& p : corpus) entries.push_back({p, {}});
  return gap_audit(entries, cap, jet_cap);
}

GapAuditReport seeded_gap_audit(std::uint64_t seed, int cap, int jet_cap) {
  GapAuditReport r = gap_audit(generate_corpus(seed), cap, jet_cap);
  r.seed = seed;
  return r;
}

}  // namespace ctlab
