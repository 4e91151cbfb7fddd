#include "ctlab/certificate.hpp"

#include "ctlab/errors.hpp"
#include "ctlab/gcd.hpp"
#include "ctlab/parser.hpp"

namespace ctlab {

namespace {

const Variables kSurface{"x", "y", "z"};
const Variables kThreefold{"x", "y", "z", "t"};

std::string zd(int d) { return "x^2+y^3+z^" + std::to_string(d); }

ChartRecord chart_record(const Polynomial& f, const Weight& w, std::size_t i,
                         const std::optional<Polynomial>& psi) {
  StrictTransformResult st = strict_transform(f, w, i);
  ChartRecord r;
  r.chart = st.chart.name();
  r.map = st.chart.map.to_string();
  r.action = st.chart.action_string();
  r.exceptional = exceptional_restriction(f, w, i);
  r.misses_origin = st.strict.constant_term() != 0;
  if (psi) r.divisor = strict_transform(*psi, w, i).strict;
  if (!r.misses_origin && !st.chart.action.is_trivial()) r.singular_point = chart_origin_quotient(st);
  r.strict = std::move(st.strict);
  return r;
}

CertificateLeaf surface_leaf(const Polynomial& germ, std::size_t step, const std::string& chart) {
  CertificateLeaf leaf;
  leaf.step = step;
  leaf.chart = chart;
  leaf.germ = germ;
  if (germ.constant_term() != 0) {
    leaf.kind = CertificateLeaf::Kind::SmoothMiss;
    leaf.detail = "strict transform misses the chart origin";
    return leaf;
  }
  leaf.germ_class = classify_surface_germ(germ).germ;
  switch (leaf.germ_class.verdict) {
    case GermClass::Verdict::Smooth:
      leaf.kind = CertificateLeaf::Kind::Smooth;
      break;
    case GermClass::Verdict::DuVal:
      leaf.kind = CertificateLeaf::Kind::DuVal;
      break;
    default:
      throw InvariantViolation("leaf germ " + germ.to_string() + " is " + leaf.germ_class.to_string());
  }
  leaf.detail = leaf.germ_class.to_string();
  return leaf;
}

CertificateLeaf miss_leaf(const Polynomial& germ, std::size_t step, const std::string& chart, std::string detail) {
  CertificateLeaf leaf;
  leaf.kind = CertificateLeaf::Kind::SmoothMiss;
  leaf.step = step;
  leaf.chart = chart;
  leaf.germ = germ;
  leaf.detail = std::move(detail);
  return leaf;
}

}  // namespace

std::string CertificateLeaf::kind_name() const {
  switch (kind) {
    case Kind::SmoothMiss: return "SmoothMiss";
    case Kind::Smooth: return "Smooth";
    case Kind::DuVal: return "DuVal";
    case Kind::CrepantChain: return "CrepantChain";
  }
  return "?";
}

CrepantCertificate certify_crepant_chain(int d) {
  if (d < 6) throw PreconditionError("the chain needs d >= 6; for d <= 5 the germ is Du Val and ct = 1");
  CrepantCertificate cert;
  cert.type = "crepant_chain";
  cert.d = d;
  cert.constant = make_rational(5, 6);
  cert.oracle_facts = {kOracleReid};
  const Weight w({3, 2, 1});
  const AmbientGerm c3 = AmbientGerm::smooth(3);
  for (int e = d; e >= 6; e -= 6) {
    const Polynomial psi = parse_polynomial(zd(e), kSurface);
    CertificateStep step{w,
                         psi,
                         discrepancy_smooth(w),
                         weighted_valuation(psi, w).value(),
                         pair_discrepancy(w, c3, psi, cert.constant),
                         {}};
    const std::size_t k = cert.steps.size();
    for (std::size_t i = 0; i < 3; ++i) step.charts.push_back(chart_record(psi, w, i, std::nullopt));
    for (std::size_t i = 0; i < 2; ++i) {
      const ChartRecord& c = step.charts[i];
      if (!c.misses_origin) throw InvariantViolation(c.chart + " strict transform passes through the chart origin");
      cert.leaves.push_back(miss_leaf(c.strict, k, c.chart, "strict transform misses the " + c.action + " point"));
    }
    const Polynomial next = step.charts[2].strict;
    cert.steps.push_back(std::move(step));
    if (e - 6 < 6) cert.leaves.push_back(surface_leaf(next, k, "U_z"));
  }
  verify_certificate(cert);
  return cert;
}

CrepantCertificate certify_hypersurface_example(int d) {
  if (d < 7) throw PreconditionError("the hypersurface example needs d >= 7");
  CrepantCertificate cert;
  cert.type = "hypersurface_example";
  cert.d = d;
  cert.constant = make_rational(4, 5);
  cert.oracle_facts = {kOracleReid};
  const Weight w({3, 2, 1, 5});
  const Polynomial phi = parse_polynomial(zd(d) + "+t*z", kThreefold);
  const Polynomial psi = Polynomial::variable(kThreefold, "t");
  const AmbientGerm x = AmbientGerm::hypersurface(phi);

  const AdmissibilityVerdict adm = is_admissible(w, phi);
  if (!adm.admissible) throw InvariantViolation(w.to_string() + " is not admissible");
  CertificateStep step{w,
                       phi,
                       ambient_discrepancy(w, x),
                       weighted_valuation(psi, w).value(),
                       pair_discrepancy(w, x, psi, cert.constant),
                       {}};
  bool irreducible = true;
  for (std::size_t i = 0; i < 4; ++i) {
    ChartRecord c = chart_record(phi, w, i, psi);
    const auto sf = squarefree_decomposition(c.exceptional);
    const bool reduced = sf.layers.size() == 1 && sf.layers[0].multiplicity == 1 &&
                         total_degree(sf.monomial_content) == 0;
    irreducible = irreducible && reduced && is_evidently_irreducible(c.exceptional);
    step.charts.push_back(std::move(c));
  }
  cert.exceptional_irreducible = irreducible;

  const ChartRecord& ux = step.charts[0];
  const ChartRecord& uy = step.charts[1];
  const ChartRecord& uz = step.charts[2];
  const ChartRecord& ut = step.charts[3];
  for (const ChartRecord* c : {&ux, &uy}) {
    if (!c->misses_origin) throw InvariantViolation(c->chart + " strict transform passes through the chart origin");
    cert.leaves.push_back(miss_leaf(evaluate_at(c->strict, 3, 0), 0, c->chart,
                                    "strict transform misses the " + c->action + " point"));
  }
  // U_z is smooth (linear in t); S there is {t = 0}, i.e. x^2 + y^3 + z^(d-6).
  const Polynomial sz = drop_variable(evaluate_at(uz.strict, 3, 0), 3).renamed(kSurface);
  if (d - 6 < 6) {
    cert.leaves.push_back(surface_leaf(sz, 0, "U_z"));
  } else {
    CertificateLeaf leaf;
    leaf.kind = CertificateLeaf::Kind::CrepantChain;
    leaf.chart = "U_z";
    leaf.germ = sz;
    leaf.chain_d = d - 6;
    leaf.germ_class = classify_surface_germ(sz).germ;
    leaf.detail = "ct(C^3, " + sz.to_string() + ") = 5/6 >= 4/5 by the crepant chain";
    cert.leaves.push_back(std::move(leaf));
  }
  if (!ut.singular_point) throw InvariantViolation("U_t singular point not found");
  if (!ut.divisor || !ut.divisor->is_constant()) throw InvariantViolation("S passes through the U_t singular point");
  cert.leaves.push_back(miss_leaf(*ut.divisor, 0, "U_t",
                                  "S is empty in U_t; singular point " +
                                      format_action(ut.singular_point->action.order, ut.singular_point->labels) +
                                      " is terminal"));
  cert.steps.push_back(std::move(step));
  verify_certificate(cert);
  return cert;
}

void verify_certificate(const CrepantCertificate& cert) {
  if (cert.steps.empty()) throw InvariantViolation("certificate without steps");
  for (const auto& s : cert.steps) {
    if (s.pair_discrepancy != 0) throw InvariantViolation("step " + s.weight.to_string() + " is not crepant");
    if (s.discrepancy - cert.constant * s.valuation != 0) throw InvariantViolation("discrepancy identity fails");
  }
  for (const auto& leaf : cert.leaves) {
    switch (leaf.kind) {
      case CertificateLeaf::Kind::SmoothMiss:
        if (leaf.germ.constant_term() == 0) throw InvariantViolation(leaf.chart + " leaf does not miss the origin");
        break;
      case CertificateLeaf::Kind::Smooth:
      case CertificateLeaf::Kind::DuVal:
        if (!leaf.germ_class.is_smooth_or_du_val()) throw InvariantViolation("leaf is not Smooth or DuVal");
        break;
      case CertificateLeaf::Kind::CrepantChain:
        if (leaf.chain_d < 6 || make_rational(5, 6) < cert.constant) {
          throw InvariantViolation("chain leaf does not cover the certified constant");
        }
        break;
    }
  }
  for (const auto& c : cert.steps.front().charts) {
    if (c.singular_point && !is_terminal_cyclic_quotient(c.singular_point->action)) {
      throw InvariantViolation(c.chart + " singular point is not terminal");
    }
  }
}

}  // namespace ctlab
