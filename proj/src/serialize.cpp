#include "ctlab/serialize.hpp"

#include <algorithm>
#include <sstream>

namespace ctlab {

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

Json polynomial_or_null(const std::optional<Polynomial>& p) {
  return p ? Json(p->to_string()) : Json(nullptr);
}

Json ambient_json(const PairGerm& pair) {
  Json j;
  j["kind"] = pair.ambient.kind_name();
  if (pair.ambient.kind == AmbientGerm::Kind::Hypersurface) j["phi"] = pair.ambient.phi.to_string();
  return j;
}

std::string leaf_line(const CertificateLeaf& leaf) {
  std::string s = pad(leaf.chart, 5) + pad(leaf.kind_name(), 14) + leaf.germ.to_string();
  if (leaf.kind == CertificateLeaf::Kind::CrepantChain) s += "  -> chain d=" + std::to_string(leaf.chain_d);
  if (!leaf.detail.empty()) s += "  (" + leaf.detail + ")";
  return s;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Json weight_json(const Weight& w) { return w.numerators(); }

Json action_json(const QuotientAction& action, const std::vector<std::int64_t>& labels) {
  return {{"order", action.order}, {"residues", action.residues}, {"labels", labels}, {"text", format_action(action.order, labels)}};
}

Json trace_json(const NormalFormTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) steps.push_back(s.to_string());
  return {{"steps", steps}, {"final", trace.final.to_string()}, {"jet_cap", trace.jet_cap}};
}

Json chart_json(const StrictTransformResult& st, const Polynomial& exceptional) {
  const ChartTransform& c = st.chart;
  return {{"weight", weight_json(c.weight)},
          {"index", c.weight.index()},
          {"chart", c.name()},
          {"chart_index", c.chart_index},
          {"action", action_json(c.action, c.action_labels)},
          {"map", c.map.to_string()},
          {"strict", st.strict.to_string()},
          {"exceptional", exceptional.to_string()},
          {"multiplicity", rational_json(st.exceptional_multiplicity)}};
}

Json germ_json(const GermClass& g, const NormalFormTrace* trace) {
  Json j{{"verdict", g.verdict_name()}, {"jet_cap", g.jet_cap}, {"text", g.to_string()}};
  if (g.verdict == GermClass::Verdict::DuVal) {
    j["type"] = g.type();
    j["family"] = std::string(1, g.family);
    j["n"] = g.n;
  }
  if (g.verdict == GermClass::Verdict::NotDuVal) j["case_tag"] = g.tag;
  if (g.verdict == GermClass::Verdict::Undetermined) j["reason"] = g.tag;
  if (trace) j["trace"] = trace_json(*trace);
  return j;
}

Json admissibility_json(const AdmissibilityVerdict& v, const std::string& chart_name) {
  Json j{{"admissible", v.admissible}};
  if (!v.admissible) return j;
  Json point = Json::array();
  for (const auto& q : v.sample_point) point.push_back(rational_json(q));
  j["witness_chart"] = chart_name;
  j["witness_factor"] = v.witness_factor.to_string();
  j["generic_smoothness_checked"] = v.generic_smoothness_checked;
  j["sample_point"] = point;
  return j;
}

Json bound_json(const BoundReport& r) {
  Json evidence = Json::array();
  for (const auto& e : r.per_chart_evidence) {
    evidence.push_back({{"chart", e.chart}, {"action", e.action}, {"restriction", e.restriction.to_string()}});
  }
  Json j{{"bound", rational_json(r.bound)},
         {"weight", weight_json(r.witness)},
         {"discrepancy", rational_json(r.discrepancy)},
         {"valuation", rational_json(r.valuation)},
         {"per_chart_evidence", evidence}};
  if (r.witness.index() != 1) j["index"] = r.witness.index();
  if (r.search_cap > 0) j["search_cap"] = r.search_cap;
  if (r.admissibility) {
    const std::size_t w = r.admissibility->witness_chart;
    j["admissibility"] = admissibility_json(*r.admissibility, w < r.per_chart_evidence.size() ? r.per_chart_evidence[w].chart : "");
  } else {
    j["admissibility"] = "smooth-ambient";
  }
  return j;
}

Json decomposition_json(const CaseDecomposition& d) {
  Json deltas = Json::object();
  for (const auto& [name, value] : d.deltas) deltas[name] = rational_json(value);
  return {{"tag", d.tag},
          {"branch", d.branch},
          {"input", d.input.to_string()},
          {"eta", polynomial_or_null(d.eta)},
          {"xi", polynomial_or_null(d.xi)},
          {"zeta", polynomial_or_null(d.zeta)},
          {"lambda", polynomial_or_null(d.lambda)},
          {"delta_coefficients", deltas},
          {"normalizing_trace", trace_json(d.normalizing_trace)}};
}

Json quotient_json(const QuotientCaseResult& q) {
  Json j{{"weight", weight_json(q.weight)},
         {"index", q.weight.index()},
         {"discrepancy", rational_json(q.discrepancy)},
         {"valuation", rational_json(q.valuation)},
         {"psi_residue", q.psi_residue}};
  if (q.du_val()) {
    j["verdict"] = "DuValA";
    j["type"] = "A" + std::to_string(q.du_val_index());
  } else {
    j["verdict"] = "Bound";
    j["bound"] = rational_json(*q.bound);
  }
  return j;
}

Json residue_json(const ResidueAudit& a, const IndexData& data) {
  Json j{{"r", data.r},
         {"coordinate_residues", data.coordinate_residues},
         {"phi_residue", data.phi_residue},
         {"series", a.series},
         {"lhs", a.lhs},
         {"x3_residue", a.x3_residue},
         {"congruence_holds", a.congruence_holds},
         {"lambda_residue", a.lambda_residue}};
  if (data.psi_residue) j["psi_residue"] = *data.psi_residue;
  j["anticanonical"] = a.anticanonical ? Json(*a.anticanonical) : Json(nullptr);
  return j;
}

Json certificate_json(const CrepantCertificate& cert) {
  Json steps = Json::array();
  for (const auto& s : cert.steps) {
    Json charts = Json::array();
    for (const auto& c : s.charts) {
      Json cj{{"chart", c.chart},
              {"map", c.map},
              {"action", c.action},
              {"strict", c.strict.to_string()},
              {"exceptional", c.exceptional.to_string()},
              {"misses_origin", c.misses_origin}};
      if (c.divisor) cj["divisor"] = c.divisor->to_string();
      if (c.singular_point) {
        cj["singular_point"] = {
            {"type", format_action(c.singular_point->action.order, c.singular_point->labels)},
            {"order", c.singular_point->action.order},
            {"labels", c.singular_point->labels},
            {"coordinates", c.singular_point->coordinates},
            {"terminal", is_terminal_cyclic_quotient(c.singular_point->action)}};
      }
      charts.push_back(std::move(cj));
    }
    steps.push_back({{"weight", weight_json(s.weight)},
                     {"input", s.input.to_string()},
                     {"discrepancy", rational_json(s.discrepancy)},
                     {"valuation", rational_json(s.valuation)},
                     {"pair_discrepancy", rational_json(s.pair_discrepancy)},
                     {"charts", charts}});
  }
  Json leaves = Json::array();
  for (const auto& l : cert.leaves) {
    Json lj{{"kind", l.kind_name()}, {"step", l.step}, {"chart", l.chart}, {"germ", l.germ.to_string()},
            {"detail", l.detail}};
    if (l.kind == CertificateLeaf::Kind::Smooth || l.kind == CertificateLeaf::Kind::DuVal) {
      lj["class"] = l.germ_class.to_string();
    }
    if (l.kind == CertificateLeaf::Kind::CrepantChain) lj["chain_d"] = l.chain_d;
    leaves.push_back(std::move(lj));
  }
  Json j{{"type", cert.type},
         {"d", cert.d},
         {"constant", rational_json(cert.constant)},
         {"steps", steps},
         {"leaves", leaves},
         {"oracle_facts", cert.oracle_facts}};
  if (cert.exceptional_irreducible) j["exceptional_irreducible"] = *cert.exceptional_irreducible;
  return j;
}

Json audit_json(const GapAuditReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json j{{"psi", e.input.pair.psi.to_string()},
           {"ambient", ambient_json(e.input.pair)},
           {"classification", germ_json(e.germ)},
           {"status", e.status_name()},
           {"method", e.method}};
    if (!e.input.family.empty()) j["family"] = e.input.family;
    if (e.bound) j["bound"] = rational_json(*e.bound);
    if (e.witness) j["weight"] = weight_json(*e.witness);
    if (!e.certificate.empty()) j["certificate"] = e.certificate;
    if (!e.note.empty()) j["note"] = e.note;
    entries.push_back(std::move(j));
  }
  Json j{{"entries", entries},
         {"gap_violations", report.gap_violations},
         {"gorenstein_violations", report.gorenstein_violations},
         {"undetermined", report.undetermined},
         {"extremal", report.extremal},
         {"cap", report.cap},
         {"jet_cap", report.jet_cap}};
  j["epsilon_estimate"] = report.epsilon_estimate ? rational_json(*report.epsilon_estimate) : Json(nullptr);
  j["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string certificate_text(const CrepantCertificate& cert) {
  std::ostringstream out;
  out << "certificate " << cert.type << "  d=" << cert.d << "\n";
  out << "constant    " << to_string(cert.constant) << "\n";
  out << "oracle      ";
  for (std::size_t i = 0; i < cert.oracle_facts.size(); ++i) out << (i ? ", " : "") << cert.oracle_facts[i];
  out << "\n";
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& s = cert.steps[k];
    out << "\nstep " << k + 1 << "  weight " << s.weight.to_string() << "  on " << s.input.to_string() << "\n";
    out << "  a(G) = " << to_string(s.discrepancy) << "  v(psi) = " << to_string(s.valuation)
        << "  pair discrepancy at " << to_string(cert.constant) << " = " << to_string(s.pair_discrepancy) << "\n";
    std::size_t width = 0;
    for (const auto& c : s.charts) width = std::max(width, c.action.size());
    for (const auto& c : s.charts) {
      out << "  " << pad(c.chart, 5) << pad(c.action, width + 2) << c.map << "\n";
      out << "       strict       " << c.strict.to_string() << (c.misses_origin ? "   [misses origin]" : "") << "\n";
      out << "       exceptional  " << c.exceptional.to_string() << "\n";
      if (c.divisor) out << "       divisor      " << c.divisor->to_string() << "\n";
      if (c.singular_point) {
        out << "       point        1/" << c.singular_point->action.order << "(";
        for (std::size_t i = 0; i < c.singular_point->labels.size(); ++i) {
          out << (i ? "," : "") << c.singular_point->labels[i];
        }
        out << ")" << (is_terminal_cyclic_quotient(c.singular_point->action) ? " terminal" : "") << "\n";
      }
    }
  }
  out << "\nleaves\n";
  for (const auto& l : cert.leaves) out << "  step " << l.step + 1 << "  " << leaf_line(l) << "\n";
  return out.str();
}

std::string audit_text(const GapAuditReport& report) {
  std::ostringstream out;
  out << "gap audit: " << report.entries.size() << " entries, cap " << report.cap << ", jet cap " << report.jet_cap;
  if (report.seed) out << ", seed " << *report.seed;
  out << "\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    out << pad(std::to_string(i), 5) << pad(e.status_name(), 14)
        << pad(e.bound ? to_string(*e.bound) : "-", 6) << pad(e.witness ? e.witness->to_string() : "-", 12)
        << pad(e.germ.to_string(), 30) << e.input.pair.psi.to_string();
    if (e.input.pair.ambient.kind == AmbientGerm::Kind::Hypersurface) out << "  on " << e.input.pair.ambient.phi.to_string();
    out << "\n";
  }
  auto list = [&out](const char* name, const std::vector<std::size_t>& v) {
    out << pad(name, 22) << v.size();
    if (!v.empty() && v.size() <= 40) {
      out << "  [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
      out << "]";
    }
    out << "\n";
  };
  list("gap violations", report.gap_violations);
  list("gorenstein violations", report.gorenstein_violations);
  list("undetermined", report.undetermined);
  list("extremal (5/6)", report.extremal);
  out << pad("epsilon estimate", 22) << (report.epsilon_estimate ? to_string(*report.epsilon_estimate) : "-") << "\n";
  return out.str();
}

std::string bound_text(const BoundReport& r) {
  std::ostringstream out;
  out << "bound " << to_string(r.bound) << " at " << r.witness.to_string() << "\n";
  out << "  a(G) = " << to_string(r.discrepancy) << "  v(psi) = " << to_string(r.valuation) << "\n";
  if (r.admissibility) {
    out << "  admissible: " << (r.admissibility->admissible ? "yes" : "no");
    if (r.admissibility->admissible) out << ", reduced component " << r.admissibility->witness_factor.to_string();
    out << "\n";
  }
  for (const auto& e : r.per_chart_evidence) {
    out << "  " << pad(e.chart, 5) << pad(e.action, 18) << e.restriction.to_string() << "\n";
  }
  return out.str();
}

}  // namespace ctlab
