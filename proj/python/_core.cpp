#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctlab/audit.hpp"
#include "ctlab/certificate.hpp"
#include "ctlab/cli.hpp"
#include "ctlab/errors.hpp"
#include "ctlab/parser.hpp"
#include "ctlab/serialize.hpp"

namespace py = pybind11;
using namespace ctlab;

namespace {

Variables default_variables(std::size_t n) {
  if (n == 4) return {"x", "y", "z", "t"};
  return {"x", "y", "z"};
}

Variables or_default(const std::optional<Variables>& vars, std::size_t n) { return vars ? *vars : default_variables(n); }

std::string valuation(const std::string& poly, const std::vector<std::int64_t>& weight, std::int64_t index,
                      const std::optional<Variables>& vars) {
  const Weight w(weight, index);
  const Polynomial p = parse_polynomial(poly, or_default(vars, w.size()));
  const Valuation v = weighted_valuation(p, w);
  Json j{{"poly", p.to_string()},
         {"weight", weight_json(w)},
         {"index", w.index()},
         {"valuation", v.is_infinite() ? Json("infinity") : rational_json(v.value())}};
  return dump(j);
}

std::string blowup(const std::string& poly, const std::vector<std::int64_t>& weight,
                   const std::optional<Variables>& vars) {
  const Weight w(weight);
  const Polynomial p = parse_polynomial(poly, or_default(vars, w.size()));
  Json charts = Json::array();
  for (std::size_t i = 0; i < w.size(); ++i) {
    charts.push_back(chart_json(strict_transform(p, w, i), exceptional_restriction(p, w, i)));
  }
  return dump(Json{{"poly", p.to_string()}, {"weight", weight_json(w)}, {"index", 1}, {"charts", charts}});
}

std::string classify(const std::string& psi, int jet_cap) {
  const Classification c = classify_surface_germ(parse_polynomial(psi, default_variables(3)), jet_cap);
  Json j = germ_json(c.germ, &c.trace);
  j["psi"] = parse_polynomial(psi, default_variables(3)).to_string();
  return dump(j);
}

std::string search_bound(const std::string& psi, const std::optional<std::string>& phi, int cap) {
  const Variables vars = default_variables(phi ? 4 : 3);
  PairGerm pair{phi ? AmbientGerm::hypersurface(parse_polynomial(*phi, vars)) : AmbientGerm::smooth(3),
                parse_polynomial(psi, vars)};
  const SearchOutcome s = search_upper_bound(pair, cap);
  if (s.no_witness()) {
    return dump(Json{{"status", "no-witness"}, {"search_cap", cap}, {"weights_examined", s.weights_examined}});
  }
  return dump(bound_json(*s.report));
}

std::string smooth_bound(const std::string& psi, int jet_cap) {
  const SmoothCaseResult r = smooth_case_bound(parse_polynomial(psi, default_variables(3)), jet_cap);
  Json j{{"classification", germ_json(r.germ)}};
  if (r.du_val_or_smooth()) {
    j["status"] = "ct=1";
    j["bound"] = "1";
    return dump(j);
  }
  j.update(bound_json(r.bound->report));
  j["decomposition"] = decomposition_json(r.bound->decomposition);
  return dump(j);
}

std::string gorenstein_bound(const std::string& phi, const std::string& psi, int jet_cap) {
  const Variables vars = default_variables(4);
  const GorensteinCaseResult r = gorenstein_case_bound(parse_polynomial(phi, vars), parse_polynomial(psi, vars), jet_cap);
  Json j{{"eta_class", germ_json(r.eta_class)}};
  if (r.unhandled()) {
    j["status"] = "unhandled";
    j["reason"] = r.unhandled_reason;
    return dump(j);
  }
  j.update(bound_json(r.bound->report));
  j["decomposition"] = decomposition_json(r.bound->decomposition);
  return dump(j);
}

std::string quotient_bound(std::int64_t r, std::int64_t a, const std::string& psi) {
  return dump(quotient_json(quotient_case_bound(r, a, parse_polynomial(psi, default_variables(3)))));
}

std::string residues(std::int64_t r, const std::vector<std::int64_t>& coords, std::int64_t phi,
                     std::optional<std::int64_t> psi) {
  const auto data = infer_series(r, coords, phi, psi);
  if (!data) throw PreconditionError("series-pattern mismatch: residues fit neither the main series nor cAx/4");
  return dump(residue_json(residue_audit(*data), *data));
}

std::string certify(const std::string& family, int d) {
  if (family != "zd" && family != "hyp") throw PreconditionError("family must be 'zd' or 'hyp'");
  const CrepantCertificate cert = family == "zd" ? certify_crepant_chain(d) : certify_hypersurface_example(d);
  verify_certificate(cert);
  return dump(certificate_json(cert));
}

std::string audit_seeded(std::uint64_t seed, int per_case, int cap, int jet_cap) {
  GapAuditReport report = gap_audit(generate_corpus(seed, per_case), cap, jet_cap);
  report.seed = seed;
  return dump(audit_json(report));
}

std::string audit_corpus(const std::string& text, int cap, int jet_cap) {
  return dump(audit_json(gap_audit(parse_corpus(text), cap, jet_cap)));
}

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args,
                                                  const std::optional<std::string>& env_jet_cap) {
  const auto r = cli::run(args, env_jet_cap);
  return {r.exit_code, r.out, r.err};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Canonical threshold bounds via weighted blowups; every function returns a JSON string.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ContextMismatch>(m, "ContextMismatch", PyExc_ValueError);
  py::register_exception<UndeterminedError>(m, "UndeterminedError", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.attr("DEFAULT_JET_CAP") = kDefaultJetCap;
  m.attr("DEFAULT_SEARCH_CAP") = kDefaultSearchCap;
  m.attr("DEFAULT_SEED") = kDefaultAuditSeed;

  m.def("valuation", &valuation, py::arg("poly"), py::arg("weight"), py::arg("index") = 1, py::arg("vars") = py::none());
  m.def("blowup", &blowup, py::arg("poly"), py::arg("weight"), py::arg("vars") = py::none());
  m.def("classify", &classify, py::arg("psi"), py::arg("jet_cap") = kDefaultJetCap);
  m.def("search_bound", &search_bound, py::arg("psi"), py::arg("phi") = py::none(), py::arg("cap") = kDefaultSearchCap);
  m.def("smooth_bound", &smooth_bound, py::arg("psi"), py::arg("jet_cap") = kDefaultJetCap);
  m.def("gorenstein_bound", &gorenstein_bound, py::arg("phi"), py::arg("psi"), py::arg("jet_cap") = kDefaultJetCap);
  m.def("quotient_bound", &quotient_bound, py::arg("r"), py::arg("a"), py::arg("psi"));
  m.def("residues", &residues, py::arg("r"), py::arg("coordinate_residues"), py::arg("phi_residue"),
        py::arg("psi_residue") = py::none());
  m.def("certify", &certify, py::arg("family"), py::arg("d"));
  m.def("audit_seeded", &audit_seeded, py::arg("seed") = kDefaultAuditSeed, py::arg("per_case") = 70,
        py::arg("cap") = kDefaultSearchCap, py::arg("jet_cap") = kDefaultJetCap);
  m.def("audit_corpus", &audit_corpus, py::arg("text"), py::arg("cap") = kDefaultSearchCap,
        py::arg("jet_cap") = kDefaultJetCap);
  m.def("run_cli", &run_cli, py::arg("args"), py::arg("env_jet_cap") = py::none());
}
