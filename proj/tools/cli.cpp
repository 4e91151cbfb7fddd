#include "ctlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ctlab/audit.hpp"
#include "ctlab/certificate.hpp"
#include "ctlab/errors.hpp"
#include "ctlab/parser.hpp"
#include "ctlab/serialize.hpp"

namespace ctlab::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Subcommand outcome before formatting.
struct Outcome {
  Json json;
  std::string text;
  int exit_code = kExitOk;
};

struct Options {
  std::string format = "text";
  std::optional<int> jet_cap;

  std::string poly, weight, vars, degree, chart;
  std::int64_t index = 1;

  std::string ambient = "smooth";
  std::string phi, psi, c, method = "search";
  std::optional<std::int64_t> r, a;
  int cap = kDefaultSearchCap;

  std::string family;
  int d = 0;

  std::string corpus, residues;
  std::uint64_t seed = kDefaultAuditSeed;
  int per_case = 70;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw UsageError(what + ": not an integer: '" + s + "'");
  return v;
}

std::vector<std::int64_t> parse_ints(std::string s, const std::string& what) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::int64_t> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_int(item, what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

Variables default_variables(std::size_t n) {
  if (n == 3) return {"x", "y", "z"};
  if (n == 4) return {"x", "y", "z", "t"};
  Variables v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

Variables resolve_variables(const Options& o, std::size_t n) {
  if (o.vars.empty()) return default_variables(n);
  Variables v = split(o.vars, ',');
  if (v.size() != n) {
    throw UsageError("--vars lists " + std::to_string(v.size()) + " names, expected " + std::to_string(n));
  }
  return v;
}

Weight parse_weight(const Options& o) {
  if (o.weight.empty()) throw UsageError("--weight is required");
  return Weight(parse_ints(o.weight, "--weight"), o.index);
}

Json valuation_json(const Valuation& v) { return v.is_infinite() ? Json("infinity") : rational_json(v.value()); }

std::string valuation_text(const Valuation& v) { return v.is_infinite() ? "infinity" : to_string(v.value()); }

Outcome cmd_val(const Options& o) {
  const Weight w = parse_weight(o);
  const Polynomial p = parse_polynomial(o.poly, resolve_variables(o, w.size()));
  const Valuation v = weighted_valuation(p, w);
  Json j{{"poly", p.to_string()}, {"weight", weight_json(w)}, {"index", w.index()}, {"valuation", valuation_json(v)}};
  return {j, "v_" + w.to_string() + "(" + p.to_string() + ") = " + valuation_text(v) + "\n"};
}

Outcome cmd_part(const Options& o) {
  if (o.weight.empty()) {
    const Polynomial p = parse_polynomial(o.poly, o.vars.empty() ? default_variables(3) : split(o.vars, ','));
    const int d = static_cast<int>(parse_int(o.degree, "--degree"));
    const Polynomial part = homogeneous_part(p, d);
    Json j{{"poly", p.to_string()}, {"degree", std::to_string(d)}, {"part", part.to_string()}};
    return {j, part.to_string() + "\n"};
  }
  const Weight w = parse_weight(o);
  const Polynomial p = parse_polynomial(o.poly, resolve_variables(o, w.size()));
  const Rational d = parse_rational(o.degree);
  const Polynomial part = weighted_part(p, w, d);
  Json j{{"poly", p.to_string()},
         {"weight", weight_json(w)},
         {"index", w.index()},
         {"degree", rational_json(d)},
         {"part", part.to_string()}};
  return {j, part.to_string() + "\n"};
}

std::size_t chart_index(const std::string& chart, const Variables& vars) {
  std::string name = chart.rfind("U_", 0) == 0 ? chart.substr(2) : chart;
  const auto it = std::find(vars.begin(), vars.end(), name);
  if (it != vars.end()) return static_cast<std::size_t>(it - vars.begin());
  const auto i = parse_int(name, "--chart");
  if (i < 0 || static_cast<std::size_t>(i) >= vars.size()) throw UsageError("--chart out of range: " + chart);
  return static_cast<std::size_t>(i);
}

std::string chart_text(const StrictTransformResult& st, const Polynomial& exceptional) {
  std::ostringstream out;
  out << st.chart.name() << "  " << st.chart.action_string() << "\n";
  out << "  map          " << st.chart.map.to_string() << "\n";
  out << "  strict       " << st.strict.to_string() << "\n";
  out << "  exceptional  " << exceptional.to_string() << "\n";
  out << "  multiplicity " << to_string(st.exceptional_multiplicity) << "\n";
  return out.str();
}

Outcome cmd_blowup(const Options& o) {
  const Weight w = parse_weight(o);
  const Variables vars = resolve_variables(o, w.size());
  const Polynomial p = parse_polynomial(o.poly, vars);
  std::vector<std::size_t> charts;
  if (o.chart.empty()) {
    for (std::size_t i = 0; i < w.size(); ++i) charts.push_back(i);
  } else {
    charts.push_back(chart_index(o.chart, vars));
  }
  Json list = Json::array();
  std::string text = "blowup " + w.to_string() + " of " + p.to_string() + "\n";
  for (auto i : charts) {
    const StrictTransformResult st = strict_transform(p, w, i);
    const Polynomial e = exceptional_restriction(p, w, i);
    list.push_back(chart_json(st, e));
    text += "\n" + chart_text(st, e);
  }
  Json j{{"poly", p.to_string()}, {"weight", weight_json(w)}, {"index", w.index()}, {"charts", list}};
  return {j, text};
}

AmbientGerm quotient_ambient(const Options& o) {
  if (!o.r || !o.a) throw UsageError("--ambient quotient needs --r and --a");
  return AmbientGerm::cyclic_quotient(QuotientAction::make(*o.r, {*o.a, -*o.a, 1}));
}

Outcome cmd_disc(const Options& o) {
  AmbientGerm ambient;
  Weight w = o.weight.empty() && o.ambient == "quotient" && o.r && o.a
                 ? Weight({*o.a, *o.r - *o.a, 1}, *o.r)
                 : parse_weight(o);
  const Variables vars = resolve_variables(o, w.size());
  if (o.ambient == "smooth") {
    ambient = AmbientGerm::smooth(w.size());
  } else if (o.ambient == "hypersurface") {
    if (o.phi.empty()) throw UsageError("--ambient hypersurface needs --phi");
    ambient = AmbientGerm::hypersurface(parse_polynomial(o.phi, vars));
  } else {
    ambient = quotient_ambient(o);
  }
  const Rational a = ambient_discrepancy(w, ambient);
  Json j{{"ambient", ambient.kind_name()}, {"weight", weight_json(w)}, {"index", w.index()}, {"discrepancy", rational_json(a)}};
  std::string text = "a" + w.to_string() + " = " + to_string(a) + "\n";
  if (!o.psi.empty()) {
    const Polynomial psi = parse_polynomial(o.psi, vars);
    const Valuation v = weighted_valuation(psi, w);
    j["valuation"] = valuation_json(v);
    text += "v(psi) = " + valuation_text(v) + "\n";
    if (v.is_finite() && v.value() > 0) {
      j["bound"] = rational_json(a / v.value());
      text += "bound = " + to_string(a / v.value()) + "\n";
    }
    if (!o.c.empty()) {
      const Rational pd = pair_discrepancy(w, ambient, psi, parse_rational(o.c));
      j["c"] = rational_json(parse_rational(o.c));
      j["pair_discrepancy"] = rational_json(pd);
      text += "a" + w.to_string() + " at c = " + o.c + ": " + to_string(pd) + "\n";
    }
  } else if (!o.c.empty()) {
    throw UsageError("--c needs --psi");
  }
  return {j, text};
}

Outcome bound_from_report(const BoundReport& r, Json extra) {
  Json j = bound_json(r);
  j.update(extra);
  return {j, bound_text(r)};
}

Outcome cmd_bound(const Options& o, int jet_cap) {
  if (o.psi.empty() && o.poly.empty()) throw UsageError("--psi is required");
  const std::string psi_text = o.psi.empty() ? o.poly : o.psi;
  if (o.ambient == "quotient") {
    if (!o.r || !o.a) throw UsageError("--ambient quotient needs --r and --a");
    const auto q = quotient_case_bound(*o.r, *o.a, parse_polynomial(psi_text, resolve_variables(o, 3)));
    Json j = quotient_json(q);
    j["method"] = "tree";
    j["ambient"] = "quotient";
    j["psi"] = parse_polynomial(psi_text, resolve_variables(o, 3)).to_string();
    std::string text = q.du_val() ? "DuValA(" + std::to_string(q.du_val_index()) + ") at " + q.weight.to_string() + "\n"
                                  : "bound " + to_string(*q.bound) + " at " + q.weight.to_string() + "\n";
    return {j, text};
  }
  const bool hyper = o.ambient == "hypersurface";
  const Variables vars = resolve_variables(o, hyper ? 4 : 3);
  const Polynomial psi = parse_polynomial(psi_text, vars);
  PairGerm pair{AmbientGerm::smooth(3), psi};
  if (hyper) {
    if (o.phi.empty()) throw UsageError("--ambient hypersurface needs --phi");
    pair.ambient = AmbientGerm::hypersurface(parse_polynomial(o.phi, vars));
  }
  Json context{{"method", o.method}, {"ambient", pair.ambient.kind_name()}, {"psi", psi.to_string()}};
  if (hyper) context["phi"] = pair.ambient.phi.to_string();

  if (o.method == "search") {
    const SearchOutcome s = search_upper_bound(pair, o.cap);
    if (s.no_witness()) {
      Json j = context;
      j["status"] = "no-witness";
      j["search_cap"] = o.cap;
      j["weights_examined"] = s.weights_examined;
      return {j, "no admissible weight with sum <= " + std::to_string(o.cap) + "\n", kExitUndetermined};
    }
    return bound_from_report(*s.report, context);
  }

  if (!hyper) {
    const SmoothCaseResult res = smooth_case_bound(psi, jet_cap);
    context["classification"] = germ_json(res.germ);
    if (res.du_val_or_smooth()) {
      Json j = context;
      j["status"] = "ct=1";
      j["bound"] = "1";
      return {j, res.germ.to_string() + ": ct = 1\n"};
    }
    context["decomposition"] = decomposition_json(res.bound->decomposition);
    auto out = bound_from_report(res.bound->report, context);
    out.text = res.germ.to_string() + "\n" + out.text;
    return out;
  }

  const GorensteinCaseResult res = gorenstein_case_bound(pair.ambient.phi, psi, jet_cap);
  context["eta_class"] = germ_json(res.eta_class);
  if (res.unhandled()) {
    Json j = context;
    j["status"] = "unhandled";
    j["reason"] = res.unhandled_reason;
    return {j, "unhandled: " + res.unhandled_reason + "\n", kExitUndetermined};
  }
  context["decomposition"] = decomposition_json(res.bound->decomposition);
  auto out = bound_from_report(res.bound->report, context);
  out.text = res.bound->decomposition.tag + " / " + res.bound->decomposition.branch + "\n" + out.text;
  return out;
}

Outcome cmd_classify(const Options& o, int jet_cap) {
  const std::string text = o.psi.empty() ? o.poly : o.psi;
  if (text.empty()) throw UsageError("--psi is required");
  const Polynomial psi = parse_polynomial(text, o.vars.empty() ? default_variables(3) : split(o.vars, ','));
  const Classification c = classify_surface_germ(psi, jet_cap);
  Json j = germ_json(c.germ, &c.trace);
  j["psi"] = psi.to_string();
  const int code = c.germ.verdict == GermClass::Verdict::Undetermined ? kExitUndetermined : kExitOk;
  return {j, c.germ.to_string() + "\n", code};
}

Outcome cmd_certify(const Options& o) {
  const CrepantCertificate cert = o.family == "zd" ? certify_crepant_chain(o.d) : certify_hypersurface_example(o.d);
  verify_certificate(cert);
  return {certificate_json(cert), certificate_text(cert)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome cmd_residues(const Options& o) {
  const auto parts = split(o.residues, ';');
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("--residues expects \"r;a1,a2,a3,a4;phi[;psi]\"");
  const auto r = parse_int(parts[0], "--residues r");
  const auto coords = parse_ints(parts[1], "--residues coordinates");
  const auto phi = parse_int(parts[2], "--residues phi");
  std::optional<std::int64_t> psi;
  if (parts.size() == 4) psi = parse_int(parts[3], "--residues psi");
  const auto data = infer_series(r, coords, phi, psi);
  if (!data) throw PreconditionError("series-pattern mismatch: residues fit neither the main series nor cAx/4");
  const ResidueAudit a = residue_audit(*data);
  std::ostringstream text;
  text << a.series << "\n"
       << "wt(x1x2x3x4) - wt(phi) = " << a.lhs << " mod " << data->r << ", wt(x3) = " << a.x3_residue << "  "
       << (a.congruence_holds ? "holds" : "FAILS") << "\n"
       << "lambda residue " << a.lambda_residue;
  if (a.anticanonical) text << ", psi anticanonical: " << (*a.anticanonical ? "yes" : "no");
  text << "\n";
  return {residue_json(a, *data), text.str(), a.congruence_holds ? kExitOk : kExitInvariant};
}

Outcome cmd_audit(const Options& o, int jet_cap) {
  if (!o.residues.empty()) return cmd_residues(o);
  GapAuditReport report;
  if (!o.corpus.empty()) {
    report = gap_audit(parse_corpus(read_file(o.corpus)), o.cap, jet_cap);
  } else {
    report = gap_audit(generate_corpus(o.seed, o.per_case), o.cap, jet_cap);
    report.seed = o.seed;
  }
  const bool violated = !report.gap_violations.empty() || !report.gorenstein_violations.empty();
  return {audit_json(report), audit_text(report), violated ? kExitInvariant : kExitOk};
}

int resolve_jet_cap(const Options& o, const std::optional<std::string>& env) {
  int cap = kDefaultJetCap;
  if (env && !trim(*env).empty()) cap = static_cast<int>(parse_int(trim(*env), "CT_LAB_JET_CAP"));
  if (o.jet_cap) cap = *o.jet_cap;
  if (cap < 2) throw UsageError("jet cap must be at least 2");
  return cap;
}

void add_vars(CLI::App* sub, Options& o) {
  sub->add_option("--vars", o.vars, "Comma-separated variable names (default x,y,z or x,y,z,t)");
}

}  // namespace

Report run(const std::vector<std::string>& args, const std::optional<std::string>& env_jet_cap) {
  Options o;
  CLI::App app{"Canonical threshold bounds for 3-fold pairs via weighted blowups", "ct-lab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jet-cap", o.jet_cap, "Working jet for classification (overrides CT_LAB_JET_CAP)");

  auto* val = app.add_subcommand("val", "Weighted valuation v_alpha(p)");
  val->add_option("--poly", o.poly, "Polynomial")->required();
  val->add_option("--weight", o.weight, "Weight numerators, e.g. 3,2,1")->required();
  val->add_option("--index", o.index, "Weight index r for 1/r(a_1,...,a_n)")->capture_default_str();
  add_vars(val, o);

  auto* part = app.add_subcommand("part", "Homogeneous or weighted-homogeneous part");
  part->add_option("--poly", o.poly, "Polynomial")->required();
  part->add_option("--degree", o.degree, "Degree (rational with --weight)")->required();
  part->add_option("--weight", o.weight, "Weight numerators; omit for the ordinary grading");
  part->add_option("--index", o.index, "Weight index")->capture_default_str();
  add_vars(part, o);

  auto* blowup = app.add_subcommand("blowup", "Charts and strict transforms of a weighted blowup");
  blowup->add_option("--poly", o.poly, "Polynomial")->required();
  blowup->add_option("--weight", o.weight, "Weight numerators")->required();
  blowup->add_option("--chart", o.chart, "Chart: variable name, U_<name> or 0-based index (default: all)");
  add_vars(blowup, o);

  const std::vector<std::string> ambients{"smooth", "hypersurface", "quotient"};
  auto* disc = app.add_subcommand("disc", "Discrepancy, valuation and pair discrepancy");
  disc->add_option("--ambient", o.ambient, "Ambient germ")->check(CLI::IsMember(ambients))->capture_default_str();
  disc->add_option("--weight", o.weight, "Weight numerators");
  disc->add_option("--index", o.index, "Weight index")->capture_default_str();
  disc->add_option("--phi", o.phi, "Hypersurface equation in x,y,z,t");
  disc->add_option("--psi", o.psi, "Divisor equation");
  disc->add_option("--c", o.c, "Coefficient c for a(G, K_X + cS)");
  disc->add_option("--r", o.r, "Quotient index");
  disc->add_option("--a", o.a, "Quotient weight a in 1/r(a,-a,1)");
  add_vars(disc, o);

  auto* bound = app.add_subcommand("bound", "Certified upper bound on ct(X, S)");
  bound->add_option("--ambient", o.ambient, "Ambient germ")->check(CLI::IsMember(ambients))->capture_default_str();
  bound->add_option("--method", o.method, "Weight search or case tree")
      ->check(CLI::IsMember({"search", "tree"}))
      ->capture_default_str();
  bound->add_option("--psi", o.psi, "Divisor equation")->required();
  bound->add_option("--phi", o.phi, "Hypersurface equation in x,y,z,t");
  bound->add_option("--cap", o.cap, "Search cap on the weight sum")->check(CLI::Range(1, 64))->capture_default_str();
  bound->add_option("--r", o.r, "Quotient index");
  bound->add_option("--a", o.a, "Quotient weight a in 1/r(a,-a,1)");
  add_vars(bound, o);

  auto* classify = app.add_subcommand("classify", "Du Val classification of a surface germ");
  classify->add_option("--psi", o.psi, "Surface equation in x,y,z")->required();
  add_vars(classify, o);

  auto* certify = app.add_subcommand("certify", "Crepant-chain certificates for the extremal families");
  certify->add_option("--family", o.family, "zd: x^2+y^3+z^d in C^3; hyp: S={t=0} on x^2+y^3+z^d+tz")
      ->required()
      ->check(CLI::IsMember({"zd", "hyp"}));
  certify->add_option("--d", o.d, "Exponent d")->required();

  auto* audit = app.add_subcommand("audit", "Gap audit over a seeded or user corpus; residue congruence audit");
  audit->add_option("--corpus", o.corpus, "Corpus file (one expression per line, # comments)");
  audit->add_option("--seed", o.seed, "Seed for the generated corpus")->capture_default_str();
  audit->add_option("--per-case", o.per_case, "Generated entries per smooth case")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  audit->add_option("--cap", o.cap, "Search cap for the fallback search")->check(CLI::Range(1, 64))->capture_default_str();
  audit->add_option("--residues", o.residues, "Residue audit: \"r;a1,a2,a3,a4;phi[;psi]\"");

  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? kExitOk : kExitUserError, out.str(), err.str()};
  }

  Report report;
  try {
    const int jet_cap = resolve_jet_cap(o, env_jet_cap);
    Outcome result;
    if (val->parsed()) result = cmd_val(o);
    else if (part->parsed()) result = cmd_part(o);
    else if (blowup->parsed()) result = cmd_blowup(o);
    else if (disc->parsed()) result = cmd_disc(o);
    else if (bound->parsed()) result = cmd_bound(o, jet_cap);
    else if (classify->parsed()) result = cmd_classify(o, jet_cap);
    else if (certify->parsed()) result = cmd_certify(o);
    else result = cmd_audit(o, jet_cap);
    report.exit_code = result.exit_code;
    report.out = o.format == "json" ? dump(result.json) : result.text;
  } catch (const ParseError& e) {
    report = {kExitUserError, "", std::string("error: malformed polynomial: ") + e.what() + "\n"};
  } catch (const UndeterminedError& e) {
    report = {kExitUndetermined, "", std::string("undetermined: ") + e.what() + "\n"};
  } catch (const InvariantViolation& e) {
    report = {kExitInvariant, "", std::string("internal invariant violation: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    report = {kExitUserError, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::out_of_range& e) {
    report = {kExitUserError, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    report = {kExitInvariant, "", std::string("internal error: ") + e.what() + "\n"};
  }
  return report;
}

}  // namespace ctlab::cli
