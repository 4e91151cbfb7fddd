#include <doctest.h>

#include "ctlab/serialize.hpp"
#include "support.hpp"

using namespace ctlab;
using namespace ctlab::testing;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

PairGerm smooth_pair(const std::string& psi) { return {AmbientGerm::smooth(3), P(psi)}; }

}  // namespace

TEST_CASE("bound_json: fields and round trip") {
  auto outcome = search_upper_bound(smooth_pair("x^2+y^3+z^6"), 8);
  REQUIRE(outcome.report);
  Json j = bound_json(*outcome.report);
  CHECK(j["bound"] == "5/6");
  CHECK(j["weight"] == Json::array({3, 2, 1}));
  CHECK(j["discrepancy"] == "5");
  CHECK(j["valuation"] == "6");
  CHECK(j["search_cap"] == 8);
  CHECK_FALSE(j.contains("index"));
  const std::string text = dump(j);
  CHECK(dump(Json::parse(text)) == text);
  CHECK(text.back() == '\n');
}

TEST_CASE("germ_json and trace") {
  auto c = classify_surface_germ(P("x^2+y^3+z^4"));
  Json j = germ_json(c.germ, &c.trace);
  CHECK(j["verdict"] == "DuVal");
  CHECK(j["type"] == "E6");
  CHECK(j["trace"]["final"].is_string());
  auto nd = classify_surface_germ(P("x^3+y^3+z^3"));
  CHECK(germ_json(nd.germ)["verdict"] == "NotDuVal");
  CHECK(germ_json(nd.germ).contains("case_tag"));
}

TEST_CASE("certificate json and text") {
  auto chain = certify_crepant_chain(30);
  Json j = certificate_json(chain);
  CHECK(j["constant"] == "5/6");
  CHECK(j["steps"].size() == 5);
  CHECK(j["oracle_facts"] == Json::array({"ReidThm2.6"}));
  for (const auto& s : j["steps"]) CHECK(s["pair_discrepancy"] == "0");
  const std::string text = certificate_text(chain);
  CHECK(count(text, "\nstep ") == 5);

  auto hyp = certify_hypersurface_example(7);
  const std::string ht = certificate_text(hyp);
  for (const char* chart : {"U_x", "U_y", "U_z", "U_t"}) CHECK(count(ht, std::string("  ") + chart + " ") >= 1);
  CHECK(ht.find("mu_5(3,2,1,-1)") != std::string::npos);
  Json hj = certificate_json(hyp);
  CHECK(hj["steps"][0]["charts"].size() == 4);
  CHECK(hj["steps"][0]["charts"][3]["singular_point"]["type"] == "mu_5(3,2,-1)");
  CHECK(hj["steps"][0]["charts"][3]["singular_point"]["terminal"] == true);
  CHECK(hj["exceptional_irreducible"] == true);
}

TEST_CASE("audit json") {
  std::vector<PairGerm> corpus{smooth_pair("x^2+y^3+z^5"), smooth_pair("x^3+y^3+z^3"), smooth_pair("x^2+y^3+z^7")};
  auto report = gap_audit(corpus, 8);
  Json j = audit_json(report);
  CHECK(j["entries"].size() == 3);
  CHECK(j["entries"][0]["status"] == "ct=1");
  CHECK(j["entries"][1]["bound"] == "2/3");
  CHECK(j["entries"][2]["bound"] == "5/6");
  CHECK(j["gap_violations"].empty());
  CHECK(j["seed"].is_null());
  CHECK(j["epsilon_estimate"] == "1/6");
  CHECK(audit_text(report).find("gap violations") != std::string::npos);
}

TEST_CASE("quotient and residue json") {
  Json c = quotient_json(quotient_case_bound(5, 2, P("x*y")));
  CHECK(c["index"] == 5);
  CHECK(c["verdict"] == "Bound");
  CHECK(c["bound"] == "1/5");
  Json b = quotient_json(quotient_case_bound(3, 1, P("z")));
  CHECK(b["verdict"] == "DuValA");
  CHECK(b["type"] == "A2");

  auto main = infer_series(3, {1, 2, 1, 0}, 0, 1);
  REQUIRE(main);
  Json r = residue_json(residue_audit(*main), *main);
  CHECK(r["series"] == "MainSeries(a=1)");
  CHECK(r["congruence_holds"] == true);
  CHECK(r["anticanonical"] == true);
  auto cax = infer_series(4, {1, 3, 1, 2}, 2);
  REQUIRE(cax);
  CHECK(residue_json(residue_audit(*cax), *cax)["anticanonical"].is_null());
}
