#include <doctest.h>

#include "ctlab/errors.hpp"
#include "ctlab/threshold.hpp"
#include "support.hpp"

using namespace ctlab;
using namespace ctlab::testing;

namespace {

PairGerm smooth_pair(const std::string& psi) { return {AmbientGerm::smooth(3), P(psi)}; }

PairGerm hyper_pair(const std::string& phi, const std::string& psi = "t") {
  return {AmbientGerm::hypersurface(P4(phi)), P4(psi)};
}

Rational search_bound(const PairGerm& pair, int cap) { return search_upper_bound(pair, cap).report->bound; }

void check_recomputable(const BoundReport& r, const PairGerm& pair) {
  CHECK(r.valuation == weighted_valuation(pair.psi, r.witness).value());
  CHECK(r.discrepancy == ambient_discrepancy(r.witness, pair.ambient));
  CHECK(r.bound == r.discrepancy / r.valuation);
}

void check_gorenstein(const std::string& phi, const Weight& w, const Rational& bound) {
  const GorensteinCaseResult g = gorenstein_case_bound(P4(phi), P4("t"));
  REQUIRE_MESSAGE(!g.unhandled(), phi, ": ", g.unhandled_reason);
  const BoundReport& r = g.bound->report;
  CHECK_MESSAGE(r.witness == w, phi, " gave ", r.witness.to_string());
  CHECK(r.bound == bound);
  REQUIRE(r.admissibility.has_value());
  CHECK(r.admissibility->admissible);
  const NormalFormTrace& tr = g.bound->decomposition.normalizing_trace;
  CHECK(replay(truncate(P4(phi), tr.jet_cap), tr.steps) == tr.final);
  check_recomputable(r, {AmbientGerm::hypersurface(tr.final), P4("t")});
}

}  // namespace

TEST_CASE("enumerate_weights: order and primitivity") {
  const auto ws = enumerate_weights(3, 5);
  std::vector<std::string> got;
  for (const auto& w : ws) got.push_back(w.to_string());
  CHECK(got == std::vector<std::string>{"(1,1,1)", "(1,1,2)", "(1,2,1)", "(2,1,1)", "(1,1,3)", "(1,2,2)",
                                        "(1,3,1)", "(2,1,2)", "(2,2,1)", "(3,1,1)"});
  // (2,2,2) has sum 6 and is not primitive
  for (const auto& w : enumerate_weights(3, 6)) CHECK(w.to_string() != "(2,2,2)");
  CHECK(enumerate_weights(4, 3).empty());
}

TEST_CASE("search_upper_bound: worked examples") {
  auto a = search_upper_bound(smooth_pair("x^2+y^3+z^6"), 8);
  REQUIRE(a.report);
  CHECK(a.report->bound == Q(5, 6));
  CHECK(a.report->witness == Weight({3, 2, 1}));
  CHECK_FALSE(a.report->admissibility.has_value());
  CHECK(a.report->per_chart_evidence.size() == 3);
  CHECK(a.report->per_chart_evidence[0].action == "mu_3(-1,2,1)");

  auto b = search_upper_bound(smooth_pair("x"), 8);
  CHECK(b.report->bound == Q(7, 6));
  CHECK(b.report->witness == Weight({6, 1, 1}));

  auto c = search_upper_bound(smooth_pair("x^2+y^2+z^2"), 8);
  CHECK(c.report->bound == 1);
  CHECK(c.report->witness == Weight({1, 1, 1}));

  CHECK_THROWS_AS(search_upper_bound(smooth_pair("x"), 2), PreconditionError);
  CHECK_THROWS_AS(search_upper_bound(smooth_pair("1+x"), 8), PreconditionError);
  CHECK_THROWS_AS(search_upper_bound({AmbientGerm::smooth(3), P4("x")}, 8), ContextMismatch);
}

TEST_CASE("search_upper_bound: hypersurface ambient counts admissible weights only") {
  const PairGerm pair = hyper_pair("x^2+y^3+z^7+t*z");
  auto s = search_upper_bound(pair, 12);
  REQUIRE(s.report);
  CHECK(s.report->bound <= Q(4, 5));
  REQUIRE(s.report->admissibility);
  CHECK(s.report->admissibility->admissible);
  CHECK(is_admissible(s.report->witness, pair.ambient.phi).admissible);
  check_recomputable(*s.report, pair);
  CHECK(s.report->per_chart_evidence.size() == 4);

  // Every weight with sum <= 4 on (x^2+y^2+z^2+t^2) is (1,1,1,1): admissible.
  auto q = search_upper_bound(hyper_pair("x^2+y^2+z^2+t^2"), 4);
  REQUIRE(q.report);
  CHECK(q.report->witness == Weight({1, 1, 1, 1}));
  CHECK(q.report->bound == 1);
}

TEST_CASE("search_upper_bound: NoWitness when nothing is admissible") {
  // x^2 is never reduced on the exceptional divisor of x^2 + y^2 with a weight
  // that makes x^2 dominant; at cap 4 only (1,1,1,1) exists, and its
  // restriction on every chart of x^2 is a square.
  auto s = search_upper_bound(hyper_pair("x^2"), 4);
  CHECK(s.no_witness());
  CHECK(s.weights_examined == 1);
}

TEST_CASE("search_upper_bound: monotone in the cap") {
  for (const auto* f : {"x^2+y^3+z^6", "x^3+y^3+z^3", "x^2+y^4+z^4", "x*y*z", "x^2+y^5+z^7", "y^2+x^3*z+z^9"}) {
    Rational last = search_bound(smooth_pair(f), 6);
    for (int cap : {8, 10, 12}) {
      const Rational b = search_bound(smooth_pair(f), cap);
      CHECK_MESSAGE(b <= last, f, " cap ", cap);
      last = b;
    }
  }
}

TEST_CASE("search_upper_bound: Du Val safety") {
  std::vector<std::string> forms;
  for (int n = 1; n <= 9; ++n) forms.push_back("x^2+y^2+z^" + std::to_string(n + 1));
  for (int n = 4; n <= 9; ++n) forms.push_back("x^2+y^2*z+z^" + std::to_string(n - 1));
  forms.insert(forms.end(), {"x^2+y^3+z^4", "x^2+y^3+y*z^3", "x^2+y^3+z^5", "x+y^2"});
  for (const auto& f : forms) {
    const PairGerm pair = smooth_pair(f);
    for (const Weight& w : enumerate_weights(3, 12)) {
      CHECK_MESSAGE(threshold_upper_bound(w, pair.ambient, pair.psi) >= 1, f, " at ", w.to_string());
    }
  }
}

TEST_CASE("smooth_case_bound: the three non Du Val cases") {
  auto a = smooth_case_bound(P("x^3+y^3+z^3"));
  REQUIRE(a.bound);
  CHECK(a.bound->report.witness == Weight({1, 1, 1}));
  CHECK(a.bound->report.bound == Q(2, 3));
  CHECK(a.bound->decomposition.tag == "Ord3Plus");

  auto b = smooth_case_bound(P("x^2+y^4+z^4"));
  REQUIRE(b.bound);
  CHECK(b.bound->report.witness == Weight({2, 1, 1}));
  CHECK(b.bound->report.bound == Q(3, 4));
  CHECK(b.bound->decomposition.eta == P("y^4+z^4"));

  auto c = smooth_case_bound(P("x^2+y^3+z^6"));
  REQUIRE(c.bound);
  CHECK(c.bound->report.witness == Weight({3, 2, 1}));
  CHECK(c.bound->report.bound == Q(5, 6));

  // weights follow the roles of the coordinates
  auto d = smooth_case_bound(P("z^2+x^3+y^6"));
  CHECK(d.bound->report.witness == Weight({2, 1, 3}));
  CHECK(d.bound->report.bound == Q(5, 6));

  auto e = smooth_case_bound(P("x^4+y^4+z^5"));
  CHECK(e.bound->report.bound == Q(1, 2));
}

TEST_CASE("smooth_case_bound: Du Val, smooth and undetermined") {
  auto a = smooth_case_bound(P("x^2+y^3+z^4"));
  CHECK(a.du_val_or_smooth());
  CHECK(a.germ.to_string() == "DuVal E6");
  CHECK(smooth_case_bound(P("x+y^5")).germ.to_string() == "Smooth");
  CHECK_THROWS_AS(smooth_case_bound(P("x^2+y^2")), UndeterminedError);
  CHECK_THROWS_AS(smooth_case_bound(P4("x^2+t")), PreconditionError);
}

TEST_CASE("smooth_case_bound: invariant under linear changes") {
  Rng rng(51);
  const std::vector<std::pair<std::string, Rational>> cases{
      {"x^3+y^3+z^3", Q(2, 3)}, {"x^2+y^4+z^4", Q(3, 4)}, {"x^2+y^3+z^6", Q(5, 6)}, {"x^2+y^3+y^2*z^2+z^7", Q(5, 6)}};
  for (const auto& [f, bound] : cases) {
    for (int k = 0; k < 8; ++k) {
      std::vector<std::vector<std::int64_t>> m{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
      for (int s = 0; s < 5; ++s) {
        const auto i = static_cast<std::size_t>(rng.uniform(0, 2)), j = static_cast<std::size_t>(rng.uniform(0, 2));
        if (i == j) continue;
        const std::int64_t c = rng.uniform(-2, 2);
        for (auto& row : m) row[j] += c * row[i];
      }
      std::vector<std::pair<std::string, Polynomial>> images;
      for (std::size_t i = 0; i < 3; ++i) {
        Polynomial img(kXYZ);
        for (std::size_t j = 0; j < 3; ++j) img += Polynomial::variable(kXYZ, j) * Q(m[i][j]);
        images.emplace_back(kXYZ[i], img);
      }
      const Polynomial q = substitute(P(f), Substitution(kXYZ, images)).value;
      auto r = smooth_case_bound(q);
      REQUIRE(r.bound);
      CHECK_MESSAGE(r.bound->report.bound == bound, f, " -> ", q.to_string());
      const NormalFormTrace& tr = r.bound->decomposition.normalizing_trace;
      CHECK(replay(truncate(q, tr.jet_cap), tr.steps) == tr.final);
    }
  }
}

TEST_CASE("property: search never exceeds the case tree on normal forms") {
  Rng rng(52);
  const std::vector<std::string> bases{"x^3+y^3+z^3", "x^3+y^2*z+z^4", "x^2+y^4+z^4", "x^2+y^4+y*z^4",
                                       "x^2+y^3+z^6", "x^2+y^3+y*z^4"};
  for (const auto& base : bases) {
    for (int k = 0; k < 5; ++k) {
      const Polynomial psi = P(base) + random_polynomial(rng, kXYZ, 3, 7, 9);
      auto tree = smooth_case_bound(psi, 12);
      REQUIRE(tree.bound);
      const PairGerm pair{AmbientGerm::smooth(3), psi};
      auto s = search_upper_bound(pair, 8);
      CHECK_MESSAGE(s.report->bound <= tree.bound->report.bound, psi.to_string());
      check_recomputable(*s.report, pair);
    }
  }
}

TEST_CASE("gorenstein_case_bound: worked examples") {
  check_gorenstein("x^3+y^3+z^3+t*x", Weight({1, 1, 1, 2}), Q(1, 2));
  check_gorenstein("y^3+x^4+z^4+t^2", Weight({2, 2, 2, 3}), Q(2, 3));
  check_gorenstein("x^2+y^4+z^4+t*y", Weight({2, 1, 1, 3}), Q(2, 3));
  for (int d = 7; d <= 12; ++d) {
    check_gorenstein("x^2+y^3+z^" + std::to_string(d) + "+t*z", Weight({3, 2, 1, 5}), Q(4, 5));
  }
}

TEST_CASE("gorenstein_case_bound: decomposition data") {
  auto g = gorenstein_case_bound(P4("x^2+y^4+z^4+t*y"), P4("t"));
  REQUIRE(g.bound);
  const CaseDecomposition& d = g.bound->decomposition;
  CHECK(d.tag == "CorankOne_OrdEta4Plus");
  CHECK(d.branch == "alpha");
  CHECK(d.eta == P4("x^2+y^4+z^4"));
  CHECK(d.xi == P4("y^4+z^4"));
  CHECK(d.zeta == P4("y"));
  CHECK(d.deltas.at(0) == std::pair<std::string, Rational>{"delta1", 1});
  CHECK(d.deltas.at(1).second == 0);

  auto c = gorenstein_case_bound(P4("x^2+y^3+z^7+t*z"), P4("t"));
  CHECK(c.bound->decomposition.branch == "cube");
  CHECK(c.eta_class.to_string() == "NotDuVal CorankOne_CubeCase");
}

TEST_CASE("gorenstein_case_bound: later branches") {
  // no t*y, t*z terms: (2,1,1,3) fails, (2,1,1,2) holds with delta3 != 0
  check_gorenstein("x^2+y^5+z^5+t^2", Weight({2, 1, 1, 2}), Q(1, 2));
  // eta3 not a cube and no linear part in zeta
  check_gorenstein("x^2*y+y^2*z+z^3+t^2", Weight({1, 1, 1, 2}), Q(1, 2));
  // mixed coordinates: x and t interact before the square is split off
  check_gorenstein("x^2+2*x*t+y^4+z^4+t*y", Weight({2, 1, 1, 3}), Q(2, 3));
}

TEST_CASE("gorenstein_case_bound: psi normalization") {
  // psi = t + x moves to t; the bound does not change
  auto g = gorenstein_case_bound(P4("x^2+y^3+z^7+(t+x)*z"), P4("t+x"));
  REQUIRE(g.bound);
  CHECK(g.bound->report.bound == Q(4, 5));
  CHECK_THROWS_AS(gorenstein_case_bound(P4("x^2+y^3+z^7+t*z"), P4("t^2")), PreconditionError);
  CHECK_THROWS_AS(gorenstein_case_bound(P4("x^2+y^3+z^7+t*z"), P4("x")), PreconditionError);
  CHECK_THROWS_AS(gorenstein_case_bound(P4("x^3+y^3+z^3+t^3"), P4("t")), PreconditionError);
  CHECK_THROWS_AS(gorenstein_case_bound(P("x^2+y^3"), P("z")), PreconditionError);
}

TEST_CASE("gorenstein_case_bound: unhandled branches are reported") {
  auto duval = gorenstein_case_bound(P4("x^2+y^2+z^2+t^3"), P4("t"));
  CHECK(duval.unhandled());
  CHECK(duval.eta_class.to_string() == "DuVal A1");
  // not terminal: the (1,1,1,2) probe fails
  auto probe = gorenstein_case_bound(P4("x^4+y^4+z^4+t^2"), P4("t"));
  CHECK(probe.unhandled());
  CHECK(probe.unhandled_reason.find("(1,1,1,2)") != std::string::npos);
  auto nonreduced = gorenstein_case_bound(P4("t^2+t*x^3"), P4("t"));
  CHECK(nonreduced.unhandled());
}

TEST_CASE("quotient_case_bound") {
  auto a = quotient_case_bound(2, 1, P("x^2"));
  CHECK(a.valuation == 1);
  CHECK(a.bound == Q(1, 2));
  auto b = quotient_case_bound(3, 1, P("z"));
  CHECK(b.du_val());
  CHECK(b.du_val_index() == 2);
  CHECK(b.valuation == Q(1, 3));
  auto c = quotient_case_bound(5, 2, P("x*y"));
  CHECK(c.valuation == 1);
  CHECK(c.bound == Q(1, 5));
  CHECK(c.discrepancy == Q(1, 5));

  CHECK_THROWS_AS(quotient_case_bound(3, 1, P("x+y")), PreconditionError);
  CHECK_THROWS_AS(quotient_case_bound(1, 1, P("z")), PreconditionError);
  CHECK_THROWS_AS(quotient_case_bound(4, 2, P("z")), PreconditionError);
  CHECK_THROWS_AS(quotient_case_bound(4, 4, P("z")), PreconditionError);
}

TEST_CASE("quotient_case_bound: discrepancy and bound over small indices") {
  for (std::int64_t r = 2; r <= 7; ++r) {
    for (std::int64_t a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      // x*y has residue 0 and valuation 1; z^r has residue 0 and valuation 1;
      // z has valuation 1/r
      for (const auto* f : {"x*y", "z^2", "x*y+z^2", "z"}) {
        const Polynomial psi = P(f);
        bool semi = true;
        try {
          auto q = quotient_case_bound(r, a, psi);
          CHECK(q.discrepancy == Q(1, r));
          if (q.du_val()) {
            CHECK(q.valuation == Q(1, r));
          } else {
            CHECK(q.valuation >= Q(2, r));
            CHECK(*q.bound <= Q(1, 2));
          }
        } catch (const PreconditionError&) {
          semi = false;
        }
        if (std::string(f) == "x*y+z^2") CHECK(semi == (r == 2));
      }
    }
  }
}

TEST_CASE("residue_audit") {
  auto main = infer_series(3, {1, 2, 1, 0}, 0, 1);
  REQUIRE(main);
  CHECK(main->series == IndexData::Series::MainSeries);
  auto a = residue_audit(*main);
  CHECK(a.congruence_holds);
  CHECK(a.lhs == 1);
  CHECK(a.series == "MainSeries(a=1)");
  CHECK(a.anticanonical == std::optional<bool>(true));

  auto cax = infer_series(4, {1, 3, 1, 2}, 2);
  REQUIRE(cax);
  CHECK(cax->series == IndexData::Series::CAx4);
  auto b = residue_audit(*cax);
  CHECK(b.congruence_holds);
  CHECK(b.lhs == 1);
  CHECK_FALSE(b.anticanonical.has_value());

  CHECK_FALSE(infer_series(3, {2, 2, 1, 0}, 0).has_value());
  IndexData bad{3, {2, 2, 1, 0}, 0, std::nullopt, IndexData::Series::MainSeries, 2};
  CHECK_THROWS_AS(residue_audit(bad), PreconditionError);
  IndexData wrong_r{5, {1, 3, 1, 2}, 2, std::nullopt, IndexData::Series::CAx4, 1};
  CHECK_THROWS_AS(residue_audit(wrong_r), PreconditionError);

  auto off = residue_audit(IndexData{5, {2, 3, 1, 0}, 0, 3, IndexData::Series::MainSeries, 2});
  CHECK(off.congruence_holds);
  CHECK(off.anticanonical == std::optional<bool>(false));
}
