#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ctlab/cli.hpp"
#include "ctlab/serialize.hpp"

using ctlab::Json;
using ctlab::cli::run;

namespace {

const std::string kGolden = CTLAB_GOLDEN_DIR;

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
};

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases{
      {"val_321", {"val", "--poly", "x^2+y^3+z^6", "--weight", "3,2,1"}},
      {"val_orbifold", {"val", "--poly", "x*y+z^5", "--weight", "2,3,1", "--index", "5"}},
      {"part_weighted", {"part", "--poly", "x^2+y^3+z^6+x*y*z", "--degree", "6", "--weight", "3,2,1"}},
      {"blowup_321", {"blowup", "--poly", "x^2+y^3+z^6", "--weight", "3,2,1"}},
      {"disc_hyp",
       {"disc", "--ambient", "hypersurface", "--phi", "x^2+y^3+z^7+t*z", "--weight", "3,2,1,5", "--psi", "t", "--c", "4/5"}},
      {"disc_quotient", {"disc", "--ambient", "quotient", "--r", "5", "--a", "2", "--psi", "x*y"}},
      {"bound_search_z6", {"bound", "--ambient", "smooth", "--psi", "x^2+y^3+z^6", "--cap", "8"}},
      {"bound_tree_ord3", {"bound", "--psi", "x^3+y^3+z^3", "--method", "tree"}},
      {"bound_tree_hyp",
       {"bound", "--ambient", "hypersurface", "--phi", "x^2+y^3+z^7+t*z", "--psi", "t", "--method", "tree"}},
      {"bound_quotient", {"bound", "--ambient", "quotient", "--r", "3", "--a", "1", "--psi", "z"}},
      {"classify_e6", {"classify", "--psi", "x^2+y^3+z^4"}},
      {"certify_zd9", {"certify", "--family", "zd", "--d", "9"}},
      {"certify_hyp7", {"certify", "--family", "hyp", "--d", "7"}},
      {"residues_main", {"audit", "--residues", "3;1,2,1,0;0;1"}},
      {"audit_corpus", {"audit", "--corpus", kGolden + "/corpus_small.txt", "--cap", "8"}},
  };
  return cases;
}

ctlab::cli::Report json_run(std::vector<std::string> args) {
  args.insert(args.end(), {"--format", "json"});
  return run(args);
}

}  // namespace

TEST_CASE("golden json outputs") {
  for (const auto& c : golden_cases()) {
    CAPTURE(c.name);
    const auto r = json_run(c.args);
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(r.out == read(kGolden + "/" + c.name + ".json"));
    CHECK(ctlab::dump(Json::parse(r.out)) == r.out);
  }
}

TEST_CASE("documented examples") {
  auto b = json_run({"bound", "--ambient", "smooth", "--psi", "x^2+y^3+z^6", "--cap", "8"});
  Json j = Json::parse(b.out);
  CHECK(j["bound"] == "5/6");
  CHECK(j["weight"] == Json::array({3, 2, 1}));

  auto c = run({"classify", "--psi", "x^2+y^3+z^4"});
  CHECK(c.exit_code == 0);
  CHECK(c.out == "DuVal E6\n");

  auto z = json_run({"certify", "--family", "zd", "--d", "9"});
  Json cert = Json::parse(z.out);
  CHECK(cert["constant"] == "5/6");
  CHECK(cert["steps"].size() == 1);
}

TEST_CASE("certificate text") {
  auto hyp = run({"certify", "--family", "hyp", "--d", "7"});
  REQUIRE(hyp.exit_code == 0);
  for (const char* chart : {"  U_x ", "  U_y ", "  U_z ", "  U_t "}) CHECK(hyp.out.find(chart) != std::string::npos);
  auto chain = run({"certify", "--family", "zd", "--d", "30"});
  std::size_t steps = 0;
  for (auto pos = chain.out.find("\nstep "); pos != std::string::npos; pos = chain.out.find("\nstep ", pos + 1)) ++steps;
  CHECK(steps == 5);
}

TEST_CASE("exit codes") {
  // user errors
  CHECK(run({}).exit_code == 2);
  CHECK(run({"bogus"}).exit_code == 2);
  CHECK(run({"val", "--poly", "x^2", "--weight", "1,1,1", "--nope"}).exit_code == 2);
  CHECK(run({"classify", "--psi", "x^2+"}).exit_code == 2);
  CHECK(run({"classify", "--psi", "2x"}).exit_code == 2);
  CHECK(run({"val", "--poly", "x^2", "--weight", "1,a,1"}).exit_code == 2);
  CHECK(run({"val", "--poly", "w^2", "--weight", "1,1,1"}).exit_code == 2);
  CHECK(run({"bound", "--psi", "1+x"}).exit_code == 2);
  CHECK(run({"bound", "--ambient", "hypersurface", "--psi", "t"}).exit_code == 2);
  CHECK(run({"certify", "--family", "zd", "--d", "5"}).exit_code == 2);
  CHECK(run({"certify", "--family", "abc", "--d", "9"}).exit_code == 2);
  CHECK(run({"audit", "--corpus", "/nonexistent/corpus.txt"}).exit_code == 2);
  CHECK(run({"audit", "--residues", "3;2,2,1,0;0"}).exit_code == 2);
  CHECK(run({"--format", "xml", "classify", "--psi", "x^2"}).exit_code == 2);
  CHECK(run({"classify", "--psi", "x^2+y^2+z^2"}, std::string("abc")).exit_code == 2);

  // no stack traces or internal errors on user error
  auto bad = run({"classify", "--psi", "x^2+*y"});
  CHECK(bad.out.empty());
  CHECK(bad.err.rfind("error: ", 0) == 0);

  // undetermined / unhandled / no witness
  CHECK(run({"classify", "--psi", "x^2"}).exit_code == 3);
  CHECK(run({"bound", "--psi", "x^2", "--cap", "1"}).exit_code == 2);
  CHECK(run({"bound", "--ambient", "hypersurface", "--phi", "x^2", "--psi", "t", "--cap", "4"}).exit_code == 3);
  auto unhandled = json_run({"bound", "--ambient", "hypersurface", "--phi", "x^2+y^2+z^2+t^2", "--psi", "t",
                             "--method", "tree"});
  CHECK(unhandled.exit_code == 3);
  CHECK(Json::parse(unhandled.out)["status"] == "unhandled");

  // help is not an error
  auto help = run({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("certify") != std::string::npos);
}

TEST_CASE("jet cap: environment and flag") {
  auto env = json_run({"classify", "--psi", "x^2+y^2+z^9"});
  CHECK(Json::parse(env.out)["type"] == "A8");
  // at a working jet of 6 the z^9 term is invisible
  auto low = run({"classify", "--psi", "x^2+y^2+z^9", "--format", "json"}, std::string("6"));
  CHECK(low.exit_code == 3);
  CHECK(Json::parse(low.out)["verdict"] == "Undetermined");
  auto flag = run({"classify", "--psi", "x^2+y^2+z^9", "--format", "json", "--jet-cap", "12"}, std::string("6"));
  CHECK(flag.exit_code == 0);
  CHECK(Json::parse(flag.out)["type"] == "A8");
}

TEST_CASE("determinism") {
  const std::vector<std::string> args{"audit", "--seed", "7", "--per-case", "4", "--format", "json"};
  auto a = run(args);
  auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["seed"] == 7);
  auto t1 = run({"audit", "--seed", "7", "--per-case", "4"});
  auto t2 = run({"audit", "--seed", "7", "--per-case", "4"});
  CHECK(t1.out == t2.out);
}
