#include <doctest.h>

#include "ctlab/errors.hpp"
#include "ctlab/gcd.hpp"
#include "support.hpp"

using namespace ctlab;
using namespace ctlab::testing;

namespace {

// Irreducible over Q by construction: degree one in some variable with
// coprime coefficients, or a nonzero linear form.
std::vector<Polynomial> irreducible_seeds() {
  return {P4("x+2*y-z"),       P4("y+3*t"),         P4("x^2+y^3+z"),   P4("x*y+t+1"),
          P4("z^2*t+x^3+y"),   P4("x-y+1"),         P4("t^2+x*z+y^2"), P4("x*z^2+y+2*t"),
          P4("y^2*z+x^2+t^3")};
}

}  // namespace

TEST_CASE("normalize: coprime integers, positive leading coefficient") {
  CHECK(normalize(P("-2/3*x^2+4/9*y")) == P("3*x^2-2*y"));
  CHECK(normalize(P("0")).is_zero());
  CHECK(normalize(P("-5")) == P("1"));
}

TEST_CASE("exact division") {
  auto q = divide_exact(P("x^2-y^2"), P("x-y"));
  REQUIRE(q.has_value());
  CHECK(*q == P("x+y"));
  CHECK_FALSE(divide_exact(P("x^2+y^2"), P("x-y")).has_value());
  CHECK(*divide_exact(P("1/2*x*y"), P("3*x")) == P("1/6*y"));
}

TEST_CASE("gcd: basic") {
  CHECK(multivariate_gcd(P("x^2-y^2"), P("x-y")) == P("x-y"));
  CHECK(multivariate_gcd(P("0"), P("-2*x")) == P("x"));
  CHECK(multivariate_gcd(P("x^2*y"), P("x*y^2")) == P("x*y"));
  CHECK(multivariate_gcd(P("x+1"), P("x+2")) == P("1"));
  CHECK(multivariate_gcd(P("(x+y)^3*(y-z)"), P("(x+y)^2*(y+z)")) == normalize(P("(x+y)^2")));
}

TEST_CASE("gcd: coprime irreducible seeds") {
  const auto seeds = irreducible_seeds();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) {
      CHECK(multivariate_gcd(seeds[i], seeds[j]).is_constant());
      CHECK(multivariate_gcd(seeds[i] * seeds[i], seeds[j] * seeds[i]) == normalize(seeds[i]));
    }
  }
}

TEST_CASE("property: gcd(f*h, g*h) = h * gcd(f, g) up to scalar") {
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    Polynomial f = random_nonzero(rng, kXYZT, 3, 0, 2);
    Polynomial g = random_nonzero(rng, kXYZT, 3, 0, 2);
    Polynomial h = random_nonzero(rng, kXYZT, 3, 1, 2);
    Polynomial lhs = multivariate_gcd(f * h, g * h);
    Polynomial rhs = h * multivariate_gcd(f, g);
    CHECK(proportional(lhs, rhs));
    CHECK(divide_exact(f * h, lhs).has_value());
    CHECK(divide_exact(g * h, lhs).has_value());
  }
}

TEST_CASE("square-free: constructed input") {
  Polynomial f = P("x*(y+z)^2*(x+y)");
  auto sf = squarefree_decomposition(f);
  CHECK(sf.monomial_content == ExponentVector{1, 0, 0});
  REQUIRE(sf.layers.size() == 2);
  CHECK(sf.layers[0].multiplicity == 1);
  CHECK(sf.layers[0].factor == P("x+y"));
  CHECK(sf.layers[1].multiplicity == 2);
  CHECK(sf.layers[1].factor == P("y+z"));
  CHECK(proportional(sf.reconstruct(kXYZ), f));
}

TEST_CASE("square-free: cusp chart restriction stays reduced") {
  auto sf = squarefree_decomposition(P4("y^3+t^2"));
  CHECK(sf.monomial_content == ExponentVector{0, 0, 0, 0});
  REQUIRE(sf.layers.size() == 1);
  CHECK(sf.layers[0].multiplicity == 1);
  CHECK(sf.layers[0].factor == P4("y^3+t^2"));
}

TEST_CASE("square-free: pure cube") {
  const Variables y{"y"};
  auto sf = squarefree_decomposition(parse_polynomial("y^3", y));
  CHECK(sf.layers.empty());
  auto full = sf.full_layers(y);
  REQUIRE(full.size() == 1);
  CHECK(full[0].multiplicity == 3);
  CHECK(full[0].factor == parse_polynomial("y", y));
  CHECK_THROWS_AS(squarefree_decomposition(P("0")), PreconditionError);
}

TEST_CASE("property: square-free reconstruction, coprime square-free layers") {
  Rng rng(22);
  const auto seeds = irreducible_seeds();
  for (int i = 0; i < 100; ++i) {
    Polynomial f = P4(std::to_string(rng.uniform(1, 7)));
    const int factors = static_cast<int>(rng.uniform(1, 3));
    for (int k = 0; k < factors; ++k) {
      const auto& s = seeds[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(seeds.size()) - 1))];
      f = f * pow(s, static_cast<unsigned>(rng.uniform(1, 3)));
    }
    if (rng.coin()) f = f * P4("x*t^2");
    auto sf = squarefree_decomposition(f);
    CHECK(proportional(sf.reconstruct(kXYZT), f));
    for (std::size_t a = 0; a < sf.layers.size(); ++a) {
      const auto& la = sf.layers[a];
      CHECK(multivariate_gcd(la.factor, derivative(la.factor, 0) + derivative(la.factor, 1) * Q(3) +
                                            derivative(la.factor, 2) * Q(5) + derivative(la.factor, 3) * Q(7))
                .is_constant());
      if (a > 0) CHECK(sf.layers[a - 1].multiplicity < la.multiplicity);
      for (std::size_t b = a + 1; b < sf.layers.size(); ++b) {
        CHECK(multivariate_gcd(la.factor, sf.layers[b].factor).is_constant());
      }
    }
  }
}

TEST_CASE("evident irreducibility") {
  CHECK(is_evidently_irreducible(P4("x^2+y^3+z")));
  CHECK(is_evidently_irreducible(P4("x+y")));
  CHECK_FALSE(is_evidently_irreducible(P4("z*(x+1)")));
  CHECK_FALSE(is_evidently_irreducible(P4("x^2+y^2")));
}
