#include "doctest.h"

#include "modrep/errors.hpp"
#include "modrep/polynomial.hpp"
#include "support.hpp"

using namespace modrep;

namespace {

const Modulus kSix(6);

Monomial x(VarId i, std::uint32_t e = 1) { return Monomial::variable(i, e); }

// Example polynomial g = 3 x1x2 + 4 x2x3 + x1x3 over Z_6.
Polynomial example_g() {
  return Polynomial(kSix, {{x(1) * x(2), 3}, {x(2) * x(3), 4}, {x(1) * x(3), 1}});
}

}  // namespace

TEST_CASE("monomials are exponent vectors") {
  CHECK(x(1) * x(1) == x(1, 2));
  CHECK_FALSE(x(1, 2) == x(1));
  CHECK(Monomial{{3, 0}}.is_constant());
  CHECK((Monomial{{2, 1}, {1, 2}}).exponent(1) == 2);
  CHECK((Monomial{{2, 1}, {1, 2}}).degree() == 3);
  CHECK(to_string(Monomial{{2, 1}, {1, 2}}) == "x1^2*x2^1");
}

TEST_CASE("graded lexicographic order") {
  CHECK(Monomial{} < x(5));
  CHECK(x(5) < x(1) * x(1));
  CHECK(x(2) < x(1));
  CHECK(x(2) * x(3) < x(1) * x(3));
  CHECK(x(1) * x(3) < x(1, 2));
}

TEST_CASE("poly_coeff") {
  const auto g = example_g();
  CHECK(poly_coeff(g, x(1) * x(2)) == 3);
  CHECK(poly_coeff(g, x(1)) == 0);
  CHECK(poly_coeff(Polynomial(kSix), x(1)) == 0);
}

TEST_CASE("poly_add") {
  const auto lhs = Polynomial(kSix, {{x(1), 1}, {Monomial{}, 4}});
  const auto rhs = Polynomial(kSix, {{x(2), 1}, {Monomial{}, 4}});
  CHECK(poly_add(lhs, rhs) == Polynomial(kSix, {{x(1), 1}, {x(2), 1}, {Monomial{}, 2}}));
  CHECK(poly_add(lhs, Polynomial(kSix)) == lhs);

  const auto three_x = Polynomial(kSix, {{x(1), 3}});
  const auto sum = poly_add(three_x, three_x);
  CHECK(sum.is_zero());
  CHECK(sum.terms().empty());

  CHECK_THROWS_AS(poly_add(lhs, Polynomial(Modulus(10))), ModulusMismatch);
}

TEST_CASE("poly_mul") {
  const auto a = Polynomial(kSix, {{x(1), 1}, {Monomial{}, 4}});
  const auto b = Polynomial(kSix, {{x(1), 1}, {Monomial{}, 3}});
  CHECK(poly_mul(a, b) == Polynomial(kSix, {{x(1, 2), 1}, {x(1), 1}}));
  CHECK(poly_mul(a, Polynomial::constant(kSix, 1)) == a);
  CHECK(poly_mul(Polynomial::variable(kSix, 1), Polynomial::variable(kSix, 4)) ==
        Polynomial(kSix, {{x(1) * x(4), 1}}));
  CHECK_THROWS_AS(poly_mul(a, Polynomial(Modulus(10))), ModulusMismatch);
}

TEST_CASE("poly_eval") {
  const Assignment ones{{1, 1}, {2, 1}, {3, 1}};
  CHECK(poly_eval(example_g(), ones) == 2);
  const auto f = Polynomial(kSix, {{x(1) * x(2), 1}, {x(2) * x(3), 1}, {x(1) * x(3), 1}});
  CHECK(poly_eval(f, ones) == 3);

  const auto with_constant = Polynomial(kSix, {{x(1), 2}, {Monomial{}, 5}});
  CHECK(poly_eval(with_constant, {{1, 0}}) == 5);
  CHECK_THROWS_AS(poly_eval(with_constant, {{2, 1}}), MissingVariable);
}

TEST_CASE("text format") {
  const auto g = example_g();
  CHECK(to_string(g) == "4*x2^1*x3^1+1*x1^1*x3^1+3*x1^1*x2^1");
  CHECK(parse_polynomial(to_string(g), kSix) == g);
  CHECK(parse_polynomial("3x1x2 + 4*x2*x3 + x1*x3", kSix) == g);
  CHECK(parse_polynomial("x1^2 * 3 + 10", kSix) ==
        Polynomial(kSix, {{x(1, 2), 3}, {Monomial{}, 4}}));
  CHECK(parse_polynomial("0", kSix).is_zero());
  CHECK(to_string(Polynomial(kSix)) == "0");

  CHECK_THROWS_AS(parse_polynomial("", kSix), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 +", kSix), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 * + x2", kSix), ParseError);
  CHECK_THROWS_AS(parse_polynomial("y1", kSix), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x", kSix), ParseError);
  try {
    parse_polynomial("x1 + 2 - x3", kSix);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);
  }
}

TEST_CASE("text form round-trips random polynomials") {
  auto rng = test::make_rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Modulus mod(test::draw(rng, 2, 30));
    const auto p = test::draw_polynomial(rng, mod, 1, 4, 3, 8);
    CHECK(parse_polynomial(to_string(p), mod) == p);
  }
}

TEST_CASE("ring laws on random small instances") {
  auto rng = test::make_rng(12);
  for (int trial = 0; trial < 400; ++trial) {
    const Modulus mod(test::draw(rng, 2, 30));
    const auto a = test::draw_polynomial(rng, mod, 1, 4, 3, 5);
    const auto b = test::draw_polynomial(rng, mod, 1, 4, 3, 5);
    const auto c = test::draw_polynomial(rng, mod, 1, 4, 3, 5);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    const auto combined = a * b + c;
    for (const auto& [mono, coeff] : combined.terms()) {
      CHECK(coeff > 0);
      CHECK(coeff < mod.value());
    }
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  auto rng = test::make_rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    const Modulus mod(test::draw(rng, 2, 30));
    const auto a = test::draw_polynomial(rng, mod, 1, 4, 3, 5);
    const auto b = test::draw_polynomial(rng, mod, 1, 4, 3, 5);
    Assignment point;
    for (VarId v = 1; v <= 4; ++v) point[v] = test::draw(rng, 0, mod.value() - 1);
    CHECK(poly_eval(a * b, point) == poly_eval(a, point) * poly_eval(b, point));
    CHECK(poly_eval(a + b, point) == poly_eval(a, point) + poly_eval(b, point));
  }
}
