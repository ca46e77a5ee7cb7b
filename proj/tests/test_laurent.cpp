#include <doctest.h>

#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "twistvol/laurent.hpp"

using twistvol::LaurentPoly;
using twistvol::Variable;

namespace {

using Dense = std::map<int, long long>;

Dense dense(const LaurentPoly& p) {
  Dense d;
  for (auto [e, c] : p.terms()) d[e] = c;
  return d;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  Dense out;
  for (auto [ea, ca] : a)
    for (auto [eb, cb] : b) out[ea + eb] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

LaurentPoly random_poly(std::mt19937_64& rng, int span) {
  std::uniform_int_distribution<int> exp(-span, span), coef(-5, 5), count(0, 6);
  LaurentPoly p;
  for (int i = count(rng); i > 0; --i) p.add_term(coef(rng), exp(rng));
  return p;
}

}  // namespace

TEST_CASE("terms with zero coefficient are dropped") {
  LaurentPoly p;
  p.add_term(3, 2);
  p.add_term(-3, 2);
  CHECK(p.is_zero());
  CHECK(p.term_count() == 0);
  p.add_term(0, 5);
  CHECK(p.is_zero());
}

TEST_CASE("loop value and its square") {
  const LaurentPoly d = twistvol::loop_value();
  CHECK(d.coeff(2) == -1);
  CHECK(d.coeff(-2) == -1);
  CHECK(d.term_count() == 2);
  const LaurentPoly d2 = d * d;
  CHECK(d2.coeff(4) == 1);
  CHECK(d2.coeff(0) == 2);
  CHECK(d2.coeff(-4) == 1);
  CHECK(d.pow(3) == d2 * d);
  CHECK(d.pow(0) == LaurentPoly::constant(1));
}

TEST_CASE("multiplication agrees with dense convolution") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const LaurentPoly a = random_poly(rng, 12), b = random_poly(rng, 12);
    CHECK(dense(a * b) == dense_mul(dense(a), dense(b)));
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
    CHECK(-(-a) == a);
  }
}

TEST_CASE("exact division inverts multiplication") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const LaurentPoly a = random_poly(rng, 8), b = random_poly(rng, 8);
    if (b.is_zero()) continue;
    const auto q = (a * b).divide_exact(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
  LaurentPoly x = LaurentPoly::monomial(1, 1);
  LaurentPoly x1 = x + LaurentPoly::constant(1);
  LaurentPoly x2 = x * x + LaurentPoly::constant(1);
  CHECK_FALSE(x2.divide_exact(x1).has_value());
}

TEST_CASE("exponent maps") {
  LaurentPoly p;
  p.add_term(2, 3);
  p.add_term(-1, -1);
  const LaurentPoly m = p.scale_exponents(-1);
  CHECK(m.coeff(-3) == 2);
  CHECK(m.coeff(1) == -1);
  CHECK(p.shifted(4).coeff(7) == 2);
  CHECK(p.shifted(4).coeff(3) == -1);
  CHECK(p.max_exponent() == 3);
  CHECK(p.min_exponent() == -1);
  const auto desc = p.descending();
  REQUIRE(desc.size() == 2);
  CHECK(desc.front().first == 3);
}

TEST_CASE("overflow throws instead of wrapping") {
  const auto big = std::numeric_limits<LaurentPoly::Coeff>::max() / 2 + 1;
  LaurentPoly p = LaurentPoly::constant(big);
  CHECK_THROWS_AS(p + p, std::overflow_error);
  CHECK_THROWS_AS(p * LaurentPoly::constant(4), std::overflow_error);
}

TEST_CASE("printing") {
  LaurentPoly p(Variable::q);
  p.add_term(1, -2);
  p.add_term(1, -6);
  p.add_term(-1, -8);
  CHECK(p.to_string() == "q^-2 + q^-6 - q^-8");
  CHECK(LaurentPoly().to_string() == "0");
}
