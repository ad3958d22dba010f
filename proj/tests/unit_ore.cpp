#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/ore.hpp"

using namespace drinfeld;

namespace {
FieldPtr F2() { return Field::prime(2); }
FieldPtr F4() { return Field::make(2, {1, 1, 1}); }

OrePolyK kpoly(std::initializer_list<std::pair<long long, FFElem>> terms) {
  OrePolyK f;
  for (const auto& [i, c] : terms) f.set(i, c);
  return f;
}
}  // namespace

TEST_CASE("twisted multiplication: (tau + z)^2 over F_4") {
  auto F = F4();
  FFElem z = FFElem::gen(F), one = FFElem::one(F);
  OrePolyK f = kpoly({{1, one}, {0, z}});
  OrePolyK sq = ore_mul(f, f);
  // tau z = z^2 tau, so (tau+z)^2 = tau^2 + (z^2+z) tau + z^2 = tau^2 + tau + z^2
  CHECK(sq.deg() == 2);
  CHECK(*sq.get(2) == one);
  CHECK(*sq.get(1) == one);       // z^2 + z = 1 in F_4
  CHECK(*sq.get(0) == z * z);
}

TEST_CASE("multiplication is associative and distributes") {
  auto F = F4();
  FFElem z = FFElem::gen(F), one = FFElem::one(F);
  OrePolyK a = kpoly({{2, z}, {0, one}});
  OrePolyK b = kpoly({{1, z + one}, {0, z}});
  OrePolyK c = kpoly({{1, one}, {0, z * z}});
  CHECK(ore_mul(ore_mul(a, b), c).c == ore_mul(a, ore_mul(b, c)).c);
  CHECK(ore_mul(a, ore_add(b, c)).c == ore_add(ore_mul(a, b), ore_mul(a, c)).c);
}

TEST_CASE("left division: f = q g + r with deg r < deg g") {
  auto F = F4();
  FFElem z = FFElem::gen(F), one = FFElem::one(F);
  OrePolyK g = kpoly({{1, z}, {0, one}});
  for (int trial = 0; trial < 8; ++trial) {
    // a few deterministic "random" polynomials of degree 3
    FFElem c3 = (trial & 1) ? z : one;
    FFElem c1 = (trial & 2) ? z + one : FFElem::zero(F);
    FFElem c0 = (trial & 4) ? z * z : one;
    OrePolyK f = kpoly({{3, c3}, {1, c1}, {0, c0}});
    auto [q, r] = left_divmod(f, g);
    CHECK(r.deg() < g.deg());
    CHECK(ore_add(ore_mul(q, g), r).c == f.c);
  }
  // division by a constant leaves no remainder
  auto [q2, r2] = left_divmod(kpoly({{2, z}}), kpoly({{0, z}}));
  CHECK(r2.is_zero());
  CHECK(q2.deg() == 2);
}

TEST_CASE("ore_apply is the twisted action on scalars") {
  auto F = F2();
  // psi_t = pi + tau acting on pi^{-1}:  pi*pi^{-1} + (pi^{-1})^2
  OrePolyL psi;
  psi.set(0, LaurentElement::pi(F));
  psi.set(1, LaurentElement::one(F));
  LaurentElement xi = l_inv(LaurentElement::pi(F));
  LaurentElement out = ore_apply(psi, xi);
  LaurentElement expect = LaurentElement::one(F) + l_inv(p_power(LaurentElement::pi(F), 1));
  CHECK(out == expect);
}

TEST_CASE("residue_poly and to_laurent_poly round trip") {
  auto F = F4();
  FFElem z = FFElem::gen(F);
  OrePolyL f;
  f.set(0, LaurentElement::pi(F) + LaurentElement::from_ff(z));  // z + pi
  f.set(2, LaurentElement::one(F));
  OrePolyK fb = residue_poly(f);
  CHECK(*fb.get(0) == z);
  CHECK(fb.get(1) == nullptr);
  CHECK(fb.deg() == 2);
  OrePolyL lifted = to_laurent_poly(fb);
  CHECK(*lifted.get(0) == LaurentElement::from_ff(z));
}

TEST_CASE("skew Laurent polynomials: shift and negative powers") {
  auto F = F4();
  FFElem z = FFElem::gen(F), one = FFElem::one(F);
  SkewLaurentPoly f;
  f.set(-1, z);
  f.set(0, one);
  SkewLaurentPoly g = skew_shift(f, 1);  // tau * f
  CHECK(g.bottom() == 0);
  CHECK(g.top() == 1);
  CHECK(g.c.at(0) == z * z);  // tau z tau^{-1} = z^2

  // tau^{-1} tau = 1
  SkewLaurentPoly tinv, t;
  tinv.set(-1, one);
  t.set(1, one);
  SkewLaurentPoly prod = skew_mul(tinv, t);
  CHECK(prod.top() == 0);
  CHECK(prod.bottom() == 0);
  CHECK(prod.c.at(0).is_one());

  CHECK(!skew_is_poly(f));
  CHECK(skew_is_poly(t));
}

TEST_CASE("geometric tau-inverse series: x = 1 - pi tau^{-1} over F_2") {
  // y = x^{-1} has y_l = pi^{v_l} with v_l = sum_{l<j<=0} 2^j exactly.
  auto F = F2();
  const long long J = 6;
  TauSeries x;
  x.J = J;
  x.set(0, LaurentElement::one(F));
  x.set(-1, -LaurentElement::pi(F));
  TauSeries y = series_inverse(x, J);

  Rat expected(0);
  for (long long l = -1; l >= -J; --l) {
    expected = expected + Rat(1, ipow(2, -l - 1));  // adds 2^{l+1}
    REQUIRE(y.get(l) != nullptr);
    CHECK(valuation(*y.get(l)) == expected);
    CHECK(y.get(l)->terms().size() == 1);  // a pure monomial, exactly
  }
  CHECK(y.get(0)->str() == "1");

  // x y = 1 on the window the truncation determines
  TauSeries prod = series_mul(x, y, J - 1);
  CHECK(prod.is_one(F));
  // and the inverse of the inverse recovers x where valid
  TauSeries back = series_inverse(y, J - 1);
  CHECK(back.get(-1) != nullptr);
  CHECK(*back.get(-1) == -LaurentElement::pi(F));
  CHECK(back.get(-2) == nullptr);  // exact zero coefficient stays absent
}

TEST_CASE("series_inverse failure modes") {
  auto F = F2();
  TauSeries no_const;
  no_const.J = 2;
  no_const.set(-1, LaurentElement::pi(F));
  CHECK_THROWS_AS(series_inverse(no_const, 2), Error);  // x_0 missing

  TauSeries nonunit;
  nonunit.J = 2;
  nonunit.set(0, LaurentElement::pi(F));  // v > 0: not a unit
  CHECK_THROWS_AS(series_inverse(nonunit, 2), Error);

  TauSeries shallow;
  shallow.J = 1;
  shallow.set(0, LaurentElement::one(F));
  CHECK_THROWS_AS(series_inverse(shallow, 3), Error);  // deeper than the input
}

TEST_CASE("z-form matches the direct twisted application") {
  auto F = F2();
  TauSeries y;
  y.J = 2;
  y.set(0, LaurentElement::one(F));
  y.set(-1, LaurentElement::pi(F));
  y.set(-2, LaurentElement::monomial(FFElem::one(F), 3, 1));  // pi^{3/2}

  auto z = z_form(y);
  CHECK(z.at(-1) == p_power(LaurentElement::pi(F), 1));  // z_j = y_j^{p^{-j}}

  LaurentElement xi = l_inv(p_power(LaurentElement::pi(F), 1));  // pi^{-2}
  // direct: sum_j y_j * xi^{p^j}
  LaurentElement direct = LaurentElement::zero(F);
  for (const auto& [j, c] : y.c) direct = direct + c * p_power(xi, j);
  CHECK(apply_z_form(z, xi) == direct);

  // positive tau-degrees have no z-form
  TauSeries bad;
  bad.J = 1;
  bad.set(1, LaurentElement::one(F));
  CHECK_THROWS_AS(z_form(bad), Error);
}
