#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/drinfeld.hpp"

using namespace drinfeld;

namespace {
FieldPtr F2() { return Field::prime(2); }
FieldPtr F3() { return Field::prime(3); }
FieldPtr F4() { return Field::make(2, {1, 1, 1}); }

// psi_t = pi + tau over F_2 (rank 1, theta = pi)
DrinfeldModule carlitz_like() {
  auto F = F2();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(0, LaurentElement::pi(F));
  M.psi_t.set(1, LaurentElement::one(F));
  return M;
}

// psi_t = tau^2 over F_3 (rank 2, exact reduction, supersingular)
DrinfeldModule supersingular3() {
  auto F = F3();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(2, LaurentElement::one(F));
  return M;
}
}  // namespace

TEST_CASE("validate_module accepts good reduction and rejects the rest") {
  CHECK_NOTHROW(validate_module(carlitz_like()));
  CHECK_NOTHROW(validate_module(supersingular3()));

  auto F = F2();
  DrinfeldModule constant;  // deg 0: not a module structure
  constant.F = F;
  constant.psi_t.set(0, LaurentElement::pi(F));
  CHECK_THROWS_AS(validate_module(constant), Error);

  DrinfeldModule polar;  // non-integral coefficient
  polar.F = F;
  polar.psi_t.set(0, l_inv(LaurentElement::pi(F)));
  polar.psi_t.set(1, LaurentElement::one(F));
  CHECK_THROWS_AS(validate_module(polar), Error);

  DrinfeldModule nonunit;  // leading coefficient not a unit
  nonunit.F = F;
  nonunit.psi_t.set(0, LaurentElement::pi(F));
  nonunit.psi_t.set(1, LaurentElement::pi(F));
  CHECK_THROWS_AS(validate_module(nonunit), Error);
}

TEST_CASE("reduction and the gap w") {
  auto M = carlitz_like();
  OrePolyK fb = reduction(M);
  CHECK(fb.deg() == 1);
  CHECK(fb.get(0) == nullptr);  // pi reduces to 0
  CHECK(fb.get(1)->is_one());
  auto w = reduction_gap(M);
  REQUIRE(w.has_value());
  CHECK(*w == Rat(1));  // v(psi_t - phibar_t) = v(pi) = 1

  CHECK(!reduction_gap(supersingular3()).has_value());  // exact reduction
}

TEST_CASE("reduction invariants: heights and residual characteristic") {
  // theta = 0: p_res = t, phibar_t = tau^2 -> h = 2 (supersingular)
  auto inv2 = reduction_invariants(supersingular3());
  CHECK(inv2.p_res == std::vector<long long>{0, 1});
  CHECK(inv2.h == 2);
  CHECK(inv2.r == 2);
  CHECK(inv2.d == 1);

  // theta = pi: residue 0 -> p_res = t, phibar_t = tau -> h = 1
  auto inv1 = reduction_invariants(carlitz_like());
  CHECK(inv1.p_res == std::vector<long long>{0, 1});
  CHECK(inv1.h == 1);

  // theta = z over F_4: p_res = t^2 + t + 1, P(phibar) = tau^2 -> h = 1
  auto F = F4();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(0, LaurentElement::from_ff(FFElem::gen(F)));
  M.psi_t.set(1, LaurentElement::one(F));
  auto inv = reduction_invariants(M);
  CHECK(inv.p_res == std::vector<long long>{1, 1, 1});
  CHECK(inv.h == 1);
  CHECK(inv.d == 2);
}

TEST_CASE("polynomial action: psi_{t^2} = psi_t psi_t") {
  auto M = carlitz_like();
  OrePolyL sq = psi_of_poly(M, {0, 0, 1});
  OrePolyL direct = ore_mul(M.psi_t, M.psi_t);
  CHECK(sq.c.size() == direct.c.size());
  for (const auto& [i, v] : direct.c) {
    REQUIRE(sq.get(i) != nullptr);
    CHECK(*sq.get(i) == v);
  }
  // and psi_{t+1} = psi_t + 1
  OrePolyL tp1 = psi_of_poly(M, {1, 1});
  CHECK(*tp1.get(0) == LaurentElement::pi(M.F) + LaurentElement::one(M.F));
}

TEST_CASE("phibar_of_poly kills the residual characteristic up to height") {
  auto F = F4();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(0, LaurentElement::from_ff(FFElem::gen(F)));
  M.psi_t.set(1, LaurentElement::one(F));
  OrePolyK fb = reduction(M);
  OrePolyK P = phibar_of_poly(fb, {1, 1, 1}, F);  // t^2 + t + 1 at phibar
  CHECK(P.lowest() == 2);  // = h * deg(p_res)
  CHECK(P.deg() == 2);
}

TEST_CASE("tate rank table") {
  // supersingular rank 2, no extra: 0 at the reduction prime, 2 elsewhere
  auto t2 = tate_rank_table(supersingular3(), 0);
  CHECK(t2.reduction_prime == std::vector<long long>{0, 1});
  CHECK(t2.rank_at_reduction_prime == 0);
  CHECK(t2.rank_elsewhere == 2);

  // rank 1 + lattice rank 1: 1 at the reduction prime, 2 elsewhere
  auto t1 = tate_rank_table(carlitz_like(), 1);
  CHECK(t1.rank_at_reduction_prime == 1);
  CHECK(t1.rank_elsewhere == 2);
}

TEST_CASE("canonical lift is 1 for an exact reduction") {
  auto x = canonical_lift(supersingular3(), 4, 16);
  CHECK(x.c.size() == 1);
  CHECK(x.get(0)->str() == "1");
  CHECK(lift_residual(supersingular3(), x).ok);
}

TEST_CASE("canonical lift of the rank-1 module: closed form of the top coefficient") {
  auto M = carlitz_like();
  const long long J = 5, N = 16;
  auto x = canonical_lift(M, J, N);
  REQUIRE(x.get(0) != nullptr);
  CHECK(x.get(0)->str() == "1");

  // x_{-1} satisfies x - x^2 = pi: the iterates give sum_i pi^{2^i}
  const LaurentElement* x1 = x.get(-1);
  REQUIRE(x1 != nullptr);
  std::vector<long long> expo;
  for (const auto& [n, c] : x1->terms()) {
    CHECK(c.is_one());
    expo.push_back(n);
  }
  CHECK(expo == std::vector<long long>{1, 2, 4, 8});
  CHECK(*x1->prec() == Rat(16));

  // every tail coefficient obeys v >= |l| * w here (w = 1)
  for (const auto& [l, c] : x.c)
    if (l < 0) CHECK(*c.vlb() >= Rat(-l));

  // the commutation residual vanishes on the determined window
  auto res = lift_residual(M, x);
  CHECK(res.ok);
  CHECK(!res.worst.has_value());
}

TEST_CASE("canonical lift: depth extension is stable") {
  auto M = carlitz_like();
  auto x4 = canonical_lift(M, 4, 32);
  auto x6 = canonical_lift(M, 6, 32);
  for (const auto& [l, c] : x4.c) {
    REQUIRE(x6.get(l) != nullptr);
    CHECK(*x6.get(l) == c);
  }
}
