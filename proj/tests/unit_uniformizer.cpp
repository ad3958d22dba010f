#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/uniformizer.hpp"

using namespace drinfeld;

namespace {
FieldPtr F2() { return Field::prime(2); }

LaurentElement mono(const FieldPtr& F, long long num, long long level = 0, long long c = 1) {
  return LaurentElement::monomial(FFElem::from_int(F, c), num, level);
}

DrinfeldModule frobenius_module() {  // tau over F_2
  auto F = F2();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(1, LaurentElement::one(F));
  return M;
}

DrinfeldModule carlitz_like() {  // pi + tau over F_2
  auto F = F2();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(0, LaurentElement::pi(F));
  M.psi_t.set(1, LaurentElement::one(F));
  return M;
}

LatticeSpec rank1(const DrinfeldModule& M) {
  LatticeSpec L;
  L.generators = {mono(M.F, -1)};
  L.declared_rank = 1;
  return L;
}
}  // namespace

TEST_CASE("lattice point enumeration grows with the bound") {
  auto M = frobenius_module();
  auto L = rank1(M);

  // B = 1: only the generator orbit up to t-degree 0
  auto p1 = enumerate_lattice(M, L, Rat(1));
  CHECK(p1.degree_bound == 0);
  REQUIRE(p1.points.size() == 2);
  CHECK(p1.points[0].str() == "pi^-1");
  CHECK(p1.points[1].is_exact_zero());  // zero sorts last
  CHECK(!p1.cancellation_warning);

  // B = 2: t acts as squaring, adding pi^{-2} and pi^{-2}+pi^{-1}
  auto p2 = enumerate_lattice(M, L, Rat(2));
  CHECK(p2.degree_bound == 1);
  REQUIRE(p2.points.size() == 4);
  CHECK(p2.points[0].str() == "pi^-2");
  CHECK(p2.points[1].str() == "pi^-2 + pi^-1");
  CHECK(p2.points[2].str() == "pi^-1");
  CHECK(p2.points[3].is_exact_zero());

  CHECK_THROWS_AS(enumerate_lattice(M, L, Rat(0)), Error);
  CHECK_THROWS_AS(enumerate_lattice(M, L, Rat(-1)), Error);
}

TEST_CASE("exact combination collapse raises the cancellation flag") {
  auto M = frobenius_module();
  LatticeSpec L;
  L.generators = {mono(M.F, -1), mono(M.F, -1)};
  L.declared_rank = 1;
  auto pts = enumerate_lattice(M, L, Rat(1));
  CHECK(pts.cancellation_warning);  // m1 + m2 = 0 exactly
  CHECK(pts.points.size() == 2);    // deduplicated: {pi^{-1}, 0}
}

TEST_CASE("truncated exponential: kernel, additivity, and p-power support") {
  auto M = frobenius_module();
  // the span contains the two-term point pi^{-2} + pi^{-1}, so a working
  // precision is required for its inverse
  auto T = truncated_exponential(M, enumerate_lattice(M, rank1(M), Rat(2)), 32);

  // e_B = z prod (1 - z/m) collapses to tau-degrees 0..2 over the 4 points
  CHECK(T.e_B.deg() == 2);
  CHECK(T.e_B.get(0)->str() == "1");  // constant coefficient stays exact

  for (const auto& m : T.lattice.points)
    if (!m.is_exact_zero()) CHECK(!ore_apply(T.e_B, m).has_known_terms());

  for (const auto& a : T.lattice.points)
    for (const auto& b : T.lattice.points) CHECK(exponential_additive_on(T.e_B, a, b));

  // additivity also holds off the lattice (additive polynomials are additive)
  CHECK(exponential_additive_on(T.e_B, mono(M.F, -5), LaurentElement::pi(M.F)));

  // a single-generator orbit with one-term points stays fully exact
  auto T1 = truncated_exponential(M, enumerate_lattice(M, rank1(M), Rat(1)));
  CHECK(T1.e_B.deg() == 1);
  for (const auto& [i, v] : T1.e_B.c) CHECK(v.is_exact());
  CHECK(ore_apply(T1.e_B, mono(M.F, -1)).is_exact_zero());
}

TEST_CASE("empty lattice: the quotient is the module itself") {
  auto M = carlitz_like();
  LatticeSpec empty;
  auto q = analytic_quotient(M, empty, Rat(1));
  CHECK(q.exp.e_B.deg() == 0);
  CHECK(q.exp.e_B.get(0)->str() == "1");
  CHECK(q.phi_t.c.size() == M.psi_t.c.size());
  for (const auto& [i, v] : M.psi_t.c) {
    REQUIRE(q.phi_t.get(i) != nullptr);
    CHECK(*q.phi_t.get(i) == v);
  }
  CHECK(!q.residual_valuation.has_value());  // exact: residual infinitely small
}

TEST_CASE("rank-1 quotient of the rank-1 module: exact coefficients at B = 1") {
  auto M = carlitz_like();
  auto q = analytic_quotient(M, rank1(M), Rat(1));
  CHECK(q.phi_t_degree_certified == 2);  // r + declared_rank
  REQUIRE(q.phi_t.get(0) != nullptr);
  CHECK(q.phi_t.get(0)->str() == "pi^1");  // constant coefficient preserved
  CHECK(q.phi_t.get(1)->str() == "1 + pi^2 + pi^3");
  CHECK(q.phi_t.get(2)->str() == "pi^1 + pi^2 + pi^4 + pi^5");
  REQUIRE(q.residual_valuation.has_value());
  CHECK(*q.residual_valuation == Rat(5));
}

TEST_CASE("multi-term points force a finite working precision") {
  auto M = carlitz_like();
  auto L = rank1(M);
  // at B = 2 the orbit contains 1 + pi^{-2}, whose inverse is an infinite
  // series: the fully exact mode must refuse rather than silently truncate
  CHECK_THROWS_AS(analytic_quotient(M, L, Rat(2)), Error);
}

TEST_CASE("deeper bounds push the residual up") {
  auto M = carlitz_like();
  auto L = rank1(M);
  auto q1 = analytic_quotient(M, L, Rat(1), 64);
  auto q2 = analytic_quotient(M, L, Rat(2), 64);
  REQUIRE(q1.residual_valuation.has_value());
  REQUIRE(q2.residual_valuation.has_value());
  CHECK(*q1.residual_valuation == Rat(5));  // agrees with the exact run
  CHECK(*q1.residual_valuation < *q2.residual_valuation);
  // the two runs agree on phi_t's constant coefficient (known windows)
  CHECK(q1.phi_t.get(0)->terms() == q2.phi_t.get(0)->terms());
}

TEST_CASE("working precision caps the quotient's coefficients") {
  auto M = carlitz_like();
  auto q = analytic_quotient(M, rank1(M), Rat(1), 8);
  REQUIRE(q.phi_t.get(0) != nullptr);
  CHECK(*q.phi_t.get(0)->vlb() == Rat(1));
  CHECK(!q.phi_t.get(1)->is_exact());
  REQUIRE(q.residual_valuation.has_value());
  CHECK(Rat(0) < *q.residual_valuation);

  CHECK_THROWS_AS(analytic_quotient(M, rank1(M), Rat(1), 0), Error);
  CHECK_THROWS_AS(analytic_quotient(M, rank1(M), Rat(1), -3), Error);
}
