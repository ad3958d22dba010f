#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/kummer.hpp"

using namespace drinfeld;

namespace {
FieldPtr F2() { return Field::prime(2); }
FieldPtr F3() { return Field::prime(3); }
FieldPtr F4() { return Field::make(2, {1, 1, 1}); }

LaurentElement mono(const FieldPtr& F, long long num, long long level = 0, long long c = 1) {
  return LaurentElement::monomial(FFElem::from_int(F, c), num, level);
}

DrinfeldModule carlitz_like() {  // pi + tau over F_2, w = 1
  auto F = F2();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(0, LaurentElement::pi(F));
  M.psi_t.set(1, LaurentElement::one(F));
  return M;
}

DrinfeldModule tau2_f3() {  // tau^2 over F_3, exact reduction
  auto F = F3();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(2, LaurentElement::one(F));
  return M;
}

DrinfeldModule tau_f4() {  // tau over F_4, exact reduction, d = 2
  auto F = F4();
  DrinfeldModule M;
  M.F = F;
  M.psi_t.set(1, LaurentElement::one(F));
  return M;
}

PrincipalClass cls(const FieldPtr& F, std::initializer_list<std::pair<long long, std::pair<long long, FFElem>>> terms) {
  PrincipalClass c;
  c.F = F;
  for (const auto& [j, t] : terms) c.decomp[j].set(t.first, t.second);
  return c;
}
}  // namespace

TEST_CASE("lattice validation") {
  auto M = carlitz_like();
  auto F = M.F;
  LatticeSpec L;
  L.generators = {mono(F, -1)};
  L.declared_rank = 1;
  CHECK_NOTHROW(validate_lattice(M, L));

  LatticeSpec over = L;
  over.declared_rank = 2;  // more than the generator count
  CHECK_THROWS_AS(validate_lattice(M, over), Error);

  LatticeSpec frac = L;
  frac.generators = {mono(F, -1, 1)};  // pi^{-1/2}: not in K
  CHECK_THROWS_AS(validate_lattice(M, frac), Error);

  LatticeSpec integral = L;
  integral.generators = {LaurentElement::one(F)};  // v = 0: not a pole
  CHECK_THROWS_AS(validate_lattice(M, integral), Error);

  LatticeSpec alien = L;
  alien.generators = {mono(F3(), -1)};
  CHECK_THROWS_AS(validate_lattice(M, alien), Error);
}

TEST_CASE("chi is the identity on classes when the reduction is exact") {
  auto M = tau2_f3();
  LaurentElement xi = mono(M.F, -2) + mono(M.F, -3);
  CHECK(class_eq(chi_inverse_class(M, xi), decompose(xi)));
  CHECK(class_eq(chi_class(M, xi), decompose(xi)));
}

TEST_CASE("chi on integral and zero inputs") {
  auto M = carlitz_like();
  CHECK(chi_inverse_class(M, LaurentElement::zero(M.F)).is_zero());
  CHECK(chi_inverse_class(M, LaurentElement::one(M.F)).is_zero());
  // valuation hidden by the precision window: cannot proceed
  CHECK_THROWS_AS(chi_inverse_class(M, LaurentElement::zero_with_prec(M.F, -2)), Error);
}

TEST_CASE("chi-inverse on the rank-1 module: shallow poles are fixed") {
  auto M = carlitz_like();
  // depth 1 suffices for |v| <= 2 (w = 1, p^1 * 1 >= 2)
  CHECK(class_eq(chi_inverse_class(M, mono(M.F, -1)), decompose(mono(M.F, -1))));
  CHECK(class_eq(chi_inverse_class(M, mono(M.F, -2)), decompose(mono(M.F, -2))));
}

TEST_CASE("chi-inverse on a deeper pole: tail is added strictly inside the window") {
  auto M = carlitz_like();
  LaurentElement xi = mono(M.F, -3);
  PrincipalClass c = chi_inverse_class(M, xi);
  // j-invariant preserved (deepest pole survives)
  CHECK(j_invariant(c) == 3);
  CHECK(pole_order(c) == Rat(3));
  // the perturbation lies in the span of indices < 3
  PrincipalClass diff = class_sub(c, decompose(xi));
  CHECK(!diff.is_zero());           // here a genuine tau^{-1}-level tail appears
  CHECK(w_membership(diff, 3));
  // round trip back through chi
  CHECK(class_eq(chi_class(M, reconstruct(c)), decompose(xi)));
}

TEST_CASE("chi A-linearity on the rank-1 module") {
  auto M = carlitz_like();
  OrePolyK fb = reduction(M);
  for (long long e : {-1LL, -2LL, -3LL, -5LL}) {
    LaurentElement m = mono(M.F, e);
    PrincipalClass lhs = chi_inverse_class(M, ore_apply(M.psi_t, m));
    PrincipalClass rhs = class_act(fb, chi_inverse_class(M, m));
    CHECK(class_eq(lhs, rhs));
  }
}

TEST_CASE("explicit depth/precision options and their failure modes") {
  auto M = carlitz_like();
  LaurentElement deep = mono(M.F, -3);  // needs depth 2: 2^2 >= 3

  KummerOptions shallow;
  shallow.depth = 1;
  CHECK_THROWS_AS(chi_inverse_class(M, deep, shallow), Error);

  KummerOptions enough;
  enough.depth = 2;
  CHECK(class_eq(chi_inverse_class(M, deep, enough), chi_inverse_class(M, deep)));

  KummerOptions tiny;
  tiny.prec = 1;  // working precision hides the whole tail
  CHECK_THROWS_AS(chi_inverse_class(M, deep, tiny), Error);

  // an input known to too few digits is rejected up front
  LaurentElement fuzzy = truncate_at(deep, Rat(-2));
  CHECK_THROWS_AS(chi_inverse_class(M, fuzzy), Error);
}

TEST_CASE("bounded independence: certificates and inconsistencies") {
  auto M = carlitz_like();
  auto F = M.F;

  // duplicate generator: 1*m + 1*m = 0 is an exact relation
  LatticeSpec dup;
  dup.generators = {mono(F, -1), mono(F, -1)};
  dup.declared_rank = 2;
  CHECK_THROWS_AS(bounded_independence(M, dup), Error);

  dup.declared_rank = 1;  // consistent with the relation: reported, not fatal
  auto chk = bounded_independence(M, dup);
  CHECK(chk.relation_found);

  // independent pair: no relation up to the bound
  auto M3 = tau2_f3();
  LatticeSpec L;
  L.generators = {mono(M3.F, -1), mono(M3.F, -2) + mono(M3.F, -3)};
  L.declared_rank = 2;
  auto ok = bounded_independence(M3, L);
  CHECK(!ok.relation_found);
  CHECK(ok.D == 2);
  CHECK(ok.combinations == 728);  // 3^{2*3} - 1 nonzero coefficient tuples

  // a combination that lands in O \ {0} falsifies the lattice embedding
  LatticeSpec shifted;
  shifted.generators = {mono(M3.F, -1), mono(M3.F, -1) + LaurentElement::pi(M3.F)};
  shifted.declared_rank = 2;
  CHECK_THROWS_AS(bounded_independence(M3, shifted), Error);
}

TEST_CASE("build_Mbar on the exact-reduction rank-2 module") {
  auto M = tau2_f3();
  auto F = M.F;
  LatticeSpec L;
  L.generators = {mono(F, -1), mono(F, -2) + mono(F, -3)};
  L.declared_rank = 2;
  auto rows = build_Mbar(M, L, {});
  REQUIRE(rows.size() == 2);
  CHECK(class_eq(rows[0], cls(F, {{1, {0, FFElem::one(F)}}})));
  CHECK(class_eq(rows[1], cls(F, {{1, {1, FFElem::one(F)}}, {2, {0, FFElem::one(F)}}})));
}

TEST_CASE("skew echelon: duplicates collapse, shifts normalize, pivots sort") {
  auto F = F2();
  FFElem one = FFElem::one(F);

  // two copies of [pi^{-1}]: rank 1
  auto e1 = skew_echelon({cls(F, {{1, {0, one}}}), cls(F, {{1, {0, one}}})});
  CHECK(e1.pivots == std::vector<long long>{1});
  CHECK(e1.rows.size() == 1);
  CHECK(!e1.certificate.empty());

  // tau-shifted copy is still in the same cyclic module
  auto e2 = skew_echelon({cls(F, {{1, {0, one}}}), cls(F, {{1, {1, one}}})});
  CHECK(e2.pivots == std::vector<long long>{1});

  // distinct pivot indices survive independently
  auto e3 = skew_echelon({cls(F, {{1, {0, one}}}),
                          cls(F, {{2, {0, one}}, {1, {1, one}}})});
  CHECK(e3.pivots == std::vector<long long>{1, 2});
  CHECK(e3.rows.size() == 2);
  CHECK(e3.rows[0].top_index() == 2);  // rows ordered by decreasing top

  // zero rows are dropped; empty input allowed
  auto e4 = skew_echelon({PrincipalClass{}, cls(F, {{3, {0, one}}})});
  CHECK(e4.pivots == std::vector<long long>{3});
  CHECK(skew_echelon({}).pivots.empty());
}

TEST_CASE("echelon certificate replays to the echelon rows") {
  auto F = F4();
  FFElem z = FFElem::gen(F), one = FFElem::one(F);
  std::vector<PrincipalClass> rows = {
      cls(F, {{3, {0, z}}, {1, {-1, one}}}),
      cls(F, {{3, {1, one}}, {1, {0, z}}}),
      cls(F, {{1, {0, one}}}),
  };
  auto e = skew_echelon(rows);
  auto replayed = replay_certificate(rows, e.certificate);
  REQUIRE(replayed.size() == e.rows.size());
  for (std::size_t i = 0; i < replayed.size(); ++i) CHECK(class_eq(replayed[i], e.rows[i]));

  // input order does not change the computed pivot set
  std::vector<PrincipalClass> shuffled = {rows[2], rows[0], rows[1]};
  CHECK(skew_echelon(shuffled).pivots == e.pivots);
}

TEST_CASE("inertia report on the exact-reduction d=2 module, non-open image") {
  auto M = tau_f4();
  auto F = M.F;
  LatticeSpec L;
  L.generators = {mono(F, -1), LaurentElement::monomial(FFElem::gen(F), -1)};
  L.declared_rank = 2;
  auto rep = inertia_report(M, L, {});

  CHECK(rep.S == std::vector<long long>{1});
  CHECK(rep.rank_R == 1);
  CHECK(rep.conductor == 1);
  CHECK(rep.image_rank == 2);  // d * rank_R
  CHECK(!rep.open);            // declared 2 != certified 1
  CHECK(rep.d == 2);
  CHECK(rep.h == 1);

  REQUIRE(rep.filtration.size() == 3);
  CHECK(rep.filtration[0].rank == 2);
  CHECK(rep.filtration[0].classification == "finite");
  CHECK(rep.filtration[1].rank == 2);
  CHECK(rep.filtration[1].classification == "free_rank_d");
  CHECK(rep.filtration[2].rank == 0);
  CHECK(rep.filtration[2].classification == "zero");

  CHECK(rep.bounds.j_set_of_generators == std::vector<long long>{1});
  CHECK(rep.bounds.iRankBound_ok);
  CHECK(!rep.bounds.iOpenness_sufficient);
  CHECK(!rep.bounds.j_lower_bound_strict);
  CHECK(rep.bounds.iMJump_breaks == std::vector<long long>{1});

  CHECK(rep.tate.rank_elsewhere == 3);           // r + declared
  CHECK(rep.tate.rank_at_reduction_prime == 2);  // minus h

  auto checks = verify_inertia(M, L, rep, {});
  for (const auto& [name, pass] : checks) {
    INFO(name);
    CHECK(pass);
  }
}

TEST_CASE("inertia report flags the strict lower bound on the rank-2 break module") {
  auto M = tau2_f3();
  auto F = M.F;
  LatticeSpec L;
  L.generators = {mono(F, -1), mono(F, -2) + mono(F, -3)};
  L.declared_rank = 2;
  auto rep = inertia_report(M, L, {});
  CHECK(rep.S == std::vector<long long>{1, 2});
  CHECK(rep.rank_R == 2);
  CHECK(rep.open);
  CHECK(rep.bounds.j_set_of_generators == std::vector<long long>{1});
  CHECK(rep.bounds.j_lower_bound_strict);  // 1 = |j_set| < rank_R = 2
  // -v(m_2) = 3 is divisible by p and so contributes no tame jump index
  CHECK(rep.bounds.iMJump_breaks == std::vector<long long>{1});
  CHECK(rep.grJK_rule == "rank 0 if p|i, d if p∤i");

  auto checks = verify_inertia(M, L, rep, {});
  for (const auto& [name, pass] : checks) {
    INFO(name);
    CHECK(pass);
  }
}
