#pragma once

#include <optional>
#include <vector>

#include "drinfeld/ore.hpp"

namespace drinfeld {

// A Drinfeld F_p[t]-module over K = k((pi)) with good reduction, presented by
// the image of t: psi_t = sum_i a_i tau^i, a_i integral, leading a_r a unit.
struct DrinfeldModule {
  FieldPtr F;
  OrePolyL psi_t;

  long long r() const { return psi_t.deg(); }
};

// Throws unless psi_t defines a module with good reduction: tau-degree >= 1,
// coefficients certified integral, leading coefficient a certified unit.
void validate_module(const DrinfeldModule& M);

OrePolyK reduction(const DrinfeldModule& M);       // phibar_t over k
OrePolyL reduction_lift(const DrinfeldModule& M);  // phibar_t with exact constant coefficients

// w = v(psi_t - phibar_t), the reduction gap, as the minimum over coefficient
// differences. When precision hides a difference this is a (sound) lower
// bound. nullopt means psi_t equals its reduction lift exactly.
std::optional<Rat> reduction_gap(const DrinfeldModule& M);

struct ReductionInvariants {
  std::vector<long long> p_res;  // monic minimal polynomial over F_p of the residue of a_0
  long long h = 0;               // height of the reduction
  long long r = 0;               // tau-degree of psi_t
  long long d = 0;               // [k : F_p]
};
ReductionInvariants reduction_invariants(const DrinfeldModule& M);

// a(psi_t) for a in F_p[t], a[e] the coefficient of t^e.
OrePolyL psi_of_poly(const DrinfeldModule& M, const std::vector<long long>& a);
OrePolyK phibar_of_poly(const OrePolyK& phibar_t, const std::vector<long long>& a, const FieldPtr& F);

// Tate module ranks of a module of total rank r + extra_rank whose reduction
// has the given invariants: the rank drops by h exactly at the residual prime.
struct TateRankTable {
  std::vector<long long> reduction_prime;
  long long rank_at_reduction_prime = 0;
  long long rank_elsewhere = 0;
};
TateRankTable tate_rank_table(const DrinfeldModule& M, long long extra_rank);

// The canonical intertwiner x = sum_{l<=0} x_l tau^l with psi_t x = x phibar_t
// and x_0 = 1 mod pi, computed to depth J at working precision N.
TauSeries canonical_lift(const DrinfeldModule& M, long long J, long long N);

struct ResidualCheck {
  bool ok = false;
  std::optional<Rat> worst;  // valuation of a surviving residual term, if any
};
// Checks psi_t x - x phibar_t = 0 on the tau-degree window [r - J, r], the
// coefficients the truncation depth actually determines.
ResidualCheck lift_residual(const DrinfeldModule& M, const TauSeries& x);

}  // namespace drinfeld
