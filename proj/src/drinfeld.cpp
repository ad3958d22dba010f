#include "drinfeld/drinfeld.hpp"

namespace drinfeld {

void validate_module(const DrinfeldModule& M) {
  if (!M.F) fail(ErrKind::Internal, "module has no coefficient field");
  if (M.psi_t.is_zero() || M.psi_t.deg() < 1)
    fail(ErrKind::NotADrinfeldModule, "t must act with tau-degree >= 1");
  for (const auto& [i, v] : M.psi_t.c) {
    if (!v.field()->same_as(*M.F))
      fail(ErrKind::FieldMismatch, "coefficient field differs from module field");
    if (!is_integral_certified(v))
      fail(ErrKind::BadReduction, "coefficient of tau^" + std::to_string(i) + " is not certified integral");
  }
  if (valuation(M.psi_t.c.rbegin()->second) != Rat(0))
    fail(ErrKind::BadReduction, "leading coefficient must be a unit");
}

OrePolyK reduction(const DrinfeldModule& M) { return residue_poly(M.psi_t); }

OrePolyL reduction_lift(const DrinfeldModule& M) { return to_laurent_poly(reduction(M)); }

std::optional<Rat> reduction_gap(const DrinfeldModule& M) {
  OrePolyL diff = ore_sub(M.psi_t, reduction_lift(M));
  std::optional<Rat> w;
  for (const auto& [i, v] : diff.c) {
    (void)i;
    Rat cand = v.has_known_terms() ? valuation(v) : *v.prec();
    if (!w || cand < *w) w = cand;
  }
  return w;
}

ReductionInvariants reduction_invariants(const DrinfeldModule& M) {
  validate_module(M);
  ReductionInvariants inv;
  inv.r = M.r();
  inv.d = M.F->d();
  const LaurentElement* a0 = M.psi_t.get(0);
  FFElem theta_bar = a0 ? residue(*a0) : FFElem::zero(M.F);
  inv.p_res = minpoly_over_prime(theta_bar);

  OrePolyK fb = reduction(M);
  OrePolyK P_of_fb = phibar_of_poly(fb, inv.p_res, M.F);
  if (P_of_fb.is_zero()) fail(ErrKind::Internal, "residual prime acts as zero on the reduction");
  const long long degP = static_cast<long long>(inv.p_res.size()) - 1;
  const long long low = P_of_fb.lowest();
  if (low % degP != 0)
    fail(ErrKind::Internal, "lowest tau-degree of the residual-prime action is not divisible by its degree");
  inv.h = low / degP;
  if (inv.h < 1 || inv.h > inv.r) fail(ErrKind::Internal, "height outside [1, r]");
  return inv;
}

OrePolyL psi_of_poly(const DrinfeldModule& M, const std::vector<long long>& a) {
  OrePolyL acc;
  OrePolyL pw;
  pw.set(0, LaurentElement::one(M.F));
  for (std::size_t e = 0; e < a.size(); ++e) {
    FFElem c = FFElem::from_int(M.F, a[e]);
    if (!c.is_zero()) {
      OrePolyL term;
      for (const auto& [j, g] : pw.c) term.c.emplace(j, c * g);
      acc = ore_add(acc, term);
    }
    if (e + 1 < a.size()) pw = ore_mul(pw, M.psi_t);
  }
  return acc;
}

OrePolyK phibar_of_poly(const OrePolyK& phibar_t, const std::vector<long long>& a, const FieldPtr& F) {
  OrePolyK acc;
  OrePolyK pw;
  pw.set(0, FFElem::one(F));
  for (std::size_t e = 0; e < a.size(); ++e) {
    FFElem c = FFElem::from_int(F, a[e]);
    if (!c.is_zero()) {
      OrePolyK term;
      for (const auto& [j, g] : pw.c) term.c.emplace(j, c * g);
      acc = ore_add(acc, term);
    }
    if (e + 1 < a.size()) pw = ore_mul(pw, phibar_t);
  }
  return acc;
}

TateRankTable tate_rank_table(const DrinfeldModule& M, long long extra_rank) {
  if (extra_rank < 0) fail(ErrKind::Internal, "negative extra rank");
  ReductionInvariants inv = reduction_invariants(M);
  TateRankTable t;
  t.reduction_prime = inv.p_res;
  t.rank_elsewhere = inv.r + extra_rank;
  t.rank_at_reduction_prime = inv.r + extra_rank - inv.h;
  return t;
}

TauSeries canonical_lift(const DrinfeldModule& M, long long J, long long N) {
  validate_module(M);
  if (J < 0) fail(ErrKind::Internal, "negative lift depth");
  if (N <= 0) fail(ErrKind::Internal, "working precision must be positive");

  if (ore_sub(M.psi_t, reduction_lift(M)).is_zero())
    return series_one(M.F, J);  // exact reduction: the intertwiner is the identity

  const long long r = M.r();
  OrePolyK fb = reduction(M);
  const FFElem fb_r = fb.c.rbegin()->second;

  // Work at precision N throughout.
  OrePolyL f;
  for (const auto& [i, v] : M.psi_t.c) f.c.emplace(i, truncate_at(v, Rat(N)));
  const LaurentElement& fr = f.c.rbegin()->second;
  const unsigned long long cap = 64 + 4ull * static_cast<unsigned long long>(N);

  // x_0 solves x^{p^r - 1} = u with u = phibar_r / psi_r = 1 mod pi; Newton
  // from x = 1. In characteristic p the step is x += (x^{p^r-1} - u) x^{2-p^r}.
  LaurentElement u = LaurentElement::from_ff(fb_r) * l_inv(fr);
  LaurentElement x0 = LaurentElement::one(M.F);
  bool converged = false;
  for (unsigned long long it = 0; it < cap; ++it) {
    LaurentElement t1 = p_power(x0, r);           // x^{p^r}
    LaurentElement err = t1 * l_inv(x0) - u;      // x^{p^r-1} - u
    if (!err.has_known_terms()) {
      converged = true;
      break;
    }
    x0 = x0 + err * (x0 * x0) * l_inv(t1);
  }
  if (!converged) fail(ErrKind::NonConvergence, "unit-root equation for x_0 did not converge");

  TauSeries xs;
  xs.J = J;
  xs.c.emplace(0, x0);

  // Coefficient l of psi_t x = x phibar_t (tau-degree r + l):
  //   f_r x_l^{p^r} - x_l phibar_r^{p^l}
  //     + sum_{max(0, r+l) <= i < r} ( f_i x_j^{p^i} - x_j phibar_i^{p^j} ) = 0,
  // j = r + l - i. Solved for x_l by iterating
  //   x <- (S_l + f_r x^{p^r}) * (phibar_r^{p^l})^{-1}
  // from 0; each pass multiplies the error's valuation by p^r.
  for (long long l = -1; l >= -J; --l) {
    LaurentElement S = LaurentElement::zero(M.F);
    for (long long i = std::max(0LL, r + l); i < r; ++i) {
      const long long j = r + l - i;
      const LaurentElement* xj = xs.get(j);
      if (xj == nullptr) continue;
      if (const LaurentElement* fi = f.get(i)) S = S + (*fi) * p_power(*xj, i);
      auto itb = fb.c.find(i);
      if (itb != fb.c.end())
        S = S - LaurentElement::from_ff(frobenius_pow(itb->second, j)) * (*xj);
    }
    const LaurentElement cinv = LaurentElement::from_ff(frobenius_pow(fb_r, l).inv());
    LaurentElement y = LaurentElement::zero(M.F);
    converged = false;
    for (unsigned long long it = 0; it < cap; ++it) {
      LaurentElement ynew = (S + fr * p_power(y, r)) * cinv;
      LaurentElement diff = ynew - y;
      y = std::move(ynew);
      if (!diff.has_known_terms()) {
        converged = true;
        break;
      }
    }
    if (!converged)
      fail(ErrKind::NonConvergence, "coefficient equation for x_" + std::to_string(l) + " did not converge");
    xs.set(l, y);
  }
  return xs;
}

ResidualCheck lift_residual(const DrinfeldModule& M, const TauSeries& x) {
  validate_module(M);
  const long long r = M.r();
  TauSeries fS = series_from_poly(M.psi_t, x.J);
  TauSeries fbS = series_from_poly(reduction_lift(M), x.J);
  TauSeries diff = series_sub(series_mul(fS, x, x.J), series_mul(x, fbS, x.J));
  ResidualCheck res;
  res.ok = true;
  for (const auto& [k, v] : diff.c) {
    if (k < r - x.J) continue;  // below the window the truncation determines
    if (!v.has_known_terms()) continue;
    res.ok = false;
    Rat val = valuation(v);
    if (!res.worst || val < *res.worst) res.worst = val;
  }
  return res;
}

}  // namespace drinfeld
