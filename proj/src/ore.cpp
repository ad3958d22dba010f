#include "drinfeld/ore.hpp"

namespace drinfeld {

LaurentElement ore_apply(const OrePolyL& f, const LaurentElement& xi) {
  LaurentElement acc = LaurentElement::zero(xi.field());
  for (const auto& [i, fi] : f.c) acc = acc + fi * p_power(xi, i);
  return acc;
}

LaurentElement ore_apply(const OrePolyK& f, const LaurentElement& xi) {
  LaurentElement acc = LaurentElement::zero(xi.field());
  for (const auto& [i, fi] : f.c) acc = acc + LaurentElement::from_ff(fi) * p_power(xi, i);
  return acc;
}

OrePolyL to_laurent_poly(const OrePolyK& f) {
  OrePolyL r;
  for (const auto& [i, fi] : f.c) r.c.emplace(i, LaurentElement::from_ff(fi));
  return r;
}

OrePolyK residue_poly(const OrePolyL& f) {
  OrePolyK r;
  for (const auto& [i, fi] : f.c) {
    FFElem c0 = residue(fi);
    if (!c0.is_zero()) r.c.emplace(i, std::move(c0));
  }
  return r;
}

std::pair<OrePolyK, OrePolyK> left_divmod(const OrePolyK& f, const OrePolyK& g) {
  if (g.is_zero()) fail(ErrKind::DivisionByZero, "left division by zero twisted polynomial");
  OrePolyK q, r = f;
  const long long dg = g.deg();
  const FFElem lg = g.c.rbegin()->second;
  while (!r.is_zero() && r.deg() >= dg) {
    const long long delta = r.deg() - dg;
    // lc(f) = c * lc(g)^{p^delta}
    FFElem c = r.c.rbegin()->second * frobenius_pow(lg, delta).inv();
    OrePolyK step;
    step.set(delta, c);
    q = ore_add(q, step);
    r = ore_sub(r, ore_mul(step, g));
  }
  return {std::move(q), std::move(r)};
}

SkewLaurentPoly skew_add(const SkewLaurentPoly& f, const SkewLaurentPoly& g) {
  SkewLaurentPoly r = f;
  for (const auto& [i, v] : g.c) {
    auto it = r.c.find(i);
    if (it == r.c.end()) {
      r.c.emplace(i, v);
    } else {
      FFElem s = it->second + v;
      if (s.is_zero())
        r.c.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return r;
}

SkewLaurentPoly skew_sub(const SkewLaurentPoly& f, const SkewLaurentPoly& g) {
  SkewLaurentPoly ng;
  for (const auto& [i, v] : g.c) ng.c.emplace(i, -v);
  return skew_add(f, ng);
}

SkewLaurentPoly skew_mul(const SkewLaurentPoly& f, const SkewLaurentPoly& g) {
  SkewLaurentPoly r;
  for (const auto& [i, fi] : f.c)
    for (const auto& [j, gj] : g.c) {
      FFElem term = fi * frobenius_pow(gj, i);
      auto it = r.c.find(i + j);
      if (it == r.c.end()) {
        if (!term.is_zero()) r.c.emplace(i + j, std::move(term));
      } else {
        FFElem s = it->second + term;
        if (s.is_zero())
          r.c.erase(it);
        else
          it->second = std::move(s);
      }
    }
  return r;
}

SkewLaurentPoly skew_from_poly(const OrePolyK& f) {
  SkewLaurentPoly r;
  for (const auto& [i, v] : f.c) r.c.emplace(i, v);
  return r;
}

SkewLaurentPoly skew_shift(const SkewLaurentPoly& f, long long n) {
  SkewLaurentPoly r;
  for (const auto& [i, v] : f.c) r.c.emplace(i + n, frobenius_pow(v, n));
  return r;
}

LaurentElement ore_apply(const SkewLaurentPoly& f, const LaurentElement& xi) {
  LaurentElement acc = LaurentElement::zero(xi.field());
  for (const auto& [i, fi] : f.c) acc = acc + LaurentElement::from_ff(fi) * p_power(xi, i);
  return acc;
}

bool skew_is_poly(const SkewLaurentPoly& f) { return f.c.empty() || f.bottom() >= 0; }

OrePolyK skew_to_poly(const SkewLaurentPoly& f) {
  if (!skew_is_poly(f)) fail(ErrKind::Internal, "skew polynomial has negative tau powers");
  OrePolyK r;
  for (const auto& [i, v] : f.c) r.c.emplace(i, v);
  return r;
}

bool TauSeries::is_one(const FieldPtr& F) const {
  // "Equal to 1 at the current precision": the tau^0 coefficient differs from
  // 1 by something with no known terms, every other coefficient has none.
  if (c.count(0) == 0) return false;  // tau^0 coefficient exactly zero
  for (const auto& [j, v] : c) {
    if (j == 0) {
      LaurentElement diff = v - LaurentElement::one(F);
      if (diff.has_known_terms()) return false;
    } else if (v.has_known_terms()) {
      return false;
    }
  }
  return true;
}

TauSeries series_from_poly(const OrePolyL& f, long long J) {
  TauSeries s;
  s.J = J;
  for (const auto& [i, v] : f.c)
    if (i >= -J && !v.is_exact_zero()) s.c.emplace(i, v);
  return s;
}

TauSeries series_one(const FieldPtr& F, long long J) {
  TauSeries s;
  s.J = J;
  s.c.emplace(0, LaurentElement::one(F));
  return s;
}

TauSeries series_add(const TauSeries& x, const TauSeries& y) {
  TauSeries r;
  r.J = std::min(x.J, y.J);
  for (const auto& [j, v] : x.c)
    if (j >= -r.J) r.c.emplace(j, v);
  for (const auto& [j, v] : y.c) {
    if (j < -r.J) continue;
    auto it = r.c.find(j);
    if (it == r.c.end()) {
      r.c.emplace(j, v);
    } else {
      LaurentElement s = it->second + v;
      if (s.is_exact_zero())
        r.c.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return r;
}

TauSeries series_sub(const TauSeries& x, const TauSeries& y) {
  TauSeries ny;
  ny.J = y.J;
  for (const auto& [j, v] : y.c) ny.c.emplace(j, -v);
  return series_add(x, ny);
}

TauSeries series_mul(const TauSeries& x, const TauSeries& y, long long J) {
  TauSeries r;
  r.J = J;
  for (const auto& [i, xi] : x.c)
    for (const auto& [j, yj] : y.c) {
      const long long k = i + j;
      if (k < -J) continue;
      LaurentElement term = xi * p_power(yj, i);
      auto it = r.c.find(k);
      if (it == r.c.end()) {
        if (!term.is_exact_zero()) r.c.emplace(k, std::move(term));
      } else {
        LaurentElement s = it->second + term;
        if (s.is_exact_zero())
          r.c.erase(it);
        else
          it->second = std::move(s);
      }
    }
  return r;
}

TauSeries series_inverse(const TauSeries& x, long long J) {
  if (x.J < J) fail(ErrKind::Internal, "series depth too small for requested inverse depth");
  if (!x.c.empty() && x.c.rbegin()->first > 0)
    fail(ErrKind::Internal, "series inverse requires tau-degrees <= 0");
  const LaurentElement* x0 = x.get(0);
  if (x0 == nullptr) fail(ErrKind::NotAUnit, "constant tau-coefficient is zero");
  if (valuation(*x0) != Rat(0))
    fail(ErrKind::NotAUnit, "constant tau-coefficient is not a unit");
  const LaurentElement x0inv = l_inv(*x0);

  TauSeries y;
  y.J = J;
  y.c.emplace(0, x0inv);
  for (long long l = -1; l >= -J; --l) {
    LaurentElement S = LaurentElement::zero(x0->field());
    for (long long j = l + 1; j <= 0; ++j) {
      const LaurentElement* xl_j = x.get(l - j);
      const LaurentElement* yj = y.get(j);
      if (xl_j == nullptr || yj == nullptr) continue;
      S = S + (*xl_j) * p_power(*yj, l - j);
    }
    LaurentElement yl = -(x0inv * S);
    if (!yl.is_exact_zero()) y.c.emplace(l, std::move(yl));
  }
  return y;
}

std::map<long long, LaurentElement> z_form(const TauSeries& y) {
  std::map<long long, LaurentElement> z;
  for (const auto& [j, v] : y.c) {
    if (j > 0) fail(ErrKind::Internal, "z-form expects tau-degrees <= 0");
    z.emplace(j, p_power(v, -j));
  }
  return z;
}

LaurentElement apply_z_form(const std::map<long long, LaurentElement>& z, const LaurentElement& xi) {
  LaurentElement acc = LaurentElement::zero(xi.field());
  for (const auto& [j, zj] : z) acc = acc + p_power(zj * xi, j);
  return acc;
}

}  // namespace drinfeld
