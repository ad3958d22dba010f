#pragma once

#include <map>
#include <string>
#include <utility>

#include "drinfeld/laurent.hpp"

namespace drinfeld {

// Scalar adapters so the twisted-polynomial templates work over both k and
// the Laurent scalars. tau^n acts on a coefficient c as c -> c^{p^n}.
inline FFElem scalar_ppow(const FFElem& c, long long n) { return frobenius_pow(c, n); }
inline LaurentElement scalar_ppow(const LaurentElement& c, long long n) { return p_power(c, n); }
inline bool scalar_is_zero(const FFElem& c) { return c.is_zero(); }
inline bool scalar_is_zero(const LaurentElement& c) { return c.is_exact_zero(); }

// Twisted polynomial sum_i c_i tau^i with the commutation rule tau*x = x^p*tau.
// Keys are >= 0; zero coefficients are dropped (a coefficient that is merely
// zero-to-precision over Laurent scalars is kept, carrying its prec window).
template <class C>
struct OrePolyT {
  std::map<long long, C> c;

  bool is_zero() const { return c.empty(); }
  long long deg() const { return c.empty() ? -1 : c.rbegin()->first; }
  long long lowest() const { return c.empty() ? -1 : c.begin()->first; }

  void set(long long i, C v) {
    if (i < 0) fail(ErrKind::Internal, "negative tau exponent in OrePoly");
    if (scalar_is_zero(v))
      c.erase(i);
    else
      c.insert_or_assign(i, std::move(v));
  }
  const C* get(long long i) const {
    auto it = c.find(i);
    return it == c.end() ? nullptr : &it->second;
  }
};

using OrePolyK = OrePolyT<FFElem>;      // R = k[tau]
using OrePolyL = OrePolyT<LaurentElement>;  // S[tau], S the Laurent scalars

template <class C>
OrePolyT<C> ore_add(const OrePolyT<C>& f, const OrePolyT<C>& g) {
  OrePolyT<C> r = f;
  for (const auto& [i, v] : g.c) {
    auto it = r.c.find(i);
    if (it == r.c.end()) {
      r.c.emplace(i, v);
    } else {
      C s = it->second + v;
      if (scalar_is_zero(s))
        r.c.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return r;
}

template <class C>
OrePolyT<C> ore_neg(const OrePolyT<C>& f) {
  OrePolyT<C> r;
  for (const auto& [i, v] : f.c) r.c.emplace(i, -v);
  return r;
}

template <class C>
OrePolyT<C> ore_sub(const OrePolyT<C>& f, const OrePolyT<C>& g) {
  return ore_add(f, ore_neg(g));
}

// (fg)_k = sum_{i+j=k} f_i * g_j^{p^i}
template <class C>
OrePolyT<C> ore_mul(const OrePolyT<C>& f, const OrePolyT<C>& g) {
  OrePolyT<C> r;
  for (const auto& [i, fi] : f.c) {
    for (const auto& [j, gj] : g.c) {
      C term = fi * scalar_ppow(gj, i);
      auto it = r.c.find(i + j);
      if (it == r.c.end()) {
        if (!scalar_is_zero(term)) r.c.emplace(i + j, std::move(term));
      } else {
        C s = it->second + term;
        if (scalar_is_zero(s))
          r.c.erase(it);
        else
          it->second = std::move(s);
      }
    }
  }
  return r;
}

// f(xi) = sum_i f_i xi^{p^i}: the additive-polynomial action on scalars.
LaurentElement ore_apply(const OrePolyL& f, const LaurentElement& xi);
LaurentElement ore_apply(const OrePolyK& f, const LaurentElement& xi);

// Embed a k[tau]-polynomial as a Laurent-coefficient polynomial.
OrePolyL to_laurent_poly(const OrePolyK& f);
// Reduce an integral Laurent-coefficient polynomial coefficientwise to k.
OrePolyK residue_poly(const OrePolyL& f);

// Left Euclidean division in k[tau]: f = q*g + r with deg r < deg g. The
// leading coefficient of each quotient step solves lc(f) = c * lc(g)^{p^delta}.
std::pair<OrePolyK, OrePolyK> left_divmod(const OrePolyK& f, const OrePolyK& g);

// k[tau^{+-1}]: finite support over k, both signs of tau allowed.
struct SkewLaurentPoly {
  std::map<long long, FFElem> c;

  bool is_zero() const { return c.empty(); }
  long long top() const { return c.empty() ? 0 : c.rbegin()->first; }
  long long bottom() const { return c.empty() ? 0 : c.begin()->first; }
  void set(long long i, FFElem v) {
    if (v.is_zero())
      c.erase(i);
    else
      c.insert_or_assign(i, std::move(v));
  }
};

SkewLaurentPoly skew_add(const SkewLaurentPoly& f, const SkewLaurentPoly& g);
SkewLaurentPoly skew_sub(const SkewLaurentPoly& f, const SkewLaurentPoly& g);
SkewLaurentPoly skew_mul(const SkewLaurentPoly& f, const SkewLaurentPoly& g);
SkewLaurentPoly skew_from_poly(const OrePolyK& f);
// tau^n * f (left multiplication by the unit tau^n)
SkewLaurentPoly skew_shift(const SkewLaurentPoly& f, long long n);
LaurentElement ore_apply(const SkewLaurentPoly& f, const LaurentElement& xi);
bool skew_is_poly(const SkewLaurentPoly& f);        // no negative tau powers
OrePolyK skew_to_poly(const SkewLaurentPoly& f);    // requires skew_is_poly

// Truncated series sum_{j >= -J} c_j tau^j over Laurent scalars. Products of
// a series with a polynomial can carry positive tau-degrees, so keys range
// over [-J, +deg]; only coefficients with index >= -J are known.
struct TauSeries {
  long long J = 0;  // truncation depth: coefficients below tau^{-J} unknown
  std::map<long long, LaurentElement> c;

  const LaurentElement* get(long long j) const {
    auto it = c.find(j);
    return it == c.end() ? nullptr : &it->second;
  }
  void set(long long j, LaurentElement v) {
    if (j < -J) fail(ErrKind::Internal, "coefficient below series depth");
    if (v.is_exact_zero())
      c.erase(j);
    else
      c.insert_or_assign(j, std::move(v));
  }
  bool is_one(const FieldPtr& F) const;
};

TauSeries series_from_poly(const OrePolyL& f, long long J);
TauSeries series_one(const FieldPtr& F, long long J);
TauSeries series_add(const TauSeries& x, const TauSeries& y);
TauSeries series_sub(const TauSeries& x, const TauSeries& y);

// Product truncated at tau^{-J}: (xy)_k = sum_{i+j=k} x_i * y_j^{p^i}, kept
// for k >= -J. Coefficients of the result that would need inputs below the
// operands' depths are only valid for k >= max(-Jx + deg_y_min...); callers
// pass J <= min(Jx, Jy) minus the positive spread when full validity matters.
TauSeries series_mul(const TauSeries& x, const TauSeries& y, long long J);

// Inverse of x = sum_{j<=0} x_j tau^j with x_0 a unit, to depth J:
//   y_0 = x_0^{-1},  y_l = -x_0^{-1} * sum_{l<j<=0} x_{l-j} * y_j^{p^{l-j}}.
TauSeries series_inverse(const TauSeries& x, long long J);

// The integral presentation x^{-1} = sum_j tau^j z_j with z_j = y_j^{p^{-j}}.
std::map<long long, LaurentElement> z_form(const TauSeries& y);

// Apply a series (z-form coefficients) to a scalar: sum_j (z_j * xi)^{p^j}.
LaurentElement apply_z_form(const std::map<long long, LaurentElement>& z, const LaurentElement& xi);

}  // namespace drinfeld
