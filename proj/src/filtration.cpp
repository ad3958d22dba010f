#include "drinfeld/filtration.hpp"

#include <sstream>

namespace drinfeld {

long long PrincipalClass::top_index() const {
  if (decomp.empty()) fail(ErrKind::ZeroClass, "zero class has no top index");
  return decomp.rbegin()->first;
}

PrincipalClass decompose(const LaurentElement& xi) {
  PrincipalClass c;
  c.F = xi.field();
  LaurentElement pp = principal_part(xi);
  const long long p = c.F->p();
  for (const auto& [num, coeff] : pp.terms()) {
    long long m = -num;  // pole exponent numerator, > 0, at level pp.level()
    long long a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    const long long j = m;
    const long long nu = a - pp.level();
    auto [it, fresh] = c.decomp.try_emplace(j);
    (void)fresh;
    it->second.set(nu, it->second.c.count(nu) ? it->second.c.at(nu) + coeff : coeff);
  }
  for (auto it = c.decomp.begin(); it != c.decomp.end();)
    it = it->second.is_zero() ? c.decomp.erase(it) : std::next(it);
  return c;
}

LaurentElement reconstruct(const PrincipalClass& c) {
  LaurentElement acc = LaurentElement::zero(c.F);
  for (const auto& [j, fj] : c.decomp)
    acc = acc + ore_apply(fj, LaurentElement::monomial(FFElem::one(c.F), -j));
  return acc;
}

static Rat term_pole(long long j, long long nu, long long p) {
  // j * p^nu as a rational
  if (nu >= 0) return Rat(j * ipow(p, nu));
  return Rat(j, ipow(p, -nu));
}

Rat pole_order(const PrincipalClass& c) {
  if (c.is_zero()) fail(ErrKind::ZeroClass, "zero class has no pole order");
  const long long p = c.F->p();
  Rat best(0);
  for (const auto& [j, fj] : c.decomp)
    for (const auto& [nu, coeff] : fj.c) {
      (void)coeff;
      Rat cand = term_pole(j, nu, p);
      if (best < cand) best = cand;
    }
  return best;
}

long long j_invariant(const PrincipalClass& c) {
  if (c.is_zero()) fail(ErrKind::ZeroClass, "zero class has no j-invariant");
  const long long p = c.F->p();
  Rat best(0);
  long long best_j = 0;
  for (const auto& [j, fj] : c.decomp)
    for (const auto& [nu, coeff] : fj.c) {
      (void)coeff;
      Rat cand = term_pole(j, nu, p);
      if (best < cand) {
        best = cand;
        best_j = j;
      }
    }
  return best_j;
}

bool w_membership(const PrincipalClass& c, long long i) {
  return c.is_zero() || c.decomp.rbegin()->first < i;
}

PrincipalClass class_add(const PrincipalClass& a, const PrincipalClass& b) {
  if (!a.F->same_as(*b.F)) fail(ErrKind::FieldMismatch, "classes over different fields");
  PrincipalClass r = a;
  for (const auto& [j, fj] : b.decomp) {
    auto it = r.decomp.find(j);
    if (it == r.decomp.end()) {
      r.decomp.emplace(j, fj);
    } else {
      SkewLaurentPoly s = skew_add(it->second, fj);
      if (s.is_zero())
        r.decomp.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return r;
}

PrincipalClass class_sub(const PrincipalClass& a, const PrincipalClass& b) {
  PrincipalClass nb = b;
  for (auto& [j, fj] : nb.decomp) {
    SkewLaurentPoly neg;
    for (const auto& [nu, v] : fj.c) neg.c.emplace(nu, -v);
    fj = std::move(neg);
  }
  return class_add(a, nb);
}

PrincipalClass class_act(const SkewLaurentPoly& g, const PrincipalClass& c) {
  PrincipalClass r;
  r.F = c.F;
  for (const auto& [j, fj] : c.decomp) {
    SkewLaurentPoly prod = skew_mul(g, fj);
    if (!prod.is_zero()) r.decomp.emplace(j, std::move(prod));
  }
  return r;
}

PrincipalClass class_act(const OrePolyK& g, const PrincipalClass& c) {
  return class_act(skew_from_poly(g), c);
}

bool class_eq(const PrincipalClass& a, const PrincipalClass& b) {
  if (a.decomp.size() != b.decomp.size()) return false;
  for (const auto& [j, fj] : a.decomp) {
    auto it = b.decomp.find(j);
    if (it == b.decomp.end()) return false;
    if (fj.c != it->second.c) return false;
  }
  return true;
}

std::string class_str(const PrincipalClass& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool outer_first = true;
  for (const auto& [j, fj] : c.decomp) {
    if (!outer_first) os << " + ";
    outer_first = false;
    os << "(";
    bool first = true;
    for (const auto& [nu, v] : fj.c) {
      if (!first) os << " + ";
      first = false;
      os << v.str() << "*tau^" << nu;
    }
    os << ")(pi^-" << j << ")";
  }
  return os.str();
}

}  // namespace drinfeld
