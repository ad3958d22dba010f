#include "drinfeld/uniformizer.hpp"

#include <algorithm>
#include <map>

namespace drinfeld {

LatticePoints enumerate_lattice(const DrinfeldModule& M, const LatticeSpec& L, const Rat& B) {
  validate_lattice(M, L);
  if (!(Rat(0) < B)) fail(ErrKind::ParseError, "valuation bound B must be positive");
  LatticePoints out;
  out.B = B;
  out.points.push_back(LaurentElement::zero(M.F));
  const std::size_t n = L.generators.size();
  if (n == 0) return out;

  const long long p = M.F->p();
  const long long r = M.r();
  Rat minv = -valuation(L.generators[0]);
  for (const auto& g : L.generators) {
    Rat av = -valuation(g);
    if (av < minv) minv = av;
  }
  // least D with p^{rD} * min|v| >= B: deeper t-degrees only produce poles
  // beyond B (absent cancellation, which is flagged below)
  long long D = 0;
  {
    long long pw = 1;
    while (Rat(pw) * minv < B) {
      if (pw > 2000000000000000000LL / ipow(p, r))
        fail(ErrKind::Internal, "lattice degree bound overflows");
      pw *= ipow(p, r);
      ++D;
    }
  }
  out.degree_bound = D;

  const long long E = D + 1;
  std::vector<std::vector<LaurentElement>> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    LaurentElement cur = L.generators[i];
    u[i].push_back(cur);
    for (long long e = 1; e < E; ++e) {
      cur = ore_apply(M.psi_t, cur);
      u[i].push_back(cur);
    }
  }
  std::vector<Rat> uval;  // v(u[i][e]) = p^{re} v(m_i), flattened
  for (std::size_t i = 0; i < n; ++i)
    for (long long e = 0; e < E; ++e) uval.push_back(valuation(u[i][e]));

  const std::size_t digits = n * static_cast<std::size_t>(E);
  unsigned long long total = 1;
  for (std::size_t q = 0; q < digits; ++q) {
    if (total > 4000000ull / static_cast<unsigned long long>(p))
      fail(ErrKind::Internal, "lattice enumeration too large; lower B or the generator count");
    total *= static_cast<unsigned long long>(p);
  }

  std::map<std::string, bool> seen;
  seen.emplace(out.points[0].str(), true);
  std::vector<long long> c(digits, 0);
  for (unsigned long long idx = 1; idx < total; ++idx) {
    std::size_t pos = 0;
    while (true) {
      if (++c[pos] < p) break;
      c[pos] = 0;
      ++pos;
    }
    LaurentElement combo = LaurentElement::zero(M.F);
    std::optional<Rat> predicted;
    for (std::size_t q = 0; q < digits; ++q) {
      if (!c[q]) continue;
      combo = combo + FFElem::from_int(M.F, c[q]) * u[q / E][q % E];
      if (!predicted || uval[q] < *predicted) predicted = uval[q];
    }
    if (combo.is_exact_zero()) {
      out.cancellation_warning = true;  // a vanishing combination hides deeper points
      continue;
    }
    const Rat actual = valuation(combo);
    if (*predicted < actual) out.cancellation_warning = true;
    if (actual < -B) continue;
    auto [it, fresh] = seen.emplace(combo.str(), true);
    (void)it;
    if (fresh) out.points.push_back(combo);
  }

  std::sort(out.points.begin(), out.points.end(), [](const LaurentElement& a, const LaurentElement& b) {
    const bool za = a.is_exact_zero(), zb = b.is_exact_zero();
    if (za != zb) return zb;  // zero sorts last
    if (za) return false;
    const Rat va = valuation(a), vb = valuation(b);
    if (va != vb) return va < vb;
    return a.str() < b.str();
  });

  // M_B is a group: the sum of any two points is again one (ultrametric).
  if (out.points.size() <= 512) {
    for (std::size_t i = 0; i < out.points.size(); ++i)
      for (std::size_t j = i; j < out.points.size(); ++j) {
        LaurentElement s = out.points[i] + out.points[j];
        if (!seen.count(s.str()) && !s.is_exact_zero())
          fail(ErrKind::Internal, "enumerated lattice piece is not closed under addition");
      }
  }
  return out;
}

TruncatedExponential truncated_exponential(const DrinfeldModule& M, const LatticePoints& pts,
                                           std::optional<long long> prec) {
  TruncatedExponential T;
  T.lattice = pts;
  const long long p = M.F->p();
  if (prec && *prec <= 0) fail(ErrKind::ParseError, "working precision must be positive");

  // expand z * prod (1 - z/m) as a plain polynomial in z
  std::vector<LaurentElement> c;
  c.push_back(LaurentElement::zero(M.F));
  c.push_back(LaurentElement::one(M.F));
  for (const auto& m : pts.points) {
    if (m.is_exact_zero()) continue;
    const LaurentElement minv = l_inv(prec ? truncate_at(m, Rat(*prec)) : m);
    std::vector<LaurentElement> nc(c.size() + 1, LaurentElement::zero(M.F));
    for (std::size_t k = 0; k < c.size(); ++k) {
      nc[k] = nc[k] + c[k];
      nc[k + 1] = nc[k + 1] - c[k] * minv;
    }
    c = std::move(nc);
  }

  // additivity: only z^{p^i} coefficients may survive
  for (std::size_t k = 1; k < c.size(); ++k) {
    bool ppow = true;
    std::size_t m = k;
    while (m > 1) {
      if (m % static_cast<std::size_t>(p)) {
        ppow = false;
        break;
      }
      m /= static_cast<std::size_t>(p);
    }
    if (ppow) {
      long long i = 0;
      for (std::size_t q = k; q > 1; q /= static_cast<std::size_t>(p)) ++i;
      if (!c[k].is_exact_zero()) T.e_B.set(i, c[k]);
    } else if (c[k].has_known_terms()) {
      fail(ErrKind::Internal, "lattice product expansion is not additive");
    }
  }
  const LaurentElement* e0 = T.e_B.get(0);
  if (e0 == nullptr || !(*e0 == LaurentElement::one(M.F)))
    fail(ErrKind::Internal, "truncated exponential must have constant coefficient 1");

  // kernel check: e_B vanishes on every enumerated point (exactly, for exact
  // inputs; to precision otherwise)
  for (const auto& m : pts.points) {
    if (m.is_exact_zero()) continue;
    if (ore_apply(T.e_B, m).has_known_terms())
      fail(ErrKind::Internal, "truncated exponential does not kill a lattice point");
  }
  return T;
}

bool exponential_additive_on(const OrePolyL& e, const LaurentElement& a, const LaurentElement& b) {
  LaurentElement lhs = ore_apply(e, a + b);
  LaurentElement rhs = ore_apply(e, a) + ore_apply(e, b);
  LaurentElement diff = lhs - rhs;
  return diff.is_exact_zero() || !diff.has_known_terms();
}

AnalyticQuotient analytic_quotient(const DrinfeldModule& M, const LatticeSpec& L, const Rat& B,
                                   std::optional<long long> prec) {
  AnalyticQuotient out;
  out.exp = truncated_exponential(M, enumerate_lattice(M, L, B), prec);
  const long long r = M.r();
  const long long s = out.exp.e_B.deg();
  out.phi_t_degree_certified = r + L.declared_rank;

  OrePolyL psi = M.psi_t;
  OrePolyL e = out.exp.e_B;
  if (prec) {
    if (*prec <= 0) fail(ErrKind::ParseError, "working precision must be positive");
    OrePolyL tp;
    for (const auto& [i, v] : psi.c) tp.c.emplace(i, truncate_at(v, Rat(*prec)));
    psi = std::move(tp);
    OrePolyL te;
    for (const auto& [i, v] : e.c) te.c.emplace(i, truncate_at(v, Rat(*prec)));
    e = std::move(te);
  }

  // unitriangular solve of e psi_t = phi_t e for tau-degrees 0..r+s
  const OrePolyL lhs = ore_mul(e, psi);
  for (long long nn = 0; nn <= r + s; ++nn) {
    LaurentElement g = LaurentElement::zero(M.F);
    if (const LaurentElement* l = lhs.get(nn)) g = *l;
    for (long long i = 0; i < nn; ++i) {
      const LaurentElement* gi = out.phi_t.get(i);
      const LaurentElement* ej = e.get(nn - i);
      if (gi && ej) g = g - (*gi) * p_power(*ej, i);
    }
    out.phi_t.set(nn, g);
  }

  // a-posteriori certificate: what's left of the functional equation
  OrePolyL resid = ore_sub(lhs, ore_mul(out.phi_t, e));
  for (const auto& [k, v] : resid.c) {
    if (k <= r + s) {
      if (v.has_known_terms())
        fail(ErrKind::Internal, "solved coefficient range has a nonzero residual");
      continue;
    }
    const Rat vb = v.has_known_terms() ? valuation(v) : *v.prec();
    if (!out.residual_valuation || vb < *out.residual_valuation) out.residual_valuation = vb;
  }
  if (out.residual_valuation && !(Rat(0) < *out.residual_valuation))
    fail(ErrKind::ResidualTooLarge, "functional-equation residual has nonpositive valuation");
  return out;
}

}  // namespace drinfeld
