#include "drinfeld/kummer.hpp"

#include <algorithm>
#include <set>

namespace drinfeld {

void validate_lattice(const DrinfeldModule& M, const LatticeSpec& L) {
  validate_module(M);
  const long long n = static_cast<long long>(L.generators.size());
  if (L.declared_rank < 0 || L.declared_rank > n)
    fail(ErrKind::ParseError, "declared rank must lie in [0, #generators]");
  if (L.independence_bound < 0) fail(ErrKind::ParseError, "independence bound must be nonnegative");
  for (const auto& g : L.generators) {
    if (!g.field()->same_as(*M.F))
      fail(ErrKind::FieldMismatch, "lattice generator over a different field");
    if (g.level() != 0)
      fail(ErrKind::ParseError, "lattice generators must lie in K (integer exponents)");
    if (!(valuation(g) < Rat(0)))
      fail(ErrKind::ParseError, "lattice generators must have negative valuation");
  }
}

IndependenceCheck bounded_independence(const DrinfeldModule& M, const LatticeSpec& L) {
  validate_lattice(M, L);
  IndependenceCheck res;
  res.D = L.independence_bound;
  const std::size_t n = L.generators.size();
  if (n == 0) return res;
  const long long p = M.F->p();
  const long long E = res.D + 1;  // number of t-power coefficients per generator

  // u[i][e] = psi_{t^e}(m_i)
  std::vector<std::vector<LaurentElement>> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    LaurentElement cur = L.generators[i];
    u[i].push_back(cur);
    for (long long e = 1; e < E; ++e) {
      cur = ore_apply(M.psi_t, cur);
      u[i].push_back(cur);
    }
  }

  const std::size_t digits = n * static_cast<std::size_t>(E);
  unsigned long long total = 1;
  for (std::size_t q = 0; q < digits; ++q) {
    if (total > 4000000ull / static_cast<unsigned long long>(p))
      fail(ErrKind::Internal, "independence bound too large for exhaustive search; lower it");
    total *= static_cast<unsigned long long>(p);
  }

  std::vector<long long> c(digits, 0);
  for (unsigned long long idx = 1; idx < total; ++idx) {
    std::size_t pos = 0;
    while (true) {
      if (++c[pos] < p) break;
      c[pos] = 0;
      ++pos;
    }
    ++res.combinations;
    LaurentElement combo = LaurentElement::zero(M.F);
    for (std::size_t i = 0; i < n; ++i)
      for (long long e = 0; e < E; ++e) {
        const long long coef = c[i * static_cast<std::size_t>(E) + static_cast<std::size_t>(e)];
        if (coef) combo = combo + FFElem::from_int(M.F, coef) * u[i][e];
      }
    if (combo.is_exact_zero()) {
      res.relation_found = true;
      if (L.declared_rank == static_cast<long long>(n))
        fail(ErrKind::RankInconsistent,
             "A-relation of degree <= D among generators contradicts the declared rank");
    } else if (is_integral_certified(combo)) {
      fail(ErrKind::RankInconsistent,
           "integral combination of generators violates the lattice condition M cap O = {0}");
    }
  }
  return res;
}

namespace {

// Least J >= 1 with p^J * w >= absv: truncating below tau^{-J} then drops
// only integral terms.
long long required_depth(long long p, const Rat& absv, const Rat& w) {
  long long J = 1;
  long long pw = p;
  while (Rat(pw) * w < absv) {
    if (pw > 2000000000000000000LL / p)
      fail(ErrKind::Internal, "depth requirement overflows");
    pw *= p;
    ++J;
  }
  return J;
}

PrincipalClass chi_core(const DrinfeldModule& M, const LaurentElement& xi,
                        const KummerOptions& opt, bool inverse) {
  validate_module(M);
  if (!xi.field()->same_as(*M.F))
    fail(ErrKind::FieldMismatch, "argument over a different field");
  if (xi.is_exact_zero()) {
    PrincipalClass c;
    c.F = M.F;
    return c;
  }
  const Rat v = valuation(xi);
  if (!(v < Rat(0))) return decompose(xi);  // integral: the zero class
  const Rat absv = -v;
  if (auto pr = xi.prec()) {
    if (*pr < Rat(absv.ceil_ll() + 1))
      fail(ErrKind::PrecisionExhausted,
           "input precision below the requirement ceil(|v|) + 1");
  }
  const auto w = reduction_gap(M);
  if (!w) return decompose(xi);  // exact reduction: the identity on classes

  const long long Jreq = required_depth(M.F->p(), absv, *w);
  const long long J = opt.depth.value_or(Jreq);
  if (J < Jreq)
    fail(ErrKind::PrecisionExhausted, "forced depth below the integrality requirement");

  long long N = opt.prec.value_or(absv.ceil_ll() + 4);
  const int attempts = opt.prec ? 1 : 12;
  std::string last = "n/a";
  for (int a = 0; a < attempts; ++a, N *= 2) {
    try {
      TauSeries x = canonical_lift(M, J, N);
      TauSeries ser = inverse ? series_inverse(x, J) : x;
      // Every strictly negative coefficient obeys v >= w; this is what makes
      // the dropped tail integral. A violation is an arithmetic bug.
      for (const auto& [j, cj] : ser.c) {
        if (j >= 0 || !cj.has_known_terms()) continue;
        if (valuation(cj) < *w)
          fail(ErrKind::Internal, "series coefficient below its valuation bound");
      }
      LaurentElement sum = apply_z_form(z_form(ser), xi);
      return decompose(sum);
    } catch (const Error& e) {
      if (e.kind() != ErrKind::PrecisionExhausted) throw;
      last = e.what();
    }
  }
  fail(ErrKind::PrecisionExhausted, "working-precision retries exhausted (" + last + ")");
}

}  // namespace

PrincipalClass chi_inverse_class(const DrinfeldModule& M, const LaurentElement& xi,
                                 const KummerOptions& opt) {
  return chi_core(M, xi, opt, /*inverse=*/true);
}

PrincipalClass chi_class(const DrinfeldModule& M, const LaurentElement& xi,
                         const KummerOptions& opt) {
  return chi_core(M, xi, opt, /*inverse=*/false);
}

std::vector<PrincipalClass> build_Mbar(const DrinfeldModule& M, const LatticeSpec& L,
                                       const KummerOptions& opt) {
  validate_lattice(M, L);
  std::vector<PrincipalClass> rows;
  rows.reserve(L.generators.size());
  for (const auto& m : L.generators) {
    PrincipalClass cls = chi_inverse_class(M, m, opt);
    if (cls.is_zero())
      fail(ErrKind::Internal, "chi-inverse of a negative-valuation class vanished");
    // The j-invariant is preserved by chi^{-1}; a mismatch is a bug.
    if (j_invariant(cls) != j_invariant(decompose(m)))
      fail(ErrKind::Internal, "j-invariant not preserved by chi-inverse");
    rows.push_back(std::move(cls));
  }
  return rows;
}

namespace {

void normalize_row(std::vector<PrincipalClass>& W, std::size_t i,
                   std::vector<EchelonForm::Op>& cert) {
  if (W[i].is_zero()) return;
  const long long b = W[i].decomp.rbegin()->second.bottom();
  if (b == 0) return;
  SkewLaurentPoly s;
  s.set(-b, FFElem::one(W[i].F));
  W[i] = class_act(s, W[i]);
  cert.push_back({"scale", i, -b, 0, {}});
}

}  // namespace

EchelonForm skew_echelon(const std::vector<PrincipalClass>& rows) {
  EchelonForm E;
  std::vector<PrincipalClass> W = rows;
  for (std::size_t i = 0; i < W.size(); ++i) normalize_row(W, i, E.certificate);

  while (true) {
    // largest top index carried by two or more nonzero rows
    std::map<long long, std::vector<std::size_t>> by_top;
    for (std::size_t i = 0; i < W.size(); ++i)
      if (!W[i].is_zero()) by_top[W[i].top_index()].push_back(i);
    std::optional<long long> dup;
    for (auto it = by_top.rbegin(); it != by_top.rend(); ++it)
      if (it->second.size() >= 2) {
        dup = it->first;
        break;
      }
    if (!dup) break;

    std::size_t a = by_top[*dup][0];
    std::size_t b = by_top[*dup][1];
    OrePolyK fa = skew_to_poly(W[a].decomp.at(*dup));
    OrePolyK fb = skew_to_poly(W[b].decomp.at(*dup));
    if (fa.deg() < fb.deg()) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
    // reduce the higher-degree entry: top entry of row a becomes the remainder
    auto [q, rem] = left_divmod(fa, fb);
    (void)rem;
    W[a] = class_sub(W[a], class_act(q, W[b]));
    E.certificate.push_back({"elim", a, 0, b, q});
    normalize_row(W, a, E.certificate);
  }

  std::vector<std::pair<long long, std::size_t>> order;
  for (std::size_t i = 0; i < W.size(); ++i)
    if (!W[i].is_zero()) order.emplace_back(W[i].top_index(), i);
  std::sort(order.begin(), order.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [top, i] : order) {
    E.rows.push_back(W[i]);
    E.pivots.push_back(top);
  }
  std::sort(E.pivots.begin(), E.pivots.end());
  return E;
}

std::vector<PrincipalClass> replay_certificate(const std::vector<PrincipalClass>& rows,
                                               const std::vector<EchelonForm::Op>& cert) {
  std::vector<PrincipalClass> W = rows;
  for (const auto& op : cert) {
    if (op.row >= W.size() || (op.kind == "elim" && op.other >= W.size()))
      fail(ErrKind::Internal, "certificate references a missing row");
    if (op.kind == "scale") {
      SkewLaurentPoly s;
      s.set(op.shift, FFElem::one(W[op.row].F));
      W[op.row] = class_act(s, W[op.row]);
    } else if (op.kind == "elim") {
      W[op.row] = class_sub(W[op.row], class_act(op.q, W[op.other]));
    } else {
      fail(ErrKind::Internal, "unknown certificate operation");
    }
  }
  std::vector<std::pair<long long, std::size_t>> order;
  for (std::size_t i = 0; i < W.size(); ++i)
    if (!W[i].is_zero()) order.emplace_back(W[i].top_index(), i);
  std::sort(order.begin(), order.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<PrincipalClass> out;
  for (const auto& [top, i] : order) {
    (void)top;
    out.push_back(W[i]);
  }
  return out;
}

InertiaReport inertia_report(const DrinfeldModule& M, const LatticeSpec& L,
                             const KummerOptions& opt) {
  validate_lattice(M, L);
  InertiaReport rep;
  const ReductionInvariants inv = reduction_invariants(M);
  rep.d = inv.d;
  rep.r_psi = inv.r;
  rep.h = inv.h;
  rep.pres = inv.p_res;
  rep.w = reduction_gap(M);
  rep.declared_rank = L.declared_rank;

  rep.independence = bounded_independence(M, L);
  rep.gen_classes = build_Mbar(M, L, opt);
  rep.echelon = skew_echelon(rep.gen_classes);
  rep.S = rep.echelon.pivots;
  rep.rank_R = static_cast<long long>(rep.echelon.rows.size());
  rep.conductor = rep.S.empty() ? 0 : rep.S.back();
  rep.image_rank = rep.d * rep.rank_R;
  rep.open = (rep.declared_rank == rep.rank_R);

  const std::set<long long> Sset(rep.S.begin(), rep.S.end());
  for (long long i = 0; i <= rep.conductor + 1; ++i) {
    InertiaReport::FiltRow row;
    row.i = i;
    long long cnt = 0;
    for (long long s : rep.S)
      if (s >= i) ++cnt;
    row.rank = rep.d * cnt;
    row.classification = Sset.count(i) ? "free_rank_d" : (row.rank > 0 ? "finite" : "zero");
    rep.filtration.push_back(row);
  }

  rep.tate = tate_rank_table(M, rep.declared_rank);

  std::set<long long> jset;
  for (const auto& m : L.generators) jset.insert(j_invariant(decompose(m)));
  rep.bounds.j_set_of_generators.assign(jset.begin(), jset.end());
  const long long njs = static_cast<long long>(jset.size());
  rep.bounds.iRankBound_ok = (njs <= rep.rank_R && rep.rank_R <= rep.declared_rank);
  rep.bounds.iOpenness_sufficient = (njs == rep.declared_rank);
  rep.bounds.j_lower_bound_strict = (njs < rep.rank_R);

  std::set<long long> mjump;
  for (const auto& m : L.generators) {
    const Rat v = valuation(m);  // level 0: integer
    if (!v.is_integer()) continue;
    const long long i = (-v).ceil_ll();
    if (i > 0 && i % M.F->p() != 0) {
      if (!Sset.count(i))
        fail(ErrKind::Internal, "generator pole order coprime to p is missing from the break set");
      mjump.insert(i);
    }
  }
  rep.bounds.iMJump_breaks.assign(mjump.begin(), mjump.end());

  rep.grJK_rule = "rank 0 if p|i, d if p∤i";
  return rep;
}

std::vector<std::pair<std::string, bool>> verify_inertia(const DrinfeldModule& M,
                                                         const LatticeSpec& L,
                                                         const InertiaReport& rep,
                                                         const KummerOptions& opt) {
  std::vector<std::pair<std::string, bool>> out;
  auto run = [&out](const std::string& name, auto&& fn) {
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception&) {
      pass = false;
    }
    out.emplace_back(name, pass);
  };

  run("lift_residual", [&] {
    if (!rep.w) return true;  // identity intertwiner
    long long J = 1, N = 8;
    for (const auto& m : L.generators) {
      const Rat av = -valuation(m);
      J = std::max(J, required_depth(M.F->p(), av, *rep.w));
      N = std::max(N, 2 * (av.ceil_ll() + 4));
    }
    if (opt.depth) J = std::max(J, *opt.depth);
    const TauSeries x = canonical_lift(M, J, N);
    return lift_residual(M, x).ok;
  });

  run("chi_roundtrip", [&] {
    for (const auto& m : L.generators) {
      const PrincipalClass inv = chi_inverse_class(M, m, opt);
      const PrincipalClass back = chi_class(M, reconstruct(inv), opt);
      if (!class_eq(back, decompose(m))) return false;
    }
    return true;
  });

  run("A_linearity", [&] {
    const OrePolyK fb = reduction(M);
    for (const auto& m : L.generators) {
      const PrincipalClass lhs = chi_inverse_class(M, ore_apply(M.psi_t, m), opt);
      const PrincipalClass rhs = class_act(fb, chi_inverse_class(M, m, opt));
      if (!class_eq(lhs, rhs)) return false;
    }
    return true;
  });

  run("chixixi_support", [&] {
    for (const auto& m : L.generators) {
      const Rat v = valuation(m);
      if (!v.is_integer()) continue;
      const PrincipalClass diff = class_sub(chi_inverse_class(M, m, opt), decompose(m));
      if (!w_membership(diff, (-v).ceil_ll())) return false;
    }
    return true;
  });

  run("j_preservation", [&] {
    for (const auto& m : L.generators)
      if (j_invariant(chi_inverse_class(M, m, opt)) != j_invariant(decompose(m))) return false;
    return true;
  });

  run("rank_bound_chain", [&] {
    const long long njs = static_cast<long long>(rep.bounds.j_set_of_generators.size());
    return njs <= rep.rank_R && rep.rank_R <= rep.declared_rank;
  });

  run("mjump_subset", [&] {
    const std::set<long long> Sset(rep.S.begin(), rep.S.end());
    for (long long i : rep.bounds.iMJump_breaks)
      if (!Sset.count(i)) return false;
    return true;
  });

  run("filtration_monotone", [&] {
    for (std::size_t i = 1; i < rep.filtration.size(); ++i)
      if (rep.filtration[i].rank > rep.filtration[i - 1].rank) return false;
    if (rep.filtration.empty()) return false;
    if (rep.filtration.back().rank != 0) return false;
    if (!rep.S.empty() && rep.filtration[rep.filtration.size() - 2].rank == 0) return false;
    return true;
  });

  run("echelon_replay", [&] {
    const auto replayed = replay_certificate(rep.gen_classes, rep.echelon.certificate);
    if (replayed.size() != rep.echelon.rows.size()) return false;
    for (std::size_t i = 0; i < replayed.size(); ++i)
      if (!class_eq(replayed[i], rep.echelon.rows[i])) return false;
    return true;
  });

  run("tate_consistency",
      [&] { return rep.tate.rank_elsewhere - rep.tate.rank_at_reduction_prime == rep.h; });

  return out;
}

}  // namespace drinfeld
