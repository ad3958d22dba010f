#pragma once

#include <map>

#include "drinfeld/ore.hpp"

namespace drinfeld {

// A class in K_sep / O_{K_sep} supported on principal parts, written in the
// canonical form  xi = sum_j f_j(pi^{-j})  with j > 0 coprime to p and
// f_j in k[tau^{+-1}]. A pole c * pi^{n/p^e} (n < 0, -n = j p^a with p coprime
// to j) contributes c tau^{a-e} to f_j; distinct (j, nu) give distinct poles,
// so the form is unique and arithmetic on classes is exact.
struct PrincipalClass {
  FieldPtr F;
  std::map<long long, SkewLaurentPoly> decomp;  // j -> f_j

  bool is_zero() const { return decomp.empty(); }
  // Largest j with f_j != 0 (the echelon pivot position).
  long long top_index() const;
};

// Class of xi modulo integral elements. Requires the principal part of xi to
// be fully known (certified nonnegative precision).
PrincipalClass decompose(const LaurentElement& xi);

// The represented element sum_j f_j(pi^{-j}), exact.
LaurentElement reconstruct(const PrincipalClass& c);

// The j whose pole j p^nu is deepest; invariant of the class. ZeroClass on 0.
long long j_invariant(const PrincipalClass& c);

// Deepest pole order j p^nu over all terms. ZeroClass on the zero class.
Rat pole_order(const PrincipalClass& c);

// Whether every supporting index j is < i (membership in the i-th window).
bool w_membership(const PrincipalClass& c, long long i);

PrincipalClass class_add(const PrincipalClass& a, const PrincipalClass& b);
PrincipalClass class_sub(const PrincipalClass& a, const PrincipalClass& b);
PrincipalClass class_act(const SkewLaurentPoly& g, const PrincipalClass& c);
PrincipalClass class_act(const OrePolyK& g, const PrincipalClass& c);
bool class_eq(const PrincipalClass& a, const PrincipalClass& b);
std::string class_str(const PrincipalClass& c);

}  // namespace drinfeld
