#pragma once

#include <map>
#include <optional>
#include <string>

#include "drinfeld/ff.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

// An element of k((pi^{1/p^e})): finitely many known terms plus a precision
// cap. Exponents are stored as integer numerators at an explicit level e
// (the exponent of a stored key n is n/p^e), so all arithmetic is integral
// and equality is decidable. prec = nullopt means EXACT (a finite sum known
// completely); prec = N means terms with exponent >= N/p^e are unknown.
//
// Canonical form: zero coefficients dropped, keys >= prec dropped, and the
// level is minimal (if every key and the precision numerator is divisible by
// p, the element is pushed down a level).
class LaurentElement {
 public:
  LaurentElement() = default;

  static LaurentElement zero(const FieldPtr& F);
  static LaurentElement one(const FieldPtr& F);
  static LaurentElement from_ff(const FFElem& c);
  // c * pi^{num/p^level}
  static LaurentElement monomial(const FFElem& c, long long num, long long level = 0);
  static LaurentElement pi(const FieldPtr& F);
  // 0 + O(pi^{num/p^level}) — the zero-to-precision element.
  static LaurentElement zero_with_prec(const FieldPtr& F, long long num, long long level = 0);

  const FieldPtr& field() const { return F_; }
  long long level() const { return level_; }
  const std::map<long long, FFElem>& terms() const { return terms_; }
  const std::optional<long long>& prec_num() const { return prec_; }

  bool is_exact() const { return !prec_.has_value(); }
  bool is_exact_zero() const { return terms_.empty() && is_exact(); }
  bool has_known_terms() const { return !terms_.empty(); }

  // Precision cap as a rational exponent; nullopt = EXACT.
  std::optional<Rat> prec() const;
  // Valuation lower bound: min known exponent, else the precision cap,
  // else nullopt meaning +infinity (exact zero).
  std::optional<Rat> vlb() const;

  friend LaurentElement operator+(const LaurentElement& a, const LaurentElement& b);
  friend LaurentElement operator-(const LaurentElement& a, const LaurentElement& b);
  friend LaurentElement operator*(const LaurentElement& a, const LaurentElement& b);
  LaurentElement operator-() const;
  friend LaurentElement operator*(const FFElem& c, const LaurentElement& a);
  friend bool operator==(const LaurentElement& a, const LaurentElement& b);
  friend bool operator!=(const LaurentElement& a, const LaurentElement& b) { return !(a == b); }

  std::string str() const;

 private:
  friend LaurentElement l_inv(const LaurentElement& a);
  friend LaurentElement p_power(const LaurentElement& a, long long n);
  friend Rat valuation(const LaurentElement& a);
  friend LaurentElement principal_part(const LaurentElement& a);
  friend LaurentElement truncate_at(const LaurentElement& a, const Rat& bound);
  friend FFElem residue(const LaurentElement& a);

  LaurentElement(FieldPtr F, long long level, std::map<long long, FFElem> terms,
                 std::optional<long long> prec);
  void normalize();
  LaurentElement at_level(long long target) const;

  FieldPtr F_;
  long long level_ = 0;
  std::map<long long, FFElem> terms_;
  std::optional<long long> prec_;
};

enum class LOp { add, sub, mul };
LaurentElement l_arith(const LaurentElement& a, const LaurentElement& b, LOp op);

// Multiplicative inverse. Exact monomials invert exactly; a finite-precision
// element inverts with prec(a^{-1}) = prec(a) - 2 v(a); an EXACT element with
// more than one term has an infinite inverse and must be truncated first
// (PrecisionExhausted).
LaurentElement l_inv(const LaurentElement& a);

// a^{p^n} for n of either sign. Exponents scale by p^n, coefficients map by
// frobenius_pow(., n); for n < 0 the level rises by at most |n| before
// renormalization.
LaurentElement p_power(const LaurentElement& a, long long n);

// Least known exponent. ZeroValuation on exact zero; PrecisionExhausted when
// the element is zero to its precision (valuation not determined).
Rat valuation(const LaurentElement& a);

// The unique representative of the class mod O supported in negative
// exponents. Requires the negative part to be fully known (prec >= 0).
LaurentElement principal_part(const LaurentElement& a);

// Cap precision at `bound` (drop known terms with exponent >= bound).
// The bound's denominator must be a p-power.
LaurentElement truncate_at(const LaurentElement& a, const Rat& bound);

// Image in the residue field k of an integral element (coefficient of pi^0).
// Requires v >= 0 and prec > 0 (or EXACT).
FFElem residue(const LaurentElement& a);

// True when v(a) >= 0 is certified: no known negative terms and the precision
// window cannot hide any (prec >= 0).
bool is_integral_certified(const LaurentElement& a);

}  // namespace drinfeld
