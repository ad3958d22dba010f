#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// Raw user-supplied description of k = F_p[z]/(g(z)); validated by Field.
struct FieldSpec {
  long long p = 0;
  std::vector<long long> g;  // coefficients of g, degree 0 upward, monic
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// The finite field k = F_p[z]/(g), g monic irreducible of degree d.
// Irreducibility and primality are verified at construction. Elements are
// coefficient vectors in the basis 1, z, ..., z^{d-1}.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(const FieldSpec& spec);
  static FieldPtr make(long long p, std::vector<long long> g);
  // Prime field F_p (g = z - 0, d = 1 presented as g = [0, 1]).
  static FieldPtr prime(long long p);

  long long p() const { return p_; }
  long long d() const { return d_; }
  const std::vector<long long>& g() const { return g_; }

  bool same_as(const Field& o) const { return p_ == o.p_ && g_ == o.g_; }

  // --- arithmetic on coefficient vectors (length d, entries in [0,p)) ---
  std::vector<long long> add(const std::vector<long long>& a, const std::vector<long long>& b) const;
  std::vector<long long> sub(const std::vector<long long>& a, const std::vector<long long>& b) const;
  std::vector<long long> neg(const std::vector<long long>& a) const;
  std::vector<long long> mul(const std::vector<long long>& a, const std::vector<long long>& b) const;
  std::vector<long long> inv(const std::vector<long long>& a) const;
  bool is_zero(const std::vector<long long>& a) const;

 private:
  Field(long long p, std::vector<long long> g);
  long long p_ = 0;
  long long d_ = 0;
  std::vector<long long> g_;  // monic, length d+1

  std::vector<long long> reduce(std::vector<long long> a) const;  // mod g, to length d
};

// An element of k. Immutable in practice: all operations return new values.
class FFElem {
 public:
  FFElem() = default;
  FFElem(FieldPtr F, std::vector<long long> coeffs);

  static FFElem zero(const FieldPtr& F);
  static FFElem one(const FieldPtr& F);
  static FFElem gen(const FieldPtr& F);                      // the class of z
  static FFElem from_int(const FieldPtr& F, long long n);    // image of n in F_p

  const FieldPtr& field() const { return F_; }
  const std::vector<long long>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in the prime field F_p.
  bool in_prime_field() const;
  // The F_p value when in_prime_field() holds.
  long long as_int() const;

  friend FFElem operator+(const FFElem& a, const FFElem& b);
  friend FFElem operator-(const FFElem& a, const FFElem& b);
  friend FFElem operator*(const FFElem& a, const FFElem& b);
  friend FFElem operator/(const FFElem& a, const FFElem& b);
  FFElem operator-() const;
  friend bool operator==(const FFElem& a, const FFElem& b);
  friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }

  FFElem inv() const;
  FFElem pow(unsigned long long e) const;

  std::string str() const;  // human form, e.g. "z+1"

 private:
  FieldPtr F_;
  std::vector<long long> c_;
};

// a -> a^{p^n}; n may be negative (inverse Frobenius via the automorphism
// group of k being cyclic of order d: n acts as n mod d).
FFElem frobenius_pow(const FFElem& a, long long n);

// Dispatch form of the basic field operations.
enum class FFOp { add, sub, mul, div };
FFElem ff_arith(const FFElem& a, const FFElem& b, FFOp op);

// Minimal polynomial of a over F_p: monic, coefficients (degree 0 upward)
// returned as plain integers in [0,p).
std::vector<long long> minpoly_over_prime(const FFElem& a);

// Guard: both operands over the same field.
void require_same_field(const FFElem& a, const FFElem& b);

}  // namespace drinfeld
