#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// Exact rational numbers for valuations and bounds. Denominators occurring in
// the pipeline are p-powers (exponent lattices of the perfection), but the
// type is a plain reduced fraction; magnitudes stay tiny so int64 suffices.
struct Rat {
  long long n = 0;
  long long d = 1;  // always > 0, gcd(n,d) = 1

  Rat() = default;
  Rat(long long num) : n(num), d(1) {}
  Rat(long long num, long long den) : n(num), d(den) { normalize(); }

  void normalize() {
    if (d == 0) fail(ErrKind::DivisionByZero, "rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n == 0) d = 1;
  }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.n * b.d + b.n * a.d, a.d * b.d); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.n * b.d - b.n * a.d, a.d * b.d); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.n * b.n, a.d * b.d); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.n == 0) fail(ErrKind::DivisionByZero, "rational division by zero");
    return Rat(a.n * b.d, a.d * b.n);
  }
  Rat operator-() const { return Rat(-n, d); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.n * b.d < b.n * a.d; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.n * b.d <= b.n * a.d; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  bool is_integer() const { return d == 1; }

  // Smallest integer >= value.
  long long ceil_ll() const {
    long long q = n / d, r = n % d;
    return q + (r > 0 ? 1 : 0);
  }
  // Largest integer <= value.
  long long floor_ll() const {
    long long q = n / d, r = n % d;
    return q - (r < 0 ? 1 : 0);
  }

  std::string str() const {
    if (d == 1) return std::to_string(n);
    return std::to_string(n) + "/" + std::to_string(d);
  }
};

inline long long ipow(long long base, long long exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace drinfeld
