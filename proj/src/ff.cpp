#include "drinfeld/ff.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

long long mod_ll(long long a, long long p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

// --- dense polynomial arithmetic over F_p (coefficient vectors, low->high) ---

void ptrim(std::vector<long long>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<long long> pmul(const std::vector<long long>& a, const std::vector<long long>& b, long long p) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = mod_ll(r[i + j] + a[i] * b[j], p);
  }
  ptrim(r);
  return r;
}

// a mod m, m monic
std::vector<long long> pmod(std::vector<long long> a, const std::vector<long long>& m, long long p) {
  ptrim(a);
  const long long dm = (long long)m.size() - 1;
  while ((long long)a.size() - 1 >= dm && !a.empty()) {
    long long lead = a.back();
    long long shift = (long long)a.size() - 1 - dm;
    if (lead != 0)
      for (long long i = 0; i <= dm; ++i)
        a[shift + i] = mod_ll(a[shift + i] - lead * m[i], p);
    a.pop_back();
    ptrim(a);
  }
  return a;
}

std::vector<long long> ppowmod(std::vector<long long> base, long long e,
                               const std::vector<long long>& m, long long p) {
  std::vector<long long> r{1};
  base = pmod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

std::vector<long long> pgcd(std::vector<long long> a, std::vector<long long> b, long long p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // make b monic for the reduction step
    long long lc = b.back();
    if (lc != 1) {
      // lc^{-1} mod p by Fermat
      long long inv = 1, base = lc, e = p - 2;
      while (e > 0) {
        if (e & 1) inv = mod_ll(inv * base, p);
        base = mod_ll(base * base, p);
        e >>= 1;
      }
      for (auto& c : b) c = mod_ll(c * inv, p);
    }
    a = pmod(std::move(a), b, p);
    std::swap(a, b);
  }
  ptrim(a);
  return a;
}

// x^{p^k} mod m via iterated Frobenius of the residue class of x.
std::vector<long long> frob_iterate(long long k, const std::vector<long long>& m, long long p) {
  std::vector<long long> cur{0, 1};  // x
  for (long long i = 0; i < k; ++i) cur = ppowmod(cur, p, m, p);
  return cur;
}

}  // namespace

Field::Field(long long p, std::vector<long long> g) : p_(p), g_(std::move(g)) {
  d_ = (long long)g_.size() - 1;
}

FieldPtr Field::make(long long p, std::vector<long long> g) {
  if (!is_prime_ll(p)) fail(ErrKind::ParseError, "p = " + std::to_string(p) + " is not prime");
  for (auto& c : g) c = mod_ll(c, p);
  ptrim(g);
  if (g.size() < 2) fail(ErrKind::ParseError, "field polynomial must have degree >= 1");
  if (g.back() != 1) fail(ErrKind::ParseError, "field polynomial must be monic");
  long long d = (long long)g.size() - 1;
  // Irreducibility: x^{p^d} = x mod g, and gcd(x^{p^{d/q}} - x, g) = 1 for
  // every prime q | d. Degree 1 is always irreducible (and the test below
  // would compare against the unreduced polynomial x).
  if (d > 1) {
    std::vector<long long> xq = frob_iterate(d, g, p);
    std::vector<long long> diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod_ll(diff[1] - 1, p);
    ptrim(diff);
    if (!diff.empty())
      fail(ErrKind::ParseError, "field polynomial is not irreducible (splitting test failed)");
    for (long long q = 2; q <= d; ++q) {
      if (d % q != 0) continue;
      bool qprime = is_prime_ll(q);
      if (!qprime) continue;
      std::vector<long long> xe = frob_iterate(d / q, g, p);
      std::vector<long long> df = xe;
      if (df.size() < 2) df.resize(2, 0);
      df[1] = mod_ll(df[1] - 1, p);
      ptrim(df);
      std::vector<long long> gg = pgcd(df, g, p);
      if ((long long)gg.size() - 1 != 0)
        fail(ErrKind::ParseError, "field polynomial is not irreducible (proper factor of degree <= " +
                                      std::to_string(d / q) + ")");
    }
  }
  return FieldPtr(new Field(p, std::move(g)));
}

FieldPtr Field::make(const FieldSpec& spec) { return make(spec.p, spec.g); }

FieldPtr Field::prime(long long p) { return make(p, {0, 1}); }

std::vector<long long> Field::reduce(std::vector<long long> a) const {
  a = pmod(std::move(a), g_, p_);
  a.resize(d_, 0);
  return a;
}

std::vector<long long> Field::add(const std::vector<long long>& a, const std::vector<long long>& b) const {
  std::vector<long long> r(d_);
  for (long long i = 0; i < d_; ++i) r[i] = mod_ll(a[i] + b[i], p_);
  return r;
}

std::vector<long long> Field::sub(const std::vector<long long>& a, const std::vector<long long>& b) const {
  std::vector<long long> r(d_);
  for (long long i = 0; i < d_; ++i) r[i] = mod_ll(a[i] - b[i], p_);
  return r;
}

std::vector<long long> Field::neg(const std::vector<long long>& a) const {
  std::vector<long long> r(d_);
  for (long long i = 0; i < d_; ++i) r[i] = mod_ll(-a[i], p_);
  return r;
}

std::vector<long long> Field::mul(const std::vector<long long>& a, const std::vector<long long>& b) const {
  return reduce(pmul(a, b, p_));
}

bool Field::is_zero(const std::vector<long long>& a) const {
  return std::all_of(a.begin(), a.end(), [](long long c) { return c == 0; });
}

std::vector<long long> Field::inv(const std::vector<long long>& a) const {
  if (is_zero(a)) fail(ErrKind::DivisionByZero, "inverse of zero in k");
  // Extended Euclid in F_p[x] against g: u*a + v*g = 1.
  std::vector<long long> r0 = g_, r1 = a, s0 = {}, s1 = {1};
  ptrim(r1);
  while (!r1.empty()) {
    // r0 = q*r1 + r2 with r1 made monic on the fly
    std::vector<long long> q;
    std::vector<long long> rem = r0;
    ptrim(rem);
    long long d1 = (long long)r1.size() - 1;
    long long lc1 = r1.back();
    long long lc1inv = 1;
    {
      long long base = lc1, e = p_ - 2;
      while (e > 0) {
        if (e & 1) lc1inv = mod_ll(lc1inv * base, p_);
        base = mod_ll(base * base, p_);
        e >>= 1;
      }
    }
    while ((long long)rem.size() - 1 >= d1 && !rem.empty()) {
      long long sh = (long long)rem.size() - 1 - d1;
      long long c = mod_ll(rem.back() * lc1inv, p_);
      if ((long long)q.size() < sh + 1) q.resize(sh + 1, 0);
      q[sh] = mod_ll(q[sh] + c, p_);
      for (long long i = 0; i <= d1; ++i)
        rem[sh + i] = mod_ll(rem[sh + i] - c * r1[i], p_);
      ptrim(rem);
    }
    std::vector<long long> s2 = s0;
    std::vector<long long> qs1 = pmul(q, s1, p_);
    size_t n = std::max(s2.size(), qs1.size());
    s2.resize(n, 0);
    qs1.resize(n, 0);
    for (size_t i = 0; i < n; ++i) s2[i] = mod_ll(s2[i] - qs1[i], p_);
    ptrim(s2);
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  // r0 is the gcd (a nonzero constant since g is irreducible and a != 0).
  if ((long long)r0.size() != 1)
    fail(ErrKind::Internal, "xgcd against irreducible modulus returned non-unit gcd");
  long long c = r0[0], cinv = 1;
  {
    long long base = c, e = p_ - 2;
    while (e > 0) {
      if (e & 1) cinv = mod_ll(cinv * base, p_);
      base = mod_ll(base * base, p_);
      e >>= 1;
    }
  }
  for (auto& x : s0) x = mod_ll(x * cinv, p_);
  s0.resize(d_, 0);
  return reduce(std::move(s0));
}

// --- FFElem ---

FFElem::FFElem(FieldPtr F, std::vector<long long> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
  if (!F_) fail(ErrKind::Internal, "FFElem with null field");
  if ((long long)c_.size() != F_->d())
    fail(ErrKind::ParseError, "element coefficient list must have length d = " + std::to_string(F_->d()));
  for (auto& x : c_) x = mod_ll(x, F_->p());
}

FFElem FFElem::zero(const FieldPtr& F) { return FFElem(F, std::vector<long long>(F->d(), 0)); }

FFElem FFElem::one(const FieldPtr& F) {
  std::vector<long long> c(F->d(), 0);
  c[0] = 1;
  return FFElem(F, std::move(c));
}

FFElem FFElem::gen(const FieldPtr& F) {
  if (F->d() == 1) fail(ErrKind::ParseError, "prime field has no generator z");
  std::vector<long long> c(F->d(), 0);
  c[1] = 1;
  return FFElem(F, std::move(c));
}

FFElem FFElem::from_int(const FieldPtr& F, long long n) {
  std::vector<long long> c(F->d(), 0);
  c[0] = mod_ll(n, F->p());
  return FFElem(F, std::move(c));
}

bool FFElem::is_zero() const { return F_->is_zero(c_); }

bool FFElem::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FFElem::in_prime_field() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

long long FFElem::as_int() const {
  if (!in_prime_field()) fail(ErrKind::Internal, "as_int on element outside F_p");
  return c_[0];
}

void require_same_field(const FFElem& a, const FFElem& b) {
  if (!a.field() || !b.field() || !a.field()->same_as(*b.field()))
    fail(ErrKind::FieldMismatch, "operands over different fields");
}

FFElem operator+(const FFElem& a, const FFElem& b) {
  require_same_field(a, b);
  return FFElem(a.field(), a.field()->add(a.coeffs(), b.coeffs()));
}

FFElem operator-(const FFElem& a, const FFElem& b) {
  require_same_field(a, b);
  return FFElem(a.field(), a.field()->sub(a.coeffs(), b.coeffs()));
}

FFElem FFElem::operator-() const { return FFElem(F_, F_->neg(c_)); }

FFElem operator*(const FFElem& a, const FFElem& b) {
  require_same_field(a, b);
  return FFElem(a.field(), a.field()->mul(a.coeffs(), b.coeffs()));
}

FFElem FFElem::inv() const {
  if (is_zero()) fail(ErrKind::DivisionByZero, "division by zero in k");
  return FFElem(F_, F_->inv(c_));
}

FFElem operator/(const FFElem& a, const FFElem& b) {
  require_same_field(a, b);
  return a * b.inv();
}

bool operator==(const FFElem& a, const FFElem& b) {
  return a.field() && b.field() && a.field()->same_as(*b.field()) && a.coeffs() == b.coeffs();
}

FFElem FFElem::pow(unsigned long long e) const {
  FFElem r = one(F_), base = *this;
  while (e > 0) {
    if (e & 1ULL) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FFElem frobenius_pow(const FFElem& a, long long n) {
  const long long d = a.field()->d();
  long long m = ((n % d) + d) % d;
  FFElem r = a;
  for (long long i = 0; i < m; ++i) r = r.pow((unsigned long long)a.field()->p());
  return r;
}

FFElem ff_arith(const FFElem& a, const FFElem& b, FFOp op) {
  switch (op) {
    case FFOp::add: return a + b;
    case FFOp::sub: return a - b;
    case FFOp::mul: return a * b;
    case FFOp::div: return a / b;
  }
  fail(ErrKind::Internal, "bad FFOp");
}

std::vector<long long> minpoly_over_prime(const FFElem& a) {
  const FieldPtr& F = a.field();
  // Orbit of a under Frobenius; its length m divides d.
  std::vector<FFElem> orbit{a};
  FFElem cur = frobenius_pow(a, 1);
  while (!(cur == a)) {
    orbit.push_back(cur);
    cur = frobenius_pow(cur, 1);
  }
  // Expand prod (X - a^{p^i}) with coefficients in k; they must land in F_p.
  std::vector<FFElem> poly{FFElem::one(F)};
  for (const FFElem& root : orbit) {
    std::vector<FFElem> next(poly.size() + 1, FFElem::zero(F));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - root * poly[i];
    }
    // next is ordered low->high after the shift-and-subtract above; rebuild:
    poly = std::move(next);
  }
  std::vector<long long> out;
  out.reserve(poly.size());
  for (const FFElem& c : poly) {
    if (!c.in_prime_field())
      fail(ErrKind::Internal, "minimal polynomial expansion left k \\ F_p coefficient");
    out.push_back(c.as_int());
  }
  return out;  // monic, degree = |orbit|
}

std::string FFElem::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (long long i = F_->d() - 1; i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c_[i]);
    } else {
      if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
      s += (i == 1) ? "z" : ("z^" + std::to_string(i));
    }
  }
  return s;
}

}  // namespace drinfeld
