#include "drinfeld/laurent.hpp"

#include <algorithm>

namespace drinfeld {

LaurentElement::LaurentElement(FieldPtr F, long long level, std::map<long long, FFElem> terms,
                               std::optional<long long> prec)
    : F_(std::move(F)), level_(level), terms_(std::move(terms)), prec_(prec) {
  normalize();
}

void LaurentElement::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero() || (prec_ && it->first >= *prec_))
      it = terms_.erase(it);
    else
      ++it;
  }
  if (!F_) return;
  const long long p = F_->p();
  while (level_ > 0) {
    bool reducible = !prec_ || (*prec_ % p == 0);
    if (reducible)
      for (const auto& [n, c] : terms_)
        if (n % p != 0) { reducible = false; break; }
    if (!reducible) break;
    std::map<long long, FFElem> down;
    for (const auto& [n, c] : terms_) down.emplace(n / p, c);
    terms_ = std::move(down);
    if (prec_) *prec_ /= p;
    --level_;
  }
  if (terms_.empty() && !prec_) level_ = 0;
}

LaurentElement LaurentElement::at_level(long long target) const {
  if (target == level_) return *this;
  if (target < level_) fail(ErrKind::Internal, "at_level cannot lower the level");
  const long long f = ipow(F_->p(), target - level_);
  std::map<long long, FFElem> up;
  for (const auto& [n, c] : terms_) up.emplace(n * f, c);
  LaurentElement r;
  r.F_ = F_;
  r.level_ = target;
  r.terms_ = std::move(up);
  r.prec_ = prec_ ? std::optional<long long>(*prec_ * f) : std::nullopt;
  return r;  // deliberately not normalized: caller works at `target`
}

LaurentElement LaurentElement::zero(const FieldPtr& F) {
  return LaurentElement(F, 0, {}, std::nullopt);
}

LaurentElement LaurentElement::one(const FieldPtr& F) {
  return monomial(FFElem::one(F), 0, 0);
}

LaurentElement LaurentElement::from_ff(const FFElem& c) {
  return monomial(c, 0, 0);
}

LaurentElement LaurentElement::monomial(const FFElem& c, long long num, long long level) {
  std::map<long long, FFElem> t;
  if (!c.is_zero()) t.emplace(num, c);
  return LaurentElement(c.field(), level, std::move(t), std::nullopt);
}

LaurentElement LaurentElement::pi(const FieldPtr& F) {
  return monomial(FFElem::one(F), 1, 0);
}

LaurentElement LaurentElement::zero_with_prec(const FieldPtr& F, long long num, long long level) {
  return LaurentElement(F, level, {}, num);
}

std::optional<Rat> LaurentElement::prec() const {
  if (!prec_) return std::nullopt;
  return Rat(*prec_, ipow(F_->p(), level_));
}

std::optional<Rat> LaurentElement::vlb() const {
  if (!terms_.empty()) return Rat(terms_.begin()->first, ipow(F_->p(), level_));
  if (prec_) return Rat(*prec_, ipow(F_->p(), level_));
  return std::nullopt;  // exact zero: +infinity
}

namespace {

void require_same_field_l(const LaurentElement& a, const LaurentElement& b) {
  if (!a.field() || !b.field() || !a.field()->same_as(*b.field()))
    fail(ErrKind::FieldMismatch, "series operands over different fields");
}

}  // namespace

LaurentElement operator+(const LaurentElement& a, const LaurentElement& b) {
  require_same_field_l(a, b);
  const long long L = std::max(a.level(), b.level());
  // Work on raw copies at the common level.
  struct Raw {
    std::map<long long, FFElem> t;
    std::optional<long long> prec;
  };
  auto lift = [&](const LaurentElement& x) {
    Raw r;
    const long long f = ipow(x.field()->p(), L - x.level());
    for (const auto& [n, c] : x.terms()) r.t.emplace(n * f, c);
    r.prec = x.prec_num() ? std::optional<long long>(*x.prec_num() * f) : std::nullopt;
    return r;
  };
  Raw ra = lift(a), rb = lift(b);
  for (const auto& [n, c] : rb.t) {
    auto it = ra.t.find(n);
    if (it == ra.t.end())
      ra.t.emplace(n, c);
    else
      it->second = it->second + c;
  }
  std::optional<long long> prec;
  if (ra.prec && rb.prec)
    prec = std::min(*ra.prec, *rb.prec);
  else if (ra.prec)
    prec = ra.prec;
  else
    prec = rb.prec;
  return LaurentElement(a.field(), L, std::move(ra.t), prec);
}

LaurentElement LaurentElement::operator-() const {
  std::map<long long, FFElem> t;
  for (const auto& [n, c] : terms_) t.emplace(n, -c);
  return LaurentElement(F_, level_, std::move(t), prec_);
}

LaurentElement operator-(const LaurentElement& a, const LaurentElement& b) { return a + (-b); }

LaurentElement operator*(const FFElem& c, const LaurentElement& a) {
  if (!c.field()->same_as(*a.field()))
    fail(ErrKind::FieldMismatch, "scalar over different field");
  if (c.is_zero()) {
    // 0 * (x + O(..)) = 0 exactly.
    return LaurentElement::zero(a.field());
  }
  std::map<long long, FFElem> t;
  for (const auto& [n, cf] : a.terms()) t.emplace(n, c * cf);
  return LaurentElement(a.field(), a.level(), std::move(t), a.prec_num());
}

LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
  require_same_field_l(a, b);
  if (a.is_exact_zero() || b.is_exact_zero()) return LaurentElement::zero(a.field());
  const long long L = std::max(a.level(), b.level());
  const long long p = a.field()->p();
  const long long fa = ipow(p, L - a.level()), fb = ipow(p, L - b.level());

  // Valuation lower bounds and precisions in numerators at level L.
  auto scaled = [](const std::optional<long long>& v, long long f) {
    return v ? std::optional<long long>(*v * f) : std::nullopt;
  };
  std::optional<long long> pa = scaled(a.prec_num(), fa), pb = scaled(b.prec_num(), fb);
  std::optional<long long> va = a.terms().empty() ? pa : std::optional<long long>(a.terms().begin()->first * fa);
  std::optional<long long> vb = b.terms().empty() ? pb : std::optional<long long>(b.terms().begin()->first * fb);
  // prec(ab) = min(prec(a) + v(b), prec(b) + v(a)); missing pieces are +inf.
  std::optional<long long> prec;
  if (pa && vb) prec = *pa + *vb;
  if (pb && va) {
    long long q = *pb + *va;
    prec = prec ? std::min(*prec, q) : q;
  }
  std::map<long long, FFElem> t;
  for (const auto& [na, ca] : a.terms()) {
    for (const auto& [nb, cb] : b.terms()) {
      long long n = na * fa + nb * fb;
      if (prec && n >= *prec) continue;
      FFElem prod = ca * cb;
      auto it = t.find(n);
      if (it == t.end())
        t.emplace(n, prod);
      else
        it->second = it->second + prod;
    }
  }
  return LaurentElement(a.field(), L, std::move(t), prec);
}

bool operator==(const LaurentElement& a, const LaurentElement& b) {
  if (!a.field() || !b.field()) return !a.field() && !b.field();
  return a.field()->same_as(*b.field()) && a.level() == b.level() && a.prec_num() == b.prec_num() &&
         a.terms() == b.terms();
}

LaurentElement l_arith(const LaurentElement& a, const LaurentElement& b, LOp op) {
  switch (op) {
    case LOp::add: return a + b;
    case LOp::sub: return a - b;
    case LOp::mul: return a * b;
  }
  fail(ErrKind::Internal, "bad LOp");
}

LaurentElement p_power(const LaurentElement& a, long long n) {
  if (n == 0) return a;
  LaurentElement r;
  r.F_ = a.F_;
  if (n > 0) {
    const long long f = ipow(a.F_->p(), n);
    r.level_ = a.level_;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k * f, frobenius_pow(c, n));
    r.prec_ = a.prec_ ? std::optional<long long>(*a.prec_ * f) : std::nullopt;
  } else {
    r.level_ = a.level_ + (-n);
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, frobenius_pow(c, n));
    r.prec_ = a.prec_;
  }
  r.normalize();
  return r;
}

Rat valuation(const LaurentElement& a) {
  if (a.terms_.empty()) {
    if (a.is_exact())
      fail(ErrKind::ZeroValuation, "valuation of the zero series");
    fail(ErrKind::PrecisionExhausted,
         "element is zero to precision " + a.prec()->str() + "; valuation not determined");
  }
  return Rat(a.terms_.begin()->first, ipow(a.F_->p(), a.level_));
}

LaurentElement l_inv(const LaurentElement& a) {
  if (a.terms_.empty()) {
    if (a.is_exact()) fail(ErrKind::DivisionByZero, "inverse of the zero series");
    fail(ErrKind::PrecisionExhausted, "inverse of an element that is zero to precision");
  }
  const auto& [vnum, lead] = *a.terms_.begin();
  // c^{-1} pi^{-v} times the inverse of the unit part 1 + u.
  LaurentElement lead_inv = LaurentElement::monomial(lead.inv(), -vnum, a.level_);
  if (a.terms_.size() == 1) {
    if (a.is_exact()) return lead_inv;
    // prec(a^{-1}) = prec(a) - 2 v(a), assembled at a's own level
    std::map<long long, FFElem> t;
    t.emplace(-vnum, lead.inv());
    return LaurentElement(a.F_, a.level_, std::move(t), *a.prec_ - 2 * vnum);
  }
  if (a.is_exact())
    fail(ErrKind::PrecisionExhausted,
         "inverse of an exact multi-term series is an infinite series; truncate first");
  LaurentElement s = a * lead_inv;  // 1 + u, v(u) > 0, relative precision preserved
  LaurentElement g = LaurentElement::one(a.F_);
  g.prec_ = s.prec_num();
  g.level_ = s.level();
  {
    // keep g's key at the right level scale
    std::map<long long, FFElem> t;
    t.emplace(0, FFElem::one(a.F_));
    g.terms_ = std::move(t);
    g.normalize();
  }
  const LaurentElement one = LaurentElement::one(a.F_);
  for (int iter = 0; iter < 200; ++iter) {
    LaurentElement err = one - s * g;
    if (!err.has_known_terms()) break;  // zero to precision: done
    g = g + g * err;
  }
  LaurentElement err = one - s * g;
  if (err.has_known_terms())
    fail(ErrKind::Internal, "series inverse iteration failed to converge");
  return g * lead_inv;
}

LaurentElement principal_part(const LaurentElement& a) {
  if (a.prec_ && *a.prec_ < 0)
    fail(ErrKind::PrecisionExhausted,
         "principal part requires precision >= 0 (class mod O not determined)");
  std::map<long long, FFElem> t;
  for (const auto& [n, c] : a.terms_) {
    if (n < 0) t.emplace(n, c);
  }
  return LaurentElement(a.F_, a.level_, std::move(t), std::nullopt);
}

LaurentElement truncate_at(const LaurentElement& a, const Rat& bound) {
  // bound = num / p^j required
  long long den = bound.d;
  long long j = 0;
  const long long p = a.F_->p();
  while (den > 1) {
    if (den % p != 0) fail(ErrKind::Internal, "truncation bound denominator is not a p-power");
    den /= p;
    ++j;
  }
  const long long L = std::max(a.level_, j);
  LaurentElement r = a.at_level(L);
  long long num = bound.n * ipow(p, L - j);
  r.prec_ = r.prec_ ? std::min(*r.prec_, num) : num;
  r.normalize();
  return r;
}

FFElem residue(const LaurentElement& a) {
  for (const auto& [n, c] : a.terms_)
    if (n < 0) fail(ErrKind::Internal, "residue of a non-integral element");
  if (a.prec_ && *a.prec_ <= 0)
    fail(ErrKind::PrecisionExhausted, "residue requires precision > 0");
  auto it = a.terms_.find(0);
  return it == a.terms_.end() ? FFElem::zero(a.F_) : it->second;
}

bool is_integral_certified(const LaurentElement& a) {
  if (!a.terms().empty() && a.terms().begin()->first < 0) return false;
  if (a.prec_num() && *a.prec_num() < 0) return false;  // window could hide negative terms
  return true;
}

std::string LaurentElement::str() const {
  std::string s;
  const long long pe = ipow(F_ ? F_->p() : 2, level_);
  auto expstr = [&](long long n) {
    Rat q(n, pe);
    return q.str();
  };
  for (const auto& [n, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string cs = c.str();
    if (n == 0) {
      s += cs;
    } else {
      std::string base = "pi^" + expstr(n);
      if (c.is_one())
        s += base;
      else
        s += (cs.find('+') == std::string::npos ? cs : "(" + cs + ")") + "*" + base;
    }
  }
  if (prec_) {
    if (!s.empty()) s += " + ";
    s += "O(pi^" + expstr(*prec_) + ")";
  }
  if (s.empty()) s = "0";
  return s;
}

}  // namespace drinfeld
