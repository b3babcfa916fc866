// Exact ground-field arithmetic: Q, F_p (p >= 5), one quadratic etale layer,
// and iterated-Laurent monomial towers.  All values are immutable; every
// operation is a pure function returning canonical-form results.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bioct {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class FieldErrorCode {
  DivisionByZero,
  MixedFields,
  NonMonomialSum,
  ZeroInput,
  UnsupportedField,
  ParseError,
  NotANonsquare,
  BadDescriptor,
};

struct FieldError : std::runtime_error {
  FieldErrorCode code;
  FieldError(FieldErrorCode c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

struct Scalar;
struct FieldDesc;
using FieldPtr = std::shared_ptr<const FieldDesc>;

enum class FieldKind { Q, Fp, Quad, Laurent };

struct FieldDesc {
  FieldKind kind;
  std::uint64_t p = 0;                  // Fp
  FieldPtr base;                        // Quad / Laurent
  std::shared_ptr<const Scalar> d;      // Quad: the nonsquare
  std::vector<std::string> vars;        // Laurent
};

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

struct QuadVal {
  std::shared_ptr<const Scalar> a, b;  // a + b*sqrt(d)
};

struct LaurVal {
  std::shared_ptr<const Scalar> coeff;  // nonzero base-field scalar (zero scalar
                                        // is represented with coeff zero, exps 0)
  std::vector<long long> exps;          // one exponent per tower variable
};

struct Scalar {
  FieldPtr F;
  std::variant<Rat, std::uint64_t, QuadVal, LaurVal> v;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b);
inline bool scalar_eq(const Scalar& x, const Scalar& y);

inline bool same_field_desc(const FieldDesc& a, const FieldDesc& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FieldKind::Q: return true;
    case FieldKind::Fp: return a.p == b.p;
    case FieldKind::Quad: {
      if (!same_field(a.base, b.base)) return false;
      return scalar_eq(*a.d, *b.d);
    }
    case FieldKind::Laurent:
      return same_field(a.base, b.base) && a.vars == b.vars;
  }
  return false;
}

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_field_desc(*a, *b);
}

// Factories ---------------------------------------------------------------

inline FieldPtr field_Q() {
  static FieldPtr f = [] {
    auto d = std::make_shared<FieldDesc>();
    d->kind = FieldKind::Q;
    return d;
  }();
  return f;
}

inline FieldPtr field_Fp(std::uint64_t p) {
  if (p < 5) throw FieldError(FieldErrorCode::BadDescriptor,
                              "prime field characteristic must be >= 5");
  // cheap primality check (desk-scale p)
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0)
      throw FieldError(FieldErrorCode::BadDescriptor, "p is not prime");
  auto f = std::make_shared<FieldDesc>();
  f->kind = FieldKind::Fp;
  f->p = p;
  return f;
}

inline bool is_square(const Scalar& x);  // fwd

inline FieldPtr field_quad(FieldPtr base, const Scalar& d) {
  if (base->kind == FieldKind::Quad || base->kind == FieldKind::Laurent)
    throw FieldError(FieldErrorCode::BadDescriptor,
                     "quadratic layer allowed only over Q or F_p");
  if (is_square(d))
    throw FieldError(FieldErrorCode::NotANonsquare,
                     "quadratic extension requires a nonsquare d");
  auto f = std::make_shared<FieldDesc>();
  f->kind = FieldKind::Quad;
  f->base = std::move(base);
  f->d = std::make_shared<Scalar>(d);
  return f;
}

inline FieldPtr field_laurent(FieldPtr base, std::vector<std::string> vars) {
  if (base->kind != FieldKind::Q && base->kind != FieldKind::Fp)
    throw FieldError(FieldErrorCode::BadDescriptor,
                     "Laurent tower base must be Q or F_p");
  if (vars.empty())
    throw FieldError(FieldErrorCode::BadDescriptor, "empty variable list");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw FieldError(FieldErrorCode::BadDescriptor, "duplicate variable");
  auto f = std::make_shared<FieldDesc>();
  f->kind = FieldKind::Laurent;
  f->base = std::move(base);
  f->vars = std::move(vars);
  return f;
}

// Construction of scalars --------------------------------------------------

inline Scalar make_rat(const Rat& r) { return Scalar{field_Q(), r}; }
inline Scalar make_rat(long long n, long long den = 1) {
  return Scalar{field_Q(), Rat(n, den)};
}

inline std::uint64_t fp_reduce(long long n, std::uint64_t p) {
  long long m = n % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  return static_cast<std::uint64_t>(m);
}

inline Scalar make_fp(FieldPtr F, long long n) {
  return Scalar{F, fp_reduce(n, F->p)};
}

inline Scalar scalar_zero(const FieldPtr& F);
inline Scalar scalar_one(const FieldPtr& F);
inline Scalar scalar_int(const FieldPtr& F, long long n);

inline Scalar make_quad(FieldPtr F, const Scalar& a, const Scalar& b) {
  if (F->kind != FieldKind::Quad)
    throw FieldError(FieldErrorCode::BadDescriptor, "not a quadratic field");
  if (!same_field(a.F, F->base) || !same_field(b.F, F->base))
    throw FieldError(FieldErrorCode::MixedFields, "quad components off-base");
  return Scalar{F, QuadVal{std::make_shared<Scalar>(a), std::make_shared<Scalar>(b)}};
}

inline Scalar make_laurent(FieldPtr F, const Scalar& coeff,
                           std::vector<long long> exps) {
  if (F->kind != FieldKind::Laurent)
    throw FieldError(FieldErrorCode::BadDescriptor, "not a Laurent tower");
  if (!same_field(coeff.F, F->base))
    throw FieldError(FieldErrorCode::MixedFields, "coefficient off-base");
  if (exps.size() != F->vars.size())
    throw FieldError(FieldErrorCode::BadDescriptor, "exponent arity mismatch");
  return Scalar{F, LaurVal{std::make_shared<Scalar>(coeff), std::move(exps)}};
}

// Basic predicates ---------------------------------------------------------

inline bool scalar_is_zero(const Scalar& x) {
  switch (x.F->kind) {
    case FieldKind::Q: return std::get<Rat>(x.v) == 0;
    case FieldKind::Fp: return std::get<std::uint64_t>(x.v) == 0;
    case FieldKind::Quad: {
      const auto& q = std::get<QuadVal>(x.v);
      return scalar_is_zero(*q.a) && scalar_is_zero(*q.b);
    }
    case FieldKind::Laurent:
      return scalar_is_zero(*std::get<LaurVal>(x.v).coeff);
  }
  return false;
}

inline bool scalar_eq(const Scalar& x, const Scalar& y) {
  if (!same_field(x.F, y.F)) return false;
  switch (x.F->kind) {
    case FieldKind::Q: return std::get<Rat>(x.v) == std::get<Rat>(y.v);
    case FieldKind::Fp:
      return std::get<std::uint64_t>(x.v) == std::get<std::uint64_t>(y.v);
    case FieldKind::Quad: {
      const auto& a = std::get<QuadVal>(x.v);
      const auto& b = std::get<QuadVal>(y.v);
      return scalar_eq(*a.a, *b.a) && scalar_eq(*a.b, *b.b);
    }
    case FieldKind::Laurent: {
      const auto& a = std::get<LaurVal>(x.v);
      const auto& b = std::get<LaurVal>(y.v);
      if (scalar_is_zero(x) && scalar_is_zero(y)) return true;
      return scalar_eq(*a.coeff, *b.coeff) && a.exps == b.exps;
    }
  }
  return false;
}

inline Scalar scalar_zero(const FieldPtr& F) { return scalar_int(F, 0); }
inline Scalar scalar_one(const FieldPtr& F) { return scalar_int(F, 1); }

inline Scalar scalar_int(const FieldPtr& F, long long n) {
  switch (F->kind) {
    case FieldKind::Q: return Scalar{F, Rat(n)};
    case FieldKind::Fp: return Scalar{F, fp_reduce(n, F->p)};
    case FieldKind::Quad:
      return make_quad(F, scalar_int(F->base, n), scalar_int(F->base, 0));
    case FieldKind::Laurent:
      return make_laurent(F, scalar_int(F->base, n),
                          std::vector<long long>(F->vars.size(), 0));
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

// Arithmetic ---------------------------------------------------------------

inline void check_same(const Scalar& x, const Scalar& y) {
  if (!same_field(x.F, y.F))
    throw FieldError(FieldErrorCode::MixedFields, "operands in different fields");
}

inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (static_cast<unsigned __int128>(a) * b) % p;
}

inline std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw FieldError(FieldErrorCode::DivisionByZero, "inverse of 0");
  return fp_pow(a, p - 2, p);
}

inline Scalar scalar_add(const Scalar& x, const Scalar& y);
inline Scalar scalar_mul(const Scalar& x, const Scalar& y);
inline Scalar scalar_neg(const Scalar& x);
inline Scalar scalar_inv(const Scalar& x);

inline Scalar scalar_add(const Scalar& x, const Scalar& y) {
  check_same(x, y);
  switch (x.F->kind) {
    case FieldKind::Q:
      return Scalar{x.F, std::get<Rat>(x.v) + std::get<Rat>(y.v)};
    case FieldKind::Fp: {
      std::uint64_t s = std::get<std::uint64_t>(x.v) + std::get<std::uint64_t>(y.v);
      if (s >= x.F->p) s -= x.F->p;
      return Scalar{x.F, s};
    }
    case FieldKind::Quad: {
      const auto& a = std::get<QuadVal>(x.v);
      const auto& b = std::get<QuadVal>(y.v);
      return make_quad(x.F, scalar_add(*a.a, *b.a), scalar_add(*a.b, *b.b));
    }
    case FieldKind::Laurent: {
      const auto& a = std::get<LaurVal>(x.v);
      const auto& b = std::get<LaurVal>(y.v);
      if (scalar_is_zero(x)) return y;
      if (scalar_is_zero(y)) return x;
      if (a.exps != b.exps)
        throw FieldError(FieldErrorCode::NonMonomialSum,
                         "monomial sum with distinct exponent vectors");
      Scalar c = scalar_add(*a.coeff, *b.coeff);
      if (scalar_is_zero(c)) return scalar_zero(x.F);
      return make_laurent(x.F, c, a.exps);
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

inline Scalar scalar_neg(const Scalar& x) {
  switch (x.F->kind) {
    case FieldKind::Q: return Scalar{x.F, -std::get<Rat>(x.v)};
    case FieldKind::Fp: {
      std::uint64_t a = std::get<std::uint64_t>(x.v);
      return Scalar{x.F, a == 0 ? 0 : x.F->p - a};
    }
    case FieldKind::Quad: {
      const auto& q = std::get<QuadVal>(x.v);
      return make_quad(x.F, scalar_neg(*q.a), scalar_neg(*q.b));
    }
    case FieldKind::Laurent: {
      const auto& l = std::get<LaurVal>(x.v);
      if (scalar_is_zero(x)) return x;
      return make_laurent(x.F, scalar_neg(*l.coeff), l.exps);
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

inline Scalar scalar_sub(const Scalar& x, const Scalar& y) {
  return scalar_add(x, scalar_neg(y));
}

inline Scalar scalar_mul(const Scalar& x, const Scalar& y) {
  check_same(x, y);
  switch (x.F->kind) {
    case FieldKind::Q:
      return Scalar{x.F, std::get<Rat>(x.v) * std::get<Rat>(y.v)};
    case FieldKind::Fp:
      return Scalar{x.F, fp_mul(std::get<std::uint64_t>(x.v),
                                std::get<std::uint64_t>(y.v), x.F->p)};
    case FieldKind::Quad: {
      const auto& a = std::get<QuadVal>(x.v);
      const auto& b = std::get<QuadVal>(y.v);
      const Scalar& d = *x.F->d;
      // (a1 + a2 s)(b1 + b2 s) = a1 b1 + d a2 b2 + (a1 b2 + a2 b1) s
      Scalar re = scalar_add(scalar_mul(*a.a, *b.a),
                             scalar_mul(d, scalar_mul(*a.b, *b.b)));
      Scalar im = scalar_add(scalar_mul(*a.a, *b.b), scalar_mul(*a.b, *b.a));
      return make_quad(x.F, re, im);
    }
    case FieldKind::Laurent: {
      const auto& a = std::get<LaurVal>(x.v);
      const auto& b = std::get<LaurVal>(y.v);
      if (scalar_is_zero(x) || scalar_is_zero(y)) return scalar_zero(x.F);
      std::vector<long long> e(a.exps.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps[i] + b.exps[i];
      return make_laurent(x.F, scalar_mul(*a.coeff, *b.coeff), std::move(e));
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

inline Scalar scalar_inv(const Scalar& x) {
  if (scalar_is_zero(x))
    throw FieldError(FieldErrorCode::DivisionByZero, "inverse of 0");
  switch (x.F->kind) {
    case FieldKind::Q: return Scalar{x.F, 1 / std::get<Rat>(x.v)};
    case FieldKind::Fp:
      return Scalar{x.F, fp_inv(std::get<std::uint64_t>(x.v), x.F->p)};
    case FieldKind::Quad: {
      const auto& q = std::get<QuadVal>(x.v);
      const Scalar& d = *x.F->d;
      // 1/(a+bs) = (a-bs)/(a^2 - d b^2)
      Scalar n = scalar_sub(scalar_mul(*q.a, *q.a),
                            scalar_mul(d, scalar_mul(*q.b, *q.b)));
      Scalar ni = scalar_inv(n);
      return make_quad(x.F, scalar_mul(*q.a, ni),
                       scalar_neg(scalar_mul(*q.b, ni)));
    }
    case FieldKind::Laurent: {
      const auto& l = std::get<LaurVal>(x.v);
      std::vector<long long> e(l.exps.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = -l.exps[i];
      return make_laurent(x.F, scalar_inv(*l.coeff), std::move(e));
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

inline Scalar scalar_div(const Scalar& x, const Scalar& y) {
  return scalar_mul(x, scalar_inv(y));
}

// ---------------------------------------------------------------------------
// Square classes
// ---------------------------------------------------------------------------

// Factorization helpers over Z (trial division + Pollard rho); inputs are
// desk-scale, so this terminates quickly.
inline BigInt pollard_rho(const BigInt& n) {
  if (n % 2 == 0) return 2;
  BigInt x = 2, y = 2, d = 1, c = 1;
  auto f = [&](const BigInt& v) { return (v * v + c) % n; };
  while (true) {
    x = 2; y = 2; d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = boost::multiprecision::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
    ++c;
  }
}

inline bool miller_rabin(const BigInt& n) {
  if (n < 2) return false;
  for (int sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == sp) return true;
    if (n % sp == 0) return false;
  }
  BigInt d = n - 1;
  unsigned r = 0;
  while (d % 2 == 0) { d /= 2; ++r; }
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    BigInt x = boost::multiprecision::powm(BigInt(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (unsigned i = 1; i < r; ++i) {
      x = (x * x) % n;
      if (x == n - 1) { comp = false; break; }
    }
    if (comp) return false;
  }
  return true;
}

inline void factor_into(BigInt n, std::vector<std::pair<BigInt, unsigned>>& out) {
  if (n <= 1) return;
  for (BigInt q = 2; q * q <= n && q < 100000; ++q) {
    if (n % q == 0) {
      unsigned e = 0;
      while (n % q == 0) { n /= q; ++e; }
      out.emplace_back(q, e);
    }
  }
  if (n == 1) return;
  if (miller_rabin(n)) {
    out.emplace_back(n, 1u);
    return;
  }
  BigInt d = pollard_rho(n);
  std::vector<std::pair<BigInt, unsigned>> sub;
  factor_into(d, sub);
  factor_into(n / d, sub);
  // merge
  for (auto& [p, e] : sub) {
    bool found = false;
    for (auto& [p2, e2] : out)
      if (p2 == p) { e2 += e; found = true; }
    if (!found) out.emplace_back(p, e);
  }
}

// sign * squarefree positive integer representing x mod squares (x in Q*).
inline BigInt rat_squarefree_rep(const Rat& x) {
  if (x == 0) throw FieldError(FieldErrorCode::ZeroInput, "square class of 0");
  BigInt n = boost::multiprecision::numerator(x) *
             boost::multiprecision::denominator(x);
  int sign = n < 0 ? -1 : 1;
  if (n < 0) n = -n;
  std::vector<std::pair<BigInt, unsigned>> fac;
  factor_into(n, fac);
  BigInt rep = 1;
  for (auto& [p, e] : fac)
    if (e % 2 == 1) rep *= p;
  return sign < 0 ? -rep : rep;
}

// Odd-prime factors of the squarefree representative (used by Hilbert symbols).
inline std::vector<BigInt> odd_support(const Rat& x) {
  BigInt r = rat_squarefree_rep(x);
  if (r < 0) r = -r;
  std::vector<std::pair<BigInt, unsigned>> fac;
  factor_into(r, fac);
  std::vector<BigInt> out;
  for (auto& [p, e] : fac)
    if (p != 2) out.push_back(p);
  return out;
}

inline std::uint64_t fp_least_nonresidue(std::uint64_t p) {
  for (std::uint64_t a = 2; a < p; ++a)
    if (fp_pow(a, (p - 1) / 2, p) == p - 1) return a;
  throw FieldError(FieldErrorCode::BadDescriptor, "no nonresidue found");
}

inline bool is_square(const Scalar& x) {
  if (scalar_is_zero(x))
    throw FieldError(FieldErrorCode::ZeroInput, "square test of 0");
  switch (x.F->kind) {
    case FieldKind::Q: {
      const Rat& r = std::get<Rat>(x.v);
      if (r < 0) return false;
      return rat_squarefree_rep(r) == 1;
    }
    case FieldKind::Fp:
      return fp_pow(std::get<std::uint64_t>(x.v), (x.F->p - 1) / 2, x.F->p) == 1;
    case FieldKind::Quad: {
      const auto& q = std::get<QuadVal>(x.v);
      const Scalar& d = *x.F->d;
      const Scalar& a = *q.a;
      const Scalar& b = *q.b;
      if (scalar_is_zero(b)) {
        // a is a square in k(sqrt d) iff a or a*d is a square in k
        if (is_square(a)) return true;
        return is_square(scalar_mul(a, d));
      }
      // a + b sqrt(d) is a square iff N = a^2 - d b^2 is a square r^2 in k and
      // (a + r)/2 or (a - r)/2 is a square in k.
      Scalar N = scalar_sub(scalar_mul(a, a), scalar_mul(d, scalar_mul(b, b)));
      if (scalar_is_zero(N)) return false;  // nonzero x with zero norm impossible in a field
      if (!is_square(N)) return false;
      // find r with r^2 = N
      Scalar r = scalar_zero(x.F->base);
      if (x.F->base->kind == FieldKind::Q) {
        Rat n = std::get<Rat>(N.v);
        BigInt num = boost::multiprecision::sqrt(boost::multiprecision::numerator(n));
        BigInt den = boost::multiprecision::sqrt(boost::multiprecision::denominator(n));
        r = Scalar{x.F->base, Rat(num, den)};
      } else {
        // F_p: Tonelli-Shanks via exhaustive-free approach (p odd): use pow for
        // p % 4 == 3, else search (desk-scale p).
        std::uint64_t p = x.F->base->p;
        std::uint64_t n = std::get<std::uint64_t>(N.v);
        std::uint64_t rr = 0;
        if (p % 4 == 3) rr = fp_pow(n, (p + 1) / 4, p);
        else {
          for (std::uint64_t t = 1; t < p; ++t)
            if (fp_mul(t, t, p) == n) { rr = t; break; }
        }
        r = Scalar{x.F->base, rr};
      }
      Scalar two_inv = scalar_inv(scalar_int(x.F->base, 2));
      Scalar h1 = scalar_mul(scalar_add(a, r), two_inv);
      Scalar h2 = scalar_mul(scalar_sub(a, r), two_inv);
      if (!scalar_is_zero(h1) && is_square(h1)) return true;
      if (!scalar_is_zero(h2) && is_square(h2)) return true;
      return false;
    }
    case FieldKind::Laurent: {
      const auto& l = std::get<LaurVal>(x.v);
      for (long long e : l.exps)
        if (e % 2 != 0) return false;
      return is_square(*l.coeff);
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

// Canonical square-class representative.
inline Scalar square_class(const Scalar& x) {
  if (scalar_is_zero(x))
    throw FieldError(FieldErrorCode::ZeroInput, "square class of 0");
  switch (x.F->kind) {
    case FieldKind::Q:
      return Scalar{x.F, Rat(rat_squarefree_rep(std::get<Rat>(x.v)))};
    case FieldKind::Fp: {
      if (is_square(x)) return scalar_one(x.F);
      return Scalar{x.F, fp_least_nonresidue(x.F->p)};
    }
    case FieldKind::Quad: {
      // No perfect canonical form exists in general; normalize lightly:
      // squares map to 1, elements of the base map to their base class, and
      // otherwise the element itself is returned (class equality must use
      // square_class_eq below).
      if (is_square(x)) return scalar_one(x.F);
      const auto& q = std::get<QuadVal>(x.v);
      if (scalar_is_zero(*q.b)) {
        Scalar c = square_class(*q.a);
        return make_quad(x.F, c, scalar_zero(x.F->base));
      }
      return x;
    }
    case FieldKind::Laurent: {
      const auto& l = std::get<LaurVal>(x.v);
      std::vector<long long> par(l.exps.size());
      for (std::size_t i = 0; i < par.size(); ++i)
        par[i] = ((l.exps[i] % 2) + 2) % 2;
      return make_laurent(x.F, square_class(*l.coeff), std::move(par));
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

inline bool square_class_eq(const Scalar& x, const Scalar& y) {
  check_same(x, y);
  return is_square(scalar_mul(x, y));
}

// ---------------------------------------------------------------------------
// Quadratic etale algebras E/k (split k x k, or the field k(sqrt d))
// ---------------------------------------------------------------------------

struct QuadraticEtale {
  FieldPtr base;
  FieldPtr ext;  // null <=> split (k x k)
  bool split() const { return !ext; }
};

inline QuadraticEtale etale_split(FieldPtr base) {
  return QuadraticEtale{std::move(base), nullptr};
}

inline QuadraticEtale etale_field(FieldPtr base, const Scalar& d) {
  auto ext = field_quad(base, d);
  return QuadraticEtale{std::move(base), std::move(ext)};
}

// Elements: for split E, the pair (a, b) in k x k; for field E, the single
// scalar a + b sqrt(d) (second component unused).
struct EtaleElt {
  Scalar a, b;
};

inline EtaleElt etale_elt(const QuadraticEtale& E, const Scalar& x,
                          const Scalar& y) {
  if (E.split()) return EtaleElt{x, y};
  return EtaleElt{make_quad(E.ext, x, y), scalar_zero(E.base)};
}

inline EtaleElt etale_conj(const QuadraticEtale& E, const EtaleElt& x) {
  if (E.split()) return EtaleElt{x.b, x.a};
  const auto& q = std::get<QuadVal>(x.a.v);
  return EtaleElt{make_quad(E.ext, *q.a, scalar_neg(*q.b)), x.b};
}

inline Scalar etale_norm(const QuadraticEtale& E, const EtaleElt& x) {
  if (E.split()) return scalar_mul(x.a, x.b);
  const auto& q = std::get<QuadVal>(x.a.v);
  return scalar_sub(scalar_mul(*q.a, *q.a),
                    scalar_mul(*E.ext->d, scalar_mul(*q.b, *q.b)));
}

inline Scalar etale_trace(const QuadraticEtale& E, const EtaleElt& x) {
  if (E.split()) return scalar_add(x.a, x.b);
  const auto& q = std::get<QuadVal>(x.a.v);
  return scalar_add(*q.a, *q.a);
}

// ---------------------------------------------------------------------------
// Serialization (string forms per the external-interface schemas)
// ---------------------------------------------------------------------------

inline std::string scalar_to_string(const Scalar& x) {
  switch (x.F->kind) {
    case FieldKind::Q: {
      const Rat& r = std::get<Rat>(x.v);
      std::ostringstream os;
      os << boost::multiprecision::numerator(r);
      if (boost::multiprecision::denominator(r) != 1)
        os << "/" << boost::multiprecision::denominator(r);
      return os.str();
    }
    case FieldKind::Fp:
      return std::to_string(std::get<std::uint64_t>(x.v));
    case FieldKind::Quad: {
      const auto& q = std::get<QuadVal>(x.v);
      return scalar_to_string(*q.a) + "+" + scalar_to_string(*q.b) + "*sqrt";
    }
    case FieldKind::Laurent: {
      const auto& l = std::get<LaurVal>(x.v);
      std::string s = scalar_to_string(*l.coeff);
      if (scalar_is_zero(x)) return s;
      for (std::size_t i = 0; i < l.exps.size(); ++i) {
        if (l.exps[i] == 0) continue;
        s += "*" + x.F->vars[i];
        if (l.exps[i] != 1) s += "^" + std::to_string(l.exps[i]);
      }
      return s;
    }
  }
  return "?";
}

// Parse a scalar from its string form in the given field.
inline Scalar scalar_from_string(const FieldPtr& F, const std::string& str);

namespace detail {
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw FieldError(FieldErrorCode::ParseError, "bad rational: " + s);
  }
}
// split "a+b*sqrt" at the top-level '+' preceding the sqrt term; supports a
// leading '-' and a "+-" combination.
inline std::pair<std::string, std::string> split_quad(const std::string& s) {
  auto pos = s.rfind("*sqrt");
  if (pos == std::string::npos || pos + 5 != s.size())
    throw FieldError(FieldErrorCode::ParseError, "bad quad scalar: " + s);
  std::string head = s.substr(0, pos);  // "a+b"
  // find the separating '+' or '-' (not at index 0, not following e/^)
  for (std::size_t i = head.size(); i-- > 1;) {
    char c = head[i];
    if (c == '+') return {head.substr(0, i), head.substr(i + 1)};
    if (c == '-' && head[i - 1] != '+' && head[i - 1] != '-' &&
        head[i - 1] != '/' && head[i - 1] != '*')
      return {head.substr(0, i), head.substr(i)};
  }
  throw FieldError(FieldErrorCode::ParseError, "bad quad scalar: " + s);
}
}  // namespace detail

inline Scalar scalar_from_string(const FieldPtr& F, const std::string& str) {
  switch (F->kind) {
    case FieldKind::Q:
      return Scalar{F, detail::parse_rat(str)};
    case FieldKind::Fp: {
      try {
        long long n = std::stoll(str);
        return make_fp(F, n);
      } catch (const std::exception&) {
        throw FieldError(FieldErrorCode::ParseError, "bad residue: " + str);
      }
    }
    case FieldKind::Quad: {
      if (str.find("sqrt") == std::string::npos) {
        Scalar a = scalar_from_string(F->base, str);
        return make_quad(F, a, scalar_zero(F->base));
      }
      auto [as, bs] = detail::split_quad(str);
      return make_quad(F, scalar_from_string(F->base, as),
                       scalar_from_string(F->base, bs));
    }
    case FieldKind::Laurent: {
      // coeff [*var[^exp]]*
      std::vector<long long> exps(F->vars.size(), 0);
      std::string s = str;
      std::vector<std::string> parts;
      std::size_t start = 0;
      while (true) {
        auto pos = s.find('*', start);
        if (pos == std::string::npos) {
          parts.push_back(s.substr(start));
          break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
      }
      std::string coeff = parts.empty() ? "1" : parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) {
        std::string p = parts[i];
        std::string var = p;
        long long e = 1;
        auto caret = p.find('^');
        if (caret != std::string::npos) {
          var = p.substr(0, caret);
          try {
            e = std::stoll(p.substr(caret + 1));
          } catch (const std::exception&) {
            throw FieldError(FieldErrorCode::ParseError, "bad exponent: " + p);
          }
        }
        bool found = false;
        for (std::size_t v = 0; v < F->vars.size(); ++v)
          if (F->vars[v] == var) {
            exps[v] += e;
            found = true;
            break;
          }
        if (!found)
          throw FieldError(FieldErrorCode::ParseError, "unknown variable: " + var);
      }
      return make_laurent(F, scalar_from_string(F->base, coeff), std::move(exps));
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

// Deterministic pseudo-random scalars for property tests (splitmix64 core).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Bounded-height random scalar, nonzero if require_nonzero.
inline Scalar random_scalar(const FieldPtr& F, Rng& rng, bool require_nonzero,
                            long long height = 9) {
  while (true) {
    Scalar s = scalar_zero(F);
    switch (F->kind) {
      case FieldKind::Q:
        s = Scalar{F, Rat(rng.range(-height, height),
                          rng.range(1, height))};
        break;
      case FieldKind::Fp:
        s = Scalar{F, static_cast<std::uint64_t>(rng.next() % F->p)};
        break;
      case FieldKind::Quad:
        s = make_quad(F, random_scalar(F->base, rng, false, height),
                      random_scalar(F->base, rng, false, height));
        break;
      case FieldKind::Laurent: {
        std::vector<long long> e(F->vars.size());
        for (auto& x : e) x = rng.range(-2, 2);
        Scalar c = random_scalar(F->base, rng, true, height);
        s = make_laurent(F, c, std::move(e));
        break;
      }
    }
    if (!require_nonzero || !scalar_is_zero(s)) return s;
  }
}

}  // namespace bioct
