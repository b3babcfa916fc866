// A decidable model of mod-2 Galois cohomology H(k) for each supported
// ground field: symbols, cup products, the e_n invariants, Stiefel-Whitney
// classes, and ideal-membership tests ((-1)-power ideals and J_m).
//
// Backends:
//   Q        degree 0/1 as bit / square class, degree 2 as the even set of
//            ramified places, degree >= 3 as one bit at the real place.
//   F_p      degree <= 1 only; everything above vanishes.
//   Laurent  maps from subsets S of the variable set to base classes h_S,
//            encoding sum_S (prod_{t in S} (t)) . h_S, with the reduction
//            (t).(t) = (-1).(t).
#pragma once

#include "bioct/qforms.hpp"

namespace bioct {

enum class CohErrorCode {
  ZeroSlot,
  MixedFields,
  NotInIdeal,
  UnsupportedField,
  BadDegree,
};

struct CohError : std::runtime_error {
  CohErrorCode code;
  CohError(CohErrorCode c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

// --------------------------------------------------------------------------
// Base-field payloads (over Q or F_p)
// --------------------------------------------------------------------------

struct BaseCls {
  int degree = 0;
  int bit = 0;                   // degree 0, and Q degree >= 3
  std::optional<Scalar> sq;      // degree 1: square-class representative
  std::vector<BigInt> places;    // Q degree 2: sorted, even cardinality
};

inline void check_coh_base(const FieldPtr& base) {
  if (base->kind != FieldKind::Q && base->kind != FieldKind::Fp)
    throw CohError(CohErrorCode::UnsupportedField,
                   "cohomology base must be Q or F_p");
}

inline bool base_is_zero(const BaseCls& c) {
  if (c.degree == 1) return !c.sq || is_square(*c.sq);
  if (c.degree == 2 && !c.places.empty()) return false;
  return c.bit == 0 && c.places.empty();
}

inline BaseCls base_zero(int degree) { return BaseCls{degree, 0, {}, {}}; }

inline bool base_eq(const BaseCls& x, const BaseCls& y) {
  if (x.degree != y.degree) return false;
  if (base_is_zero(x) != base_is_zero(y)) return false;
  if (base_is_zero(x)) return true;
  if (x.degree == 1) return square_class_eq(*x.sq, *y.sq);
  return x.bit == y.bit && x.places == y.places;
}

inline BaseCls base_add(const FieldPtr& base, const BaseCls& x,
                        const BaseCls& y) {
  if (x.degree != y.degree)
    throw CohError(CohErrorCode::BadDegree, "adding different degrees");
  BaseCls r = base_zero(x.degree);
  if (x.degree == 1) {
    Scalar a = x.sq ? *x.sq : scalar_one(base);
    Scalar b = y.sq ? *y.sq : scalar_one(base);
    r.sq = square_class(scalar_mul(a, b));
    return r;
  }
  if (x.degree == 2 && base->kind == FieldKind::Q) {
    std::set_symmetric_difference(x.places.begin(), x.places.end(),
                                  y.places.begin(), y.places.end(),
                                  std::back_inserter(r.places));
    return r;
  }
  r.bit = x.bit ^ y.bit;
  return r;
}

// Restriction of a Q-class to the real place (one bit).
inline int base_real_bit(const BaseCls& c) {
  if (c.degree == 0) return c.bit;
  if (c.degree == 1) return (c.sq && std::get<Rat>(c.sq->v) < 0) ? 1 : 0;
  if (c.degree == 2)
    return std::binary_search(c.places.begin(), c.places.end(), places::real())
               ? 1
               : 0;
  return c.bit;
}

inline BaseCls base_cup(const FieldPtr& base, const BaseCls& x,
                        const BaseCls& y) {
  int d = x.degree + y.degree;
  if (base_is_zero(x) || base_is_zero(y)) return base_zero(d);
  if (x.degree == 0) return y;  // nonzero degree-0 class is the identity
  if (y.degree == 0) return x;
  if (base->kind == FieldKind::Fp) return base_zero(d);  // H^{>=2}(F_p) = 0
  BaseCls r = base_zero(d);
  if (d == 2) {
    r.places = symbol_places(std::get<Rat>(x.sq->v), std::get<Rat>(y.sq->v));
    return r;
  }
  r.bit = base_real_bit(x) & base_real_bit(y);
  return r;
}

inline BaseCls base_symbol(const FieldPtr& base,
                           const std::vector<Scalar>& slots) {
  check_coh_base(base);
  int n = static_cast<int>(slots.size());
  if (n == 0) return BaseCls{0, 1, {}, {}};
  std::vector<Scalar> cls;
  for (const auto& s : slots) {
    if (scalar_is_zero(s))
      throw CohError(CohErrorCode::ZeroSlot, "zero symbol slot");
    Scalar c = square_class(s);
    if (is_square(s)) return base_zero(n);  // (1) = 0 kills the product
    cls.push_back(c);
  }
  if (n == 1) {
    BaseCls r = base_zero(1);
    r.sq = cls[0];
    return r;
  }
  if (base->kind == FieldKind::Fp) return base_zero(n);
  if (n == 2) {
    BaseCls r = base_zero(2);
    r.places = symbol_places(std::get<Rat>(cls[0].v), std::get<Rat>(cls[1].v));
    return r;
  }
  BaseCls r = base_zero(n);
  r.bit = 1;
  for (const auto& c : cls)
    if (std::get<Rat>(c.v) > 0) r.bit = 0;
  return r;
}

// --------------------------------------------------------------------------
// Cohomology classes over any supported field
// --------------------------------------------------------------------------

// Terms map subsets of tower variables (sorted index lists) to base classes;
// over non-tower fields the only key in use is the empty subset.
struct CohClass {
  FieldPtr F;
  int degree = 0;
  std::map<std::vector<int>, BaseCls> terms;
};

inline FieldPtr coh_base_field(const FieldPtr& F) {
  return F->kind == FieldKind::Laurent ? F->base : F;
}

inline CohClass coh_zero(const FieldPtr& F, int degree) {
  check_coh_base(coh_base_field(F));
  return CohClass{F, degree, {}};
}

inline CohClass coh_one(const FieldPtr& F) {
  CohClass r = coh_zero(F, 0);
  r.terms.emplace(std::vector<int>{}, BaseCls{0, 1, {}, {}});
  return r;
}

inline bool coh_is_zero(const CohClass& x) {
  for (const auto& [k, v] : x.terms)
    if (!base_is_zero(v)) return false;
  return true;
}

inline void coh_insert(CohClass& x, const std::vector<int>& key,
                       const BaseCls& v) {
  if (base_is_zero(v)) return;
  FieldPtr base = coh_base_field(x.F);
  auto it = x.terms.find(key);
  if (it == x.terms.end()) {
    x.terms.emplace(key, v);
    return;
  }
  BaseCls sum = base_add(base, it->second, v);
  if (base_is_zero(sum))
    x.terms.erase(it);
  else
    it->second = sum;
}

inline bool coh_eq(const CohClass& x, const CohClass& y) {
  if (!same_field(x.F, y.F) || x.degree != y.degree) return false;
  // compare after dropping zero terms
  auto keys = [](const CohClass& c) {
    std::vector<std::vector<int>> ks;
    for (const auto& [k, v] : c.terms)
      if (!base_is_zero(v)) ks.push_back(k);
    return ks;
  };
  auto kx = keys(x), ky = keys(y);
  if (kx != ky) return false;
  for (const auto& k : kx)
    if (!base_eq(x.terms.at(k), y.terms.at(k))) return false;
  return true;
}

inline CohClass coh_add(const CohClass& x, const CohClass& y) {
  if (!same_field(x.F, y.F))
    throw CohError(CohErrorCode::MixedFields, "adding over mixed fields");
  if (x.degree != y.degree)
    throw CohError(CohErrorCode::BadDegree, "adding different degrees");
  CohClass r = x;
  for (const auto& [k, v] : y.terms) coh_insert(r, k, v);
  // drop zeros possibly already in x
  for (auto it = r.terms.begin(); it != r.terms.end();)
    it = base_is_zero(it->second) ? r.terms.erase(it) : std::next(it);
  return r;
}

inline CohClass coh_cup(const CohClass& x, const CohClass& y) {
  if (!same_field(x.F, y.F))
    throw CohError(CohErrorCode::MixedFields, "cup over mixed fields");
  FieldPtr base = coh_base_field(x.F);
  CohClass r = coh_zero(x.F, x.degree + y.degree);
  BaseCls minus_one = base_symbol(base, {scalar_int(base, -1)});
  for (const auto& [ks, vs] : x.terms) {
    if (base_is_zero(vs)) continue;
    for (const auto& [kt, vt] : y.terms) {
      if (base_is_zero(vt)) continue;
      std::vector<int> uni;
      std::set_union(ks.begin(), ks.end(), kt.begin(), kt.end(),
                     std::back_inserter(uni));
      int overlap = static_cast<int>(ks.size() + kt.size() - uni.size());
      BaseCls v = base_cup(base, vs, vt);
      for (int i = 0; i < overlap; ++i) v = base_cup(base, v, minus_one);
      coh_insert(r, uni, v);
    }
  }
  return r;
}

// Multiply a tower class by the degree-1 class (t_idx).
inline CohClass tower_mul_var(const CohClass& x, int idx) {
  CohClass r = coh_zero(x.F, x.degree + 1);
  FieldPtr base = coh_base_field(x.F);
  BaseCls minus_one = base_symbol(base, {scalar_int(base, -1)});
  for (const auto& [k, v] : x.terms) {
    if (base_is_zero(v)) continue;
    if (std::binary_search(k.begin(), k.end(), idx)) {
      coh_insert(r, k, base_cup(base, v, minus_one));  // (t)(t) = (-1)(t)
    } else {
      std::vector<int> key = k;
      key.insert(std::lower_bound(key.begin(), key.end(), idx), idx);
      coh_insert(r, key, v);
    }
  }
  return r;
}

// Re-tag a class over the sub-tower (or base) as a class over the tower F;
// variable indices are shared since the sub-tower is a prefix.
inline CohClass coh_embed(const FieldPtr& F, const CohClass& x) {
  CohClass r = coh_zero(F, x.degree);
  r.terms = x.terms;
  return r;
}

inline CohClass coh_symbol(const FieldPtr& F, const std::vector<Scalar>& slots) {
  for (const auto& s : slots) {
    if (!same_field(s.F, F))
      throw CohError(CohErrorCode::MixedFields, "symbol slot in wrong field");
    if (scalar_is_zero(s))
      throw CohError(CohErrorCode::ZeroSlot, "zero symbol slot");
  }
  int n = static_cast<int>(slots.size());
  if (F->kind != FieldKind::Laurent) {
    CohClass r = coh_zero(F, n);
    coh_insert(r, {}, base_symbol(F, slots));
    return r;
  }
  FieldPtr base = F->base;
  check_coh_base(base);
  int nv = static_cast<int>(F->vars.size());
  // per slot: base coefficient and the set of odd-exponent variables
  std::vector<Scalar> coeff;
  std::vector<std::vector<int>> vars;
  for (const auto& s : slots) {
    const auto& l = std::get<LaurVal>(s.v);
    coeff.push_back(*l.coeff);
    std::vector<int> vs;
    for (int j = 0; j < nv; ++j)
      if (((l.exps[j] % 2) + 2) % 2 == 1) vs.push_back(j);
    vars.push_back(vs);
  }
  // multilinear expansion: per slot pick the base part or one variable
  CohClass r = coh_zero(F, n);
  std::vector<int> pick(n, -1);  // -1 = base part, else variable index
  std::function<void(int)> recurse = [&](int i) {
    if (i == n) {
      std::vector<Scalar> base_slots;
      std::map<int, int> mult;
      for (int t = 0; t < n; ++t) {
        if (pick[t] < 0)
          base_slots.push_back(coeff[t]);
        else
          ++mult[pick[t]];
      }
      std::vector<int> key;
      int extra_minus_ones = 0;
      for (const auto& [var, m] : mult) {
        key.push_back(var);
        extra_minus_ones += m - 1;  // (t)^m = (-1)^{m-1}(t)
      }
      for (int t = 0; t < extra_minus_ones; ++t)
        base_slots.push_back(scalar_int(base, -1));
      coh_insert(r, key, base_symbol(base, base_slots));
      return;
    }
    pick[i] = -1;
    recurse(i + 1);
    for (int v : vars[i]) {
      pick[i] = v;
      recurse(i + 1);
    }
  };
  recurse(0);
  return r;
}

inline CohClass coh_minus_one_power(const FieldPtr& F, int m) {
  if (m == 0) return coh_one(F);
  std::vector<Scalar> slots(m, scalar_int(F, -1));
  return coh_symbol(F, slots);
}

// --------------------------------------------------------------------------
// I^n membership and the e_n invariants
// --------------------------------------------------------------------------

inline CohClass e_n(int n, const QForm& q);

inline std::vector<BigInt> e2_places_Q(const QForm& q) {
  // Clifford/Witt invariant of q in I^2: c(q) = s(q) * (-1,-1)^{m(m-1)/2}
  auto ps = hasse_places(q);
  long long m = q.dim() / 2;
  if ((m * (m - 1) / 2) % 2 == 1) {
    std::vector<BigInt> corr{places::real(), BigInt(2)};
    std::vector<BigInt> out;
    std::set_symmetric_difference(ps.begin(), ps.end(), corr.begin(),
                                  corr.end(), std::back_inserter(out));
    return out;
  }
  return ps;
}

inline bool in_In(const QForm& q, int n) {
  if (n <= 0) return true;
  switch (q.F->kind) {
    case FieldKind::Q: {
      if (q.dim() % 2 != 0) return false;
      if (n == 1) return true;
      if (!square_class_eq(qf_signed_disc(q), scalar_one(q.F))) return false;
      if (n == 2) return true;
      if (!e2_places_Q(q).empty()) return false;
      if (n == 3) return true;
      long long sig = qf_signature(q);
      long long mod = 1LL << n;
      return ((sig % mod) + mod) % mod == 0;
    }
    case FieldKind::Fp: {
      if (q.dim() % 2 != 0) return false;
      if (n == 1) return true;
      // I^2(F_p) = 0, so membership beyond I is Witt triviality
      return square_class_eq(qf_signed_disc(q), scalar_one(q.F));
    }
    case FieldKind::Quad:
      throw CohError(CohErrorCode::UnsupportedField,
                     "no cohomology backend over quadratic extensions");
    case FieldKind::Laurent: {
      auto sp = springer_split(q);
      QForm both = qf_sum(sp.unit, sp.residue);
      return (both.dim() == 0 || in_In(both, n)) &&
             (sp.residue.dim() == 0 || in_In(sp.residue, n - 1));
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

inline CohClass e_n(int n, const QForm& q) {
  if (!in_In(q, n))
    throw CohError(CohErrorCode::NotInIdeal, "form not in I^n");
  const FieldPtr& F = q.F;
  if (n == 0) {
    CohClass r = coh_zero(F, 0);
    BaseCls b = base_zero(0);
    b.bit = q.dim() % 2;
    coh_insert(r, {}, b);
    return r;
  }
  if (F->kind == FieldKind::Laurent) {
    auto sp = springer_split(q);
    CohClass r = coh_zero(F, n);
    QForm both = qf_sum(sp.unit, sp.residue);
    if (both.dim() > 0) r = coh_add(r, coh_embed(F, e_n(n, both)));
    if (sp.residue.dim() > 0) {
      CohClass lower = coh_embed(F, e_n(n - 1, sp.residue));
      r = coh_add(r, tower_mul_var(lower, static_cast<int>(F->vars.size()) - 1));
    }
    return r;
  }
  CohClass r = coh_zero(F, n);
  if (n == 1) {
    BaseCls b = base_zero(1);
    b.sq = qf_signed_disc(q);
    coh_insert(r, {}, b);
    return r;
  }
  if (F->kind == FieldKind::Fp) return r;  // H^{>=2}(F_p) = 0
  if (n == 2) {
    BaseCls b = base_zero(2);
    b.places = e2_places_Q(q);
    coh_insert(r, {}, b);
    return r;
  }
  // n >= 3 over Q: detected by the real place only
  long long sig = qf_signature(q);
  long long div = 1LL << n;
  BaseCls b = base_zero(n);
  b.bit = static_cast<int>((((sig / div) % 2) + 2) % 2);
  coh_insert(r, {}, b);
  return r;
}

inline CohClass e_n(int n, const WittClass& w) { return e_n(n, w.kernel); }

// P_n with the I^n-membership precondition enforced.
inline WittClass checked_P_n(int n, const QForm& q) {
  if (!in_In(q, n))
    throw CohError(CohErrorCode::NotInIdeal, "P_n input not in I^n");
  return qf_P_n(n, q);
}

// --------------------------------------------------------------------------
// Stiefel-Whitney classes and Serre's b^h invariant
// --------------------------------------------------------------------------

inline CohClass stiefel_whitney(int i, const QForm& q) {
  if (i == 0) return coh_one(q.F);
  int n = q.dim();
  CohClass r = coh_zero(q.F, i);
  if (i > n) return r;
  // sum over all i-subsets of the diagonal entries
  std::vector<int> idx(i);
  for (int t = 0; t < i; ++t) idx[t] = t;
  while (true) {
    std::vector<Scalar> slots;
    for (int t : idx) slots.push_back(q.entries[t]);
    r = coh_add(r, coh_symbol(q.F, slots));
    int t = i - 1;
    while (t >= 0 && idx[t] == n - i + t) --t;
    if (t < 0) break;
    ++idx[t];
    for (int s = t + 1; s < i; ++s) idx[s] = idx[s - 1] + 1;
  }
  return r;
}

// Serre's invariant b^h(q) = h.(a_1)...(a_{n-1}) for h in J_1(k).
inline CohClass serre_bh(const CohClass& h, const QForm& q) {
  std::vector<Scalar> slots(q.entries.begin(), q.entries.end() - 1);
  return coh_cup(h, coh_symbol(q.F, slots));
}

// --------------------------------------------------------------------------
// Ideal tests
// --------------------------------------------------------------------------

inline bool base_in_minus_one_power(const FieldPtr& base, const BaseCls& v,
                                    int m) {
  if (m == 0 || base_is_zero(v)) return true;
  int d = v.degree;
  if (d < m) return false;
  if (base->kind == FieldKind::Fp) {
    // (-1)^m . h vanishes in degree >= 2
    if (d >= 2) return false;
    // d == 1, m == 1: v must equal (-1)
    return square_class_eq(*v.sq, scalar_int(base, -1));
  }
  if (d >= 3) return true;  // H^d(Q) for d >= 3 is the real-place bit
  if (d == 1) return square_class_eq(*v.sq, scalar_int(base, -1));
  // d == 2
  if (m == 2) {
    auto ref = symbol_places(Rat(-1), Rat(-1));
    return v.places == ref;
  }
  // m == 1: enumerate candidates a built from the support of v plus {-1, 2}
  std::vector<BigInt> primes;
  for (const auto& p : v.places)
    if (p != places::real()) primes.push_back(p);
  if (std::find(primes.begin(), primes.end(), BigInt(2)) == primes.end())
    primes.push_back(BigInt(2));
  int np = static_cast<int>(primes.size());
  for (int mask = 0; mask < (1 << np); ++mask)
    for (int sign = 0; sign < 2; ++sign) {
      Rat a(sign ? -1 : 1);
      for (int t = 0; t < np; ++t)
        if (mask & (1 << t)) a *= Rat(primes[t]);
      if (a == 1) continue;
      if (symbol_places(Rat(-1), a) == v.places) return true;
    }
  return false;
}

inline bool in_minus_one_power(const CohClass& x, int m) {
  FieldPtr base = coh_base_field(x.F);
  for (const auto& [k, v] : x.terms)
    if (!base_in_minus_one_power(base, v, m)) return false;
  return true;
}

inline bool in_J(const CohClass& x, int m) {
  return coh_is_zero(coh_cup(x, coh_minus_one_power(x.F, m)));
}

}  // namespace bioct
