// Diagonal quadratic forms and Witt-ring machinery over every supported
// field: isotropy (Hasse-Minkowski over Q, Springer recursion over Laurent
// towers), Witt decomposition, isometry, similarity, Scharlau and
// multiplicative transfers, exterior square, P_n, signatures.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "bioct/fields.hpp"

namespace bioct {

enum class QFormErrorCode {
  ZeroEntry,
  DegenerateGram,
  DimTooSmall,
  NotInIdeal,
  DegenerateFunctional,
  WitnessSearchExhausted,
};

struct QFormError : std::runtime_error {
  QFormErrorCode code;
  QFormError(QFormErrorCode c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

struct QForm {
  FieldPtr F;
  std::vector<Scalar> entries;
  int dim() const { return static_cast<int>(entries.size()); }
};

inline QForm qform(FieldPtr F, std::vector<Scalar> entries) {
  for (const auto& e : entries) {
    if (!same_field(e.F, F))
      throw FieldError(FieldErrorCode::MixedFields, "entry in wrong field");
    if (scalar_is_zero(e))
      throw QFormError(QFormErrorCode::ZeroEntry, "zero diagonal entry");
  }
  return QForm{std::move(F), std::move(entries)};
}

inline QForm qform_ints(const FieldPtr& F, std::vector<long long> ns) {
  std::vector<Scalar> e;
  e.reserve(ns.size());
  for (long long n : ns) e.push_back(scalar_int(F, n));
  return qform(F, std::move(e));
}

// --------------------------------------------------------------------------
// Builders
// --------------------------------------------------------------------------

inline QForm qf_sum(const QForm& a, const QForm& b) {
  if (!same_field(a.F, b.F))
    throw FieldError(FieldErrorCode::MixedFields, "sum of forms over mixed fields");
  std::vector<Scalar> e = a.entries;
  e.insert(e.end(), b.entries.begin(), b.entries.end());
  return QForm{a.F, std::move(e)};
}

inline QForm qf_scale(const Scalar& c, const QForm& q) {
  if (scalar_is_zero(c))
    throw QFormError(QFormErrorCode::ZeroEntry, "scaling by zero");
  std::vector<Scalar> e;
  e.reserve(q.entries.size());
  for (const auto& x : q.entries) e.push_back(scalar_mul(c, x));
  return QForm{q.F, std::move(e)};
}

inline QForm qf_neg(const QForm& q) {
  return qf_scale(scalar_int(q.F, -1), q);
}

inline QForm qf_tensor(const QForm& a, const QForm& b) {
  if (!same_field(a.F, b.F))
    throw FieldError(FieldErrorCode::MixedFields, "tensor over mixed fields");
  std::vector<Scalar> e;
  e.reserve(a.entries.size() * b.entries.size());
  for (const auto& x : a.entries)
    for (const auto& y : b.entries) e.push_back(scalar_mul(x, y));
  return QForm{a.F, std::move(e)};
}

// <<c1,...,cn>> = tensor of <1,-ci>
inline QForm qf_pfister(const FieldPtr& F, const std::vector<Scalar>& cs) {
  QForm r = qform(F, {scalar_one(F)});
  for (const auto& c : cs) {
    QForm fac = qform(F, {scalar_one(F), scalar_neg(c)});
    r = qf_tensor(r, fac);
  }
  return r;
}

// Pure part: strip one leading <1> (the Pfister form must begin with it).
inline QForm qf_pure_part(const QForm& pf) {
  if (pf.dim() < 2)
    throw QFormError(QFormErrorCode::DimTooSmall, "pure part needs dim >= 2");
  if (!scalar_eq(pf.entries[0], scalar_one(pf.F)))
    throw QFormError(QFormErrorCode::ZeroEntry,
                     "pure part expects a leading <1> entry");
  std::vector<Scalar> e(pf.entries.begin() + 1, pf.entries.end());
  return QForm{pf.F, std::move(e)};
}

inline QForm qf_hyperbolic(const FieldPtr& F, int planes) {
  std::vector<Scalar> e;
  for (int i = 0; i < planes; ++i) {
    e.push_back(scalar_one(F));
    e.push_back(scalar_int(F, -1));
  }
  return QForm{F, std::move(e)};
}

// Diagonalize a symmetric Gram matrix by congruence (needs division; Laurent
// towers are refused since row operations leave the monomial tier).
inline QForm qf_from_gram(const FieldPtr& F,
                          std::vector<std::vector<Scalar>> g) {
  if (F->kind == FieldKind::Laurent)
    throw FieldError(FieldErrorCode::UnsupportedField,
                     "gram diagonalization over a Laurent tower");
  int n = static_cast<int>(g.size());
  for (auto& row : g)
    if (static_cast<int>(row.size()) != n)
      throw QFormError(QFormErrorCode::DegenerateGram, "non-square gram");
  std::vector<Scalar> diag;
  // Work on a copy, clearing one dimension at a time.
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  auto B = [&](int i, int j) -> Scalar& { return g[i][j]; };
  std::vector<int> order;
  while (!alive.empty()) {
    // find index with nonzero diagonal
    int pick = -1;
    for (int idx : alive)
      if (!scalar_is_zero(B(idx, idx))) { pick = idx; break; }
    if (pick < 0) {
      // all diagonals zero; find off-diagonal nonzero pair and mix
      int a = -1, b = -1;
      for (std::size_t s = 0; s < alive.size() && a < 0; ++s)
        for (std::size_t t = s + 1; t < alive.size(); ++t)
          if (!scalar_is_zero(B(alive[s], alive[t]))) {
            a = alive[s];
            b = alive[t];
            break;
          }
      if (a < 0)
        throw QFormError(QFormErrorCode::DegenerateGram, "singular gram matrix");
      // replace basis vector a by a+b: B(a,a) becomes 2*B(a,b) != 0
      for (int k = 0; k < n; ++k) {
        g[a][k] = scalar_add(g[a][k], g[b][k]);
      }
      for (int k = 0; k < n; ++k) {
        g[k][a] = scalar_add(g[k][a], g[k][b]);
      }
      continue;
    }
    Scalar piv = B(pick, pick);
    diag.push_back(piv);
    Scalar pinv = scalar_inv(piv);
    std::vector<int> rest;
    for (int idx : alive)
      if (idx != pick) rest.push_back(idx);
    // clear row/column pick from the others: v -> v - (B(v,p)/B(p,p)) p
    for (int idx : rest) {
      Scalar c = scalar_mul(B(idx, pick), pinv);
      if (scalar_is_zero(c)) continue;
      for (int k = 0; k < n; ++k)
        g[idx][k] = scalar_sub(g[idx][k], scalar_mul(c, g[pick][k]));
      for (int k = 0; k < n; ++k)
        g[k][idx] = scalar_sub(g[k][idx], scalar_mul(c, g[k][pick]));
    }
    alive = rest;
  }
  if (static_cast<int>(diag.size()) != n)
    throw QFormError(QFormErrorCode::DegenerateGram, "singular gram matrix");
  return qform(F, std::move(diag));
}

// --------------------------------------------------------------------------
// Q-specific invariants: signature, discriminant, Hilbert symbols, Hasse set
// --------------------------------------------------------------------------

inline int qf_signature(const QForm& q) {
  if (q.F->kind != FieldKind::Q)
    throw FieldError(FieldErrorCode::UnsupportedField, "signature needs Q");
  int s = 0;
  for (const auto& e : q.entries) s += std::get<Rat>(e.v) > 0 ? 1 : -1;
  return s;
}

// Signed discriminant (-1)^{n(n-1)/2} * prod entries, as a square class rep.
inline Scalar qf_signed_disc(const QForm& q) {
  Scalar d = scalar_one(q.F);
  for (const auto& e : q.entries) d = scalar_mul(d, e);
  long long n = q.dim();
  if ((n * (n - 1) / 2) % 2 == 1) d = scalar_neg(d);
  return square_class(d);
}

// Places of Q are encoded as BigInt: -1 for the real place, otherwise a prime.
namespace places {
inline BigInt real() { return BigInt(-1); }
}

inline int legendre(BigInt a, const BigInt& p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  BigInt r = boost::multiprecision::powm(a, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

// Hilbert symbol (a,b)_v for nonzero rationals; v = -1 means the real place.
inline int hilbert_symbol(const Rat& ra, const Rat& rb, const BigInt& v) {
  BigInt a = rat_squarefree_rep(ra);
  BigInt b = rat_squarefree_rep(rb);
  if (v == -1) return (a < 0 && b < 0) ? -1 : 1;
  if (v == 2) {
    auto ord2 = [](BigInt& x) {
      int e = 0;
      while (x % 2 == 0) { x /= 2; ++e; }
      return e;
    };
    BigInt u = a, w = b;
    int alpha = ord2(u), beta = ord2(w);
    auto eps = [](const BigInt& x) {  // (x-1)/2 mod 2 for odd x
      BigInt m = ((x - 1) / 2) % 2;
      return static_cast<int>((m + 2) % 2);
    };
    auto omega = [](const BigInt& x) {  // (x^2-1)/8 mod 2 for odd x
      BigInt m = ((x * x - 1) / 8) % 2;
      return static_cast<int>((m + 2) % 2);
    };
    int e = (eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)) % 2;
    return e ? -1 : 1;
  }
  // odd prime
  auto ordp = [&](BigInt& x) {
    int e = 0;
    while (x % v == 0) { x /= v; ++e; }
    return e;
  };
  BigInt u = a, w = b;
  int alpha = ordp(u), beta = ordp(w);
  int epsp = static_cast<int>(((v - 1) / 2) % 2);
  int sign = 1;
  if ((alpha * beta * epsp) % 2 == 1) sign = -sign;
  if (beta % 2 == 1) sign *= legendre(u, v);
  if (alpha % 2 == 1) sign *= legendre(w, v);
  return sign;
}

// Sorted candidate support: real place, 2, odd primes of all inputs.
inline std::vector<BigInt> support_places(const std::vector<Rat>& xs) {
  std::vector<BigInt> ps{places::real(), BigInt(2)};
  for (const auto& x : xs)
    for (const auto& p : odd_support(x)) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

// Hasse invariant s(q) = prod_{i<j} (a_i, a_j): the sorted set of places where
// it equals -1.  Hilbert reciprocity (even cardinality) is asserted.
inline std::vector<BigInt> hasse_places(const QForm& q) {
  if (q.F->kind != FieldKind::Q)
    throw FieldError(FieldErrorCode::UnsupportedField, "hasse needs Q");
  std::vector<Rat> xs;
  for (const auto& e : q.entries) xs.push_back(std::get<Rat>(e.v));
  std::vector<BigInt> bad;
  for (const auto& v : support_places(xs)) {
    int s = 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j)
        s *= hilbert_symbol(xs[i], xs[j], v);
    if (s == -1) bad.push_back(v);
  }
  if (bad.size() % 2 != 0)
    throw std::logic_error("Hilbert reciprocity violated (internal error)");
  return bad;
}

// The ramification set of the single Hilbert symbol (a,b).
inline std::vector<BigInt> symbol_places(const Rat& a, const Rat& b) {
  std::vector<BigInt> bad;
  for (const auto& v : support_places({a, b}))
    if (hilbert_symbol(a, b, v) == -1) bad.push_back(v);
  if (bad.size() % 2 != 0)
    throw std::logic_error("Hilbert reciprocity violated (internal error)");
  return bad;
}

// Is x a square in the completion Q_v?
inline bool local_is_square(const Rat& x, const BigInt& v) {
  BigInt r = rat_squarefree_rep(x);
  if (v == -1) return r > 0;
  if (v == 2) {
    if (r % 2 == 0) return false;
    BigInt m = ((r % 8) + 8) % 8;
    return m == 1;
  }
  if (r % v == 0) return false;
  return legendre(r, v) == 1;
}

// --------------------------------------------------------------------------
// Springer split over Laurent towers: q ~ q_unit  perp  <t_n> q_res with both
// parts over the tower with the last variable removed.
// --------------------------------------------------------------------------

inline FieldPtr laurent_pop_var(const FieldPtr& F) {
  if (F->vars.size() == 1) return F->base;
  std::vector<std::string> vars(F->vars.begin(), F->vars.end() - 1);
  return field_laurent(F->base, std::move(vars));
}

inline Scalar laurent_strip_last(const Scalar& x, const FieldPtr& sub) {
  const auto& l = std::get<LaurVal>(x.v);
  if (sub->kind == FieldKind::Laurent) {
    std::vector<long long> e(l.exps.begin(), l.exps.end() - 1);
    return make_laurent(sub, *l.coeff, std::move(e));
  }
  return *l.coeff;
}

// Embed a scalar of the sub-tower (or base) back into the tower F.
inline Scalar laurent_embed(const FieldPtr& F, const Scalar& x) {
  if (same_field(x.F, F)) return x;
  if (F->kind != FieldKind::Laurent)
    throw FieldError(FieldErrorCode::MixedFields, "bad embed target");
  std::vector<long long> e(F->vars.size(), 0);
  if (x.F->kind == FieldKind::Laurent) {
    const auto& l = std::get<LaurVal>(x.v);
    for (std::size_t i = 0; i < l.exps.size(); ++i) e[i] = l.exps[i];
    return make_laurent(F, *l.coeff, std::move(e));
  }
  return make_laurent(F, x, std::move(e));
}

struct SpringerSplit {
  FieldPtr sub;          // tower minus last variable, or the base field
  QForm unit, residue;   // possibly empty entry lists
  std::vector<int> unit_idx, residue_idx;  // original positions
};

inline SpringerSplit springer_split(const QForm& q) {
  if (q.F->kind != FieldKind::Laurent)
    throw FieldError(FieldErrorCode::UnsupportedField, "springer needs tower");
  FieldPtr sub = laurent_pop_var(q.F);
  SpringerSplit s;
  s.sub = sub;
  s.unit.F = sub;
  s.residue.F = sub;
  for (int i = 0; i < q.dim(); ++i) {
    const auto& l = std::get<LaurVal>(q.entries[i].v);
    long long e = l.exps.back();
    Scalar stripped = laurent_strip_last(q.entries[i], sub);
    if (((e % 2) + 2) % 2 == 0) {
      s.unit.entries.push_back(stripped);
      s.unit_idx.push_back(i);
    } else {
      s.residue.entries.push_back(stripped);
      s.residue_idx.push_back(i);
    }
  }
  return s;
}

// --------------------------------------------------------------------------
// Isotropy
// --------------------------------------------------------------------------

struct IsoResult {
  bool isotropic = false;
  std::optional<std::vector<Scalar>> witness;  // coordinates over q.F
};

inline bool qf_isotropic_Q_decision(const QForm& q);

// dim<=4 local-global decision over Q (Serre, Cours d'arithmetique IV).
inline bool qf_isotropic_Q_decision(const QForm& q) {
  int n = q.dim();
  std::vector<Rat> a;
  for (const auto& e : q.entries) a.push_back(std::get<Rat>(e.v));
  if (n <= 1) return false;
  if (n == 2) {
    Rat m = -a[0] * a[1];
    return m > 0 && rat_squarefree_rep(m) == 1;
  }
  if (n >= 5) {
    bool pos = false, neg = false;
    for (const auto& x : a) (x > 0 ? pos : neg) = true;
    return pos && neg;  // indefinite <=> isotropic for dim >= 5
  }
  // collect support
  std::vector<BigInt> places = support_places(a);
  if (n == 3) {
    // isotropic iff (-1,-d)_v = s_v(q) at every place, d = unsigned disc
    Rat d = a[0] * a[1] * a[2];
    for (const auto& v : places) {
      int lhs = hilbert_symbol(Rat(-1), -d, v);
      int s = hilbert_symbol(a[0], a[1], v) * hilbert_symbol(a[0], a[2], v) *
              hilbert_symbol(a[1], a[2], v);
      if (lhs != s) return false;
    }
    return true;
  }
  // n == 4: anisotropic at v iff d square in Q_v and s_v = -(-1,-1)_v
  Rat d = a[0] * a[1] * a[2] * a[3];
  for (const auto& v : places) {
    if (!local_is_square(d, v)) continue;
    int s = 1;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) s *= hilbert_symbol(a[i], a[j], v);
    if (s == -hilbert_symbol(Rat(-1), Rat(-1), v)) return false;
  }
  return true;
}

// Find integers (y_i) with sum r_i y_i^2 = 0 for squarefree integer entries,
// by meet-in-the-middle with escalating height.  Returns empty on failure.
inline std::vector<BigInt> mitm_witness(const std::vector<BigInt>& r,
                                        long long height) {
  int n = static_cast<int>(r.size());
  int half = n / 2;
  // enumerate first half
  std::map<BigInt, std::vector<BigInt>> table;
  std::vector<BigInt> v(n, 0);
  std::function<void(int, BigInt)> enum1 = [&](int i, BigInt acc) {
    if (i == half) {
      std::vector<BigInt> key(v.begin(), v.begin() + half);
      bool nz = std::any_of(key.begin(), key.end(),
                            [](const BigInt& x) { return x != 0; });
      auto it = table.find(acc);
      if (it == table.end())
        table.emplace(acc, std::move(key));
      else if (nz && std::all_of(it->second.begin(), it->second.end(),
                                 [](const BigInt& x) { return x == 0; }))
        it->second = std::move(key);  // prefer a nonzero representative
      return;
    }
    for (long long x = 0; x <= height; ++x) {
      v[i] = x;
      enum1(i + 1, acc + r[i] * x * x);
    }
  };
  enum1(0, BigInt(0));
  std::vector<BigInt> result;
  std::function<void(int, BigInt)> enum2 = [&](int i, BigInt acc) {
    if (!result.empty()) return;
    if (i == n) {
      auto it = table.find(-acc);
      if (it != table.end()) {
        // nonzero check
        bool nz = false;
        for (const auto& x : it->second)
          if (x != 0) nz = true;
        for (int j = half; j < n; ++j)
          if (v[j] != 0) nz = true;
        if (!nz) return;
        result.assign(it->second.begin(), it->second.end());
        for (int j = half; j < n; ++j) result.push_back(v[j]);
      }
      return;
    }
    for (long long x = -height; x <= height; ++x) {
      v[i] = x;
      enum2(i + 1, acc + r[i] * x * x);
      if (!result.empty()) return;
    }
  };
  enum2(half, BigInt(0));
  return result;
}

// Witness for an isotropic rational form (the decision must already be true).
inline std::vector<Scalar> qf_witness_Q(const QForm& q) {
  int n = q.dim();
  std::vector<Rat> a;
  for (const auto& e : q.entries) a.push_back(std::get<Rat>(e.v));
  // squarefree reduction a_i = r_i c_i^2
  std::vector<BigInt> r(n);
  std::vector<Rat> c(n);
  for (int i = 0; i < n; ++i) {
    r[i] = rat_squarefree_rep(a[i]);
    Rat ratio = a[i] / Rat(r[i]);  // a positive square
    BigInt num = boost::multiprecision::sqrt(boost::multiprecision::numerator(ratio));
    BigInt den = boost::multiprecision::sqrt(boost::multiprecision::denominator(ratio));
    c[i] = Rat(num, den);
  }
  auto finish = [&](const std::vector<int>& idx, const std::vector<BigInt>& y) {
    std::vector<Scalar> w(n, scalar_zero(q.F));
    for (std::size_t t = 0; t < idx.size(); ++t)
      w[idx[t]] = make_rat(Rat(y[t]) / c[idx[t]]);
    return w;
  };
  // (a) hyperbolic pair shortcut: -r_i r_j a perfect square
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      BigInt m = -r[i] * r[j];
      if (m <= 0) continue;
      BigInt s = boost::multiprecision::sqrt(m);
      if (s * s == m) {
        // r_i x^2 + r_j y^2 = 0 with x = r_j... use x = s/gcd? Solve:
        // r_i (r_j)^2 k^2? Take x = -r_j, y = s:  r_i r_j^2 + r_j s^2
        //  = r_j (r_i r_j + s^2) = r_j(r_i r_j - r_i r_j) = 0.
        return finish({i, j}, {BigInt(-r[j]), s});
      }
    }
  // (b) choose a small isotropic subform and meet-in-the-middle on it
  std::vector<int> best;
  for (int size = 2; size <= std::min(n, 5); ++size) {
    // greedy: prefer mixed signs; try a handful of index subsets
    std::vector<int> idx;
    // canonical choice: all subsets is too many for n=14; use sliding windows
    // plus the mixed-sign greedy pick.
    std::vector<int> pos, neg;
    for (int i = 0; i < n; ++i) (r[i] > 0 ? pos : neg).push_back(i);
    std::vector<std::vector<int>> candidates;
    if (!pos.empty() && !neg.empty() && size >= 2) {
      std::vector<int> g;
      std::size_t pi = 0, ni = 0;
      while (static_cast<int>(g.size()) < size && (pi < pos.size() || ni < neg.size())) {
        if (pi < pos.size()) g.push_back(pos[pi++]);
        if (static_cast<int>(g.size()) < size && ni < neg.size()) g.push_back(neg[ni++]);
      }
      if (static_cast<int>(g.size()) == size) candidates.push_back(g);
    }
    for (int s0 = 0; s0 + size <= n; ++s0) {
      std::vector<int> w(size);
      for (int t = 0; t < size; ++t) w[t] = s0 + t;
      candidates.push_back(w);
    }
    for (auto& cand : candidates) {
      std::vector<Scalar> sub;
      for (int i : cand) sub.push_back(q.entries[i]);
      QForm qs{q.F, sub};
      if (!qf_isotropic_Q_decision(qs)) continue;
      std::vector<BigInt> rs;
      for (int i : cand) rs.push_back(r[i]);
      for (long long h : {3, 8, 20, 50, 120, 300, 800, 2000}) {
        auto y = mitm_witness(rs, h);
        if (!y.empty()) return finish(cand, y);
      }
    }
  }
  throw QFormError(QFormErrorCode::WitnessSearchExhausted,
                   "isotropy witness search exhausted (internal error)");
}

// F_p square root (p odd, x must be a QR).
inline std::uint64_t fp_sqrt(std::uint64_t x, std::uint64_t p) {
  if (x == 0) return 0;
  if (p % 4 == 3) return fp_pow(x, (p + 1) / 4, p);
  for (std::uint64_t t = 1; t < p; ++t)
    if (fp_mul(t, t, p) == x) return t;
  throw std::logic_error("fp_sqrt: not a residue");
}

// Enumerate elements of F_p or F_{p^2} (small p only; used for witnesses).
inline std::vector<Scalar> finite_field_elements(const FieldPtr& F) {
  std::vector<Scalar> out;
  if (F->kind == FieldKind::Fp) {
    for (std::uint64_t a = 0; a < F->p; ++a) out.push_back(Scalar{F, a});
  } else {  // quad over Fp
    std::uint64_t p = F->base->p;
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b)
        out.push_back(make_quad(F, Scalar{F->base, a}, Scalar{F->base, b}));
  }
  return out;
}

inline bool is_finite_field(const FieldPtr& F) {
  return F->kind == FieldKind::Fp ||
         (F->kind == FieldKind::Quad && F->base->kind == FieldKind::Fp);
}

inline IsoResult qf_isotropic(const QForm& q);

inline IsoResult qf_isotropic_finite(const QForm& q) {
  int n = q.dim();
  IsoResult res;
  if (n <= 1) return res;
  if (n == 2) {
    Scalar m = scalar_neg(scalar_mul(q.entries[0], q.entries[1]));
    if (!is_square(m)) return res;
    // a x^2 = -b  =>  (x)^2 = -b/a
    Scalar t = scalar_neg(scalar_div(q.entries[1], q.entries[0]));
    for (const auto& x : finite_field_elements(q.F))
      if (!scalar_is_zero(x) && scalar_eq(scalar_mul(x, x), t)) {
        res.isotropic = true;
        res.witness = {x, scalar_one(q.F)};
        return res;
      }
    throw std::logic_error("finite-field sqrt search failed");
  }
  // dim >= 3 over a finite field: always isotropic; find witness in the first
  // three coordinates.
  res.isotropic = true;
  Scalar a = q.entries[0], b = q.entries[1], cc = q.entries[2];
  for (const auto& x : finite_field_elements(q.F)) {
    // a x^2 + b y^2 + c = 0  =>  y^2 = (-c - a x^2)/b
    Scalar rhs = scalar_div(
        scalar_neg(scalar_add(cc, scalar_mul(a, scalar_mul(x, x)))), b);
    if (scalar_is_zero(rhs)) {
      std::vector<Scalar> w(n, scalar_zero(q.F));
      w[0] = x;
      w[1] = scalar_zero(q.F);
      w[2] = scalar_one(q.F);
      res.witness = w;
      return res;
    }
    if (!is_square(rhs)) continue;
    for (const auto& y : finite_field_elements(q.F))
      if (scalar_eq(scalar_mul(y, y), rhs)) {
        std::vector<Scalar> w(n, scalar_zero(q.F));
        w[0] = x;
        w[1] = y;
        w[2] = scalar_one(q.F);
        res.witness = w;
        return res;
      }
  }
  throw std::logic_error("finite-field isotropy witness search failed");
}

inline IsoResult qf_isotropic(const QForm& q) {
  switch (q.F->kind) {
    case FieldKind::Q: {
      IsoResult res;
      res.isotropic = qf_isotropic_Q_decision(q);
      if (res.isotropic) res.witness = qf_witness_Q(q);
      return res;
    }
    case FieldKind::Fp:
    case FieldKind::Quad: {
      if (!is_finite_field(q.F))
        throw FieldError(FieldErrorCode::UnsupportedField,
                         "isotropy over Q(sqrt d) is not decided directly");
      return qf_isotropic_finite(q);
    }
    case FieldKind::Laurent: {
      auto sp = springer_split(q);
      IsoResult res;
      if (sp.unit.dim() > 0) {
        auto ru = qf_isotropic(sp.unit);
        if (ru.isotropic) {
          res.isotropic = true;
          if (ru.witness) {
            std::vector<Scalar> w(q.dim(), scalar_zero(q.F));
            for (std::size_t t = 0; t < sp.unit_idx.size(); ++t)
              w[sp.unit_idx[t]] = laurent_embed(q.F, (*ru.witness)[t]);
            res.witness = w;
          }
          return res;
        }
      }
      if (sp.residue.dim() > 0) {
        auto rr = qf_isotropic(sp.residue);
        if (rr.isotropic) {
          res.isotropic = true;
          if (rr.witness) {
            std::vector<Scalar> w(q.dim(), scalar_zero(q.F));
            for (std::size_t t = 0; t < sp.residue_idx.size(); ++t)
              w[sp.residue_idx[t]] = laurent_embed(q.F, (*rr.witness)[t]);
            res.witness = w;
          }
          return res;
        }
      }
      return res;
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

// Evaluate q at a coordinate vector, allowing cross-monomial cancellation
// over Laurent towers (returns true iff the value is exactly zero).
inline bool qf_evaluates_to_zero(const QForm& q, const std::vector<Scalar>& v) {
  if (q.F->kind != FieldKind::Laurent) {
    Scalar acc = scalar_zero(q.F);
    for (int i = 0; i < q.dim(); ++i)
      acc = scalar_add(acc, scalar_mul(q.entries[i], scalar_mul(v[i], v[i])));
    return scalar_is_zero(acc);
  }
  std::map<std::vector<long long>, Scalar> terms;
  for (int i = 0; i < q.dim(); ++i) {
    Scalar t = scalar_mul(q.entries[i], scalar_mul(v[i], v[i]));
    if (scalar_is_zero(t)) continue;
    const auto& l = std::get<LaurVal>(t.v);
    auto it = terms.find(l.exps);
    if (it == terms.end())
      terms.emplace(l.exps, *l.coeff);
    else
      it->second = scalar_add(it->second, *l.coeff);
  }
  for (const auto& [e, coefficient] : terms)
    if (!scalar_is_zero(coefficient)) return false;
  return true;
}

// --------------------------------------------------------------------------
// Witt decomposition, isometry, Witt-class equality
// --------------------------------------------------------------------------

struct WittClass {
  QForm kernel;    // anisotropic (possibly zero-dimensional)
  int hyperbolic;  // number of split-off hyperbolic planes
};

// Split one hyperbolic plane off an isotropic form (arithmetic-complete
// fields): returns a (dim-2)-dimensional form.
inline QForm qf_split_hyperbolic(const QForm& q, const std::vector<Scalar>& w) {
  int n = q.dim();
  const FieldPtr& F = q.F;
  // bilinear form B(x,y) = sum a_i x_i y_i
  auto B = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    Scalar acc = scalar_zero(F);
    for (int i = 0; i < n; ++i)
      acc = scalar_add(acc, scalar_mul(q.entries[i], scalar_mul(x[i], y[i])));
    return acc;
  };
  // pick u with B(w,u) != 0
  std::vector<Scalar> u(n, scalar_zero(F));
  for (int i = 0; i < n; ++i) {
    Scalar bi = scalar_mul(q.entries[i], w[i]);
    if (!scalar_is_zero(bi)) {
      u[i] = scalar_one(F);
      break;
    }
  }
  Scalar bwu = B(w, u);
  // basis of the complement of span(w,u): project e_i orthogonally to the
  // hyperbolic plane H = span(w, u').  Use u' = u - (B(u,u)/(2 B(w,u))) w so
  // that B(u',u') = 0, then the pair (w,u') has Gram [[0,c],[c,0]].
  Scalar two = scalar_int(F, 2);
  Scalar corr = scalar_div(B(u, u), scalar_mul(two, bwu));
  std::vector<Scalar> up(n);
  for (int i = 0; i < n; ++i) up[i] = scalar_sub(u[i], scalar_mul(corr, w[i]));
  Scalar c = B(w, up);
  // projection: x - (B(x,up)/c) w - (B(x,w)/c) up; keep the first n-2
  // linearly independent projected basis vectors (tracked by incremental
  // row reduction on a shadow copy).
  std::vector<std::vector<Scalar>> comp;
  std::vector<std::vector<Scalar>> reduced;  // echelon shadow
  std::vector<int> leads;
  for (int i = 0; i < n && static_cast<int>(comp.size()) < n - 2; ++i) {
    std::vector<Scalar> e(n, scalar_zero(F));
    e[i] = scalar_one(F);
    Scalar c1 = scalar_div(B(e, up), c);
    Scalar c2 = scalar_div(B(e, w), c);
    for (int k = 0; k < n; ++k)
      e[k] = scalar_sub(e[k],
                        scalar_add(scalar_mul(c1, w[k]), scalar_mul(c2, up[k])));
    std::vector<Scalar> red = e;
    for (std::size_t t = 0; t < reduced.size(); ++t) {
      const Scalar& coeff = red[leads[t]];
      if (scalar_is_zero(coeff)) continue;
      Scalar cc = coeff;  // reduced rows are normalized to lead 1
      for (int k = 0; k < n; ++k)
        red[k] = scalar_sub(red[k], scalar_mul(cc, reduced[t][k]));
    }
    int lead = -1;
    for (int k = 0; k < n; ++k)
      if (!scalar_is_zero(red[k])) { lead = k; break; }
    if (lead < 0) continue;  // dependent on earlier picks
    Scalar pinv2 = scalar_inv(red[lead]);
    for (int k = 0; k < n; ++k) red[k] = scalar_mul(pinv2, red[k]);
    reduced.push_back(std::move(red));
    leads.push_back(lead);
    comp.push_back(std::move(e));
  }
  if (static_cast<int>(comp.size()) != n - 2)
    throw std::logic_error("hyperbolic split: complement extraction failed");
  // Gram of the complement, then diagonalize
  std::vector<std::vector<Scalar>> gram(n - 2, std::vector<Scalar>(n - 2, scalar_zero(F)));
  for (int i = 0; i < n - 2; ++i)
    for (int j = 0; j < n - 2; ++j) gram[i][j] = B(comp[i], comp[j]);
  return qf_from_gram(F, std::move(gram));
}

inline WittClass qf_witt_decompose(const QForm& q) {
  if (q.F->kind == FieldKind::Laurent) {
    auto sp = springer_split(q);
    WittClass wu = sp.unit.dim() ? qf_witt_decompose(sp.unit)
                                 : WittClass{QForm{sp.sub, {}}, 0};
    WittClass wr = sp.residue.dim() ? qf_witt_decompose(sp.residue)
                                    : WittClass{QForm{sp.sub, {}}, 0};
    std::vector<Scalar> kernel;
    for (const auto& e : wu.kernel.entries)
      kernel.push_back(laurent_embed(q.F, e));
    // t_n * residue kernel
    Scalar tn = make_laurent(
        q.F, scalar_one(q.F->base),
        [&] {
          std::vector<long long> e(q.F->vars.size(), 0);
          e.back() = 1;
          return e;
        }());
    for (const auto& e : wr.kernel.entries)
      kernel.push_back(scalar_mul(tn, laurent_embed(q.F, e)));
    return WittClass{QForm{q.F, std::move(kernel)},
                     wu.hyperbolic + wr.hyperbolic};
  }
  // Finite fields: anisotropic forms have dim <= 2, and the kernel is pinned
  // by dimension parity and the signed discriminant, so no constructive
  // splitting is needed.
  if (is_finite_field(q.F)) {
    const FieldPtr& F = q.F;
    Scalar dsgn = qf_signed_disc(q);
    if (q.dim() % 2 == 0) {
      if (is_square(dsgn)) return WittClass{QForm{F, {}}, q.dim() / 2};
      // anisotropic binary <1,-c> has signed disc c
      QForm ker = qform(F, {scalar_one(F), scalar_neg(dsgn)});
      return WittClass{ker, (q.dim() - 2) / 2};
    }
    // odd dim: kernel <u> with unsigned disc(q) = u * (-1)^m, m planes
    int m = (q.dim() - 1) / 2;
    Scalar disc = scalar_one(F);
    for (const auto& e : q.entries) disc = scalar_mul(disc, e);
    Scalar u = (m % 2 == 1) ? scalar_neg(disc) : disc;
    return WittClass{qform(F, {square_class(u)}), m};
  }
  // Normalize entries to square-class representatives each round; this keeps
  // coefficients small across repeated hyperbolic splits and is an isometry.
  auto normalize = [](QForm f) {
    for (auto& e : f.entries) e = square_class(e);
    return f;
  };
  QForm cur = normalize(q);
  int planes = 0;
  while (cur.dim() >= 2) {
    auto iso = qf_isotropic(cur);
    if (!iso.isotropic) break;
    cur = normalize(qf_split_hyperbolic(cur, *iso.witness));
    ++planes;
  }
  return WittClass{cur, planes};
}

inline bool qf_isometric(const QForm& a, const QForm& b);

// Invariant-based hyperbolicity test (no constructive decomposition): q is
// hyperbolic iff it is isometric to m*H, which over Q means zero signature,
// trivial signed discriminant and Hasse set equal to that of m*H (the
// ramification of (-1,-1)^{m(m-1)/2}, i.e. {infinity, 2} for odd exponent).
inline bool qf_is_hyperbolic(const QForm& q) {
  if (q.dim() % 2 != 0) return false;
  int m = q.dim() / 2;
  switch (q.F->kind) {
    case FieldKind::Q: {
      if (qf_signature(q) != 0) return false;
      if (!square_class_eq(qf_signed_disc(q), scalar_one(q.F))) return false;
      std::vector<BigInt> expected;
      if ((static_cast<long long>(m) * (m - 1) / 2) % 2 == 1)
        expected = {places::real(), BigInt(2)};
      return hasse_places(q) == expected;
    }
    case FieldKind::Fp:
    case FieldKind::Quad:
      return qf_isometric(q, qf_hyperbolic(q.F, m));
    case FieldKind::Laurent: {
      auto sp = springer_split(q);
      return (sp.unit.dim() == 0 || qf_is_hyperbolic(sp.unit)) &&
             (sp.residue.dim() == 0 || qf_is_hyperbolic(sp.residue));
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

inline bool witt_eq(const QForm& a, const QForm& b) {
  if (!same_field(a.F, b.F))
    throw FieldError(FieldErrorCode::MixedFields, "witt_eq mixed fields");
  // q1 ~ q2 in W(k) iff q1 perp -q2 is split (hyperbolic).
  QForm diff = qf_sum(a, qf_neg(b));
  return qf_is_hyperbolic(diff);
}

inline bool qf_isometric(const QForm& a, const QForm& b) {
  if (!same_field(a.F, b.F))
    throw FieldError(FieldErrorCode::MixedFields, "isometry mixed fields");
  if (a.dim() != b.dim()) return false;
  switch (a.F->kind) {
    case FieldKind::Q: {
      if (qf_signature(a) != qf_signature(b)) return false;
      if (!square_class_eq(qf_signed_disc(a), qf_signed_disc(b))) return false;
      return hasse_places(a) == hasse_places(b);
    }
    case FieldKind::Fp:
    case FieldKind::Quad: {
      if (!is_finite_field(a.F))
        throw FieldError(FieldErrorCode::UnsupportedField,
                         "isometry over Q(sqrt d) is not decided");
      // finite fields: dim + discriminant classify
      Scalar da = scalar_one(a.F), db = scalar_one(a.F);
      for (const auto& e : a.entries) da = scalar_mul(da, e);
      for (const auto& e : b.entries) db = scalar_mul(db, e);
      return square_class_eq(da, db);
    }
    case FieldKind::Laurent: {
      // dims equal + Witt classes equal (Witt cancellation)
      return witt_eq(a, b);
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

// --------------------------------------------------------------------------
// Similarity
// --------------------------------------------------------------------------

enum class SimilarVerdict { Similar, NotSimilar, Undecided };

struct SimilarResult {
  SimilarVerdict verdict;
  std::optional<Scalar> c;  // witness multiplier when Similar
};

inline std::vector<Scalar> square_class_reps(const FieldPtr& F) {
  // All square classes for backends where the group is finite.
  std::vector<Scalar> out;
  if (F->kind == FieldKind::Fp) {
    out.push_back(scalar_one(F));
    out.push_back(Scalar{F, fp_least_nonresidue(F->p)});
    return out;
  }
  if (F->kind == FieldKind::Laurent) {
    FieldPtr sub = laurent_pop_var(F);
    for (const auto& b : square_class_reps(sub)) {
      Scalar s0 = laurent_embed(F, b);
      const auto& l = std::get<LaurVal>(s0.v);
      out.push_back(s0);
      out.push_back(make_laurent(F, *l.coeff, [&] {
        auto e = l.exps;
        e.back() = 1;
        return e;
      }()));
    }
    return out;
  }
  throw FieldError(FieldErrorCode::UnsupportedField,
                   "square-class group not finite");
}

inline SimilarResult qf_similar(const QForm& a, const QForm& b) {
  if (!same_field(a.F, b.F))
    throw FieldError(FieldErrorCode::MixedFields, "similar mixed fields");
  if (a.dim() != b.dim()) return {SimilarVerdict::NotSimilar, std::nullopt};
  switch (a.F->kind) {
    case FieldKind::Q: {
      // Complete for even dimension with trivial signed discriminant: in that
      // case the Hasse invariant is unchanged by scaling (the twist law
      // s_v(<c>q) = s_v(q)(c,c)^{n(n-1)/2}(c,disc^{n-1}) collapses), so the
      // isometry class of <c>q depends only on sign(c); test c = +-1.
      bool trivial_disc =
          a.dim() % 2 == 0 &&
          square_class_eq(qf_signed_disc(a), scalar_one(a.F)) &&
          square_class_eq(qf_signed_disc(b), scalar_one(a.F));
      if (trivial_disc) {
        if (qf_isometric(a, b))
          return {SimilarVerdict::Similar, scalar_one(a.F)};
        if (qf_isometric(qf_neg(a), b))
          return {SimilarVerdict::Similar, scalar_int(a.F, -1)};
        return {SimilarVerdict::NotSimilar, std::nullopt};
      }
      // general even-dimensional search over a bounded candidate set
      std::vector<Scalar> cands{scalar_one(a.F), scalar_int(a.F, -1)};
      for (const auto& x : a.entries)
        for (const auto& y : b.entries)
          cands.push_back(square_class(scalar_mul(x, y)));
      for (const auto& c : cands)
        if (qf_isometric(qf_scale(c, a), b)) return {SimilarVerdict::Similar, c};
      // invariant-based refutation: dims/disc mismatch already handled; if the
      // signatures differ in absolute value, scaling cannot fix it
      if (std::abs(qf_signature(a)) != std::abs(qf_signature(b)))
        return {SimilarVerdict::NotSimilar, std::nullopt};
      return {SimilarVerdict::Undecided, std::nullopt};
    }
    case FieldKind::Fp:
    case FieldKind::Quad: {
      if (!is_finite_field(a.F))
        throw FieldError(FieldErrorCode::UnsupportedField, "similar over Q(sqrt d)");
      std::vector<Scalar> reps;
      if (a.F->kind == FieldKind::Fp) reps = square_class_reps(a.F);
      else {
        reps.push_back(scalar_one(a.F));
        for (const auto& x : finite_field_elements(a.F))
          if (!scalar_is_zero(x) && !is_square(x)) {
            reps.push_back(x);
            break;
          }
      }
      for (const auto& c : reps)
        if (qf_isometric(qf_scale(c, a), b)) return {SimilarVerdict::Similar, c};
      return {SimilarVerdict::NotSimilar, std::nullopt};
    }
    case FieldKind::Laurent: {
      if (a.F->base->kind == FieldKind::Fp) {
        // finite square-class group: exhaustive, hence complete
        for (const auto& c : square_class_reps(a.F))
          if (qf_isometric(qf_scale(c, a), b))
            return {SimilarVerdict::Similar, c};
        return {SimilarVerdict::NotSimilar, std::nullopt};
      }
      // Q-based tower: candidate products of entries (sound, not complete)
      std::vector<Scalar> cands{scalar_one(a.F),
                                scalar_int(a.F, -1)};
      for (const auto& x : a.entries)
        for (const auto& y : b.entries)
          cands.push_back(square_class(scalar_mul(x, y)));
      for (const auto& c : cands)
        if (qf_isometric(qf_scale(c, a), b)) return {SimilarVerdict::Similar, c};
      return {SimilarVerdict::Undecided, std::nullopt};
    }
  }
  throw FieldError(FieldErrorCode::BadDescriptor, "bad field kind");
}

// --------------------------------------------------------------------------
// Transfers
// --------------------------------------------------------------------------

// Additive (Scharlau) transfer along a functional s: E -> k given by
// s(1) = s1, s(sqrt d) = s2 (trace means s1 = 2, s2 = 0).  q is a diagonal
// form over the field E = k(sqrt d).
inline QForm transfer_additive(const QForm& qE, const Scalar& s1,
                               const Scalar& s2) {
  const FieldPtr& E = qE.F;
  if (E->kind != FieldKind::Quad)
    throw FieldError(FieldErrorCode::UnsupportedField,
                     "additive transfer needs a quadratic field layer");
  const FieldPtr& k = E->base;
  if (scalar_is_zero(s1) && scalar_is_zero(s2))
    throw QFormError(QFormErrorCode::DegenerateFunctional, "zero functional");
  // s(y1 + y2 sqrt d) = s1 y1 + s2 y2
  auto s = [&](const Scalar& y) {
    const auto& qv = std::get<QuadVal>(y.v);
    return scalar_add(scalar_mul(s1, *qv.a), scalar_mul(s2, *qv.b));
  };
  std::vector<std::vector<Scalar>> gram;
  int n = qE.dim();
  gram.assign(2 * n, std::vector<Scalar>(2 * n, scalar_zero(k)));
  Scalar half = scalar_inv(scalar_int(k, 2));
  for (int i = 0; i < n; ++i) {
    const Scalar& c = qE.entries[i];
    // basis of the i-th E-line over k: e, sqrt(d) e;  B(x,y) = s(c x y)
    Scalar sq = make_quad(E, scalar_zero(k), scalar_one(k));
    Scalar b11 = s(c);                                    // s(c*1*1)
    Scalar b12 = s(scalar_mul(c, sq));                    // s(c*sqrt d)
    Scalar b22 = s(scalar_mul(c, scalar_mul(sq, sq)));    // s(c*d)
    gram[2 * i][2 * i] = b11;
    gram[2 * i][2 * i + 1] = b12;
    gram[2 * i + 1][2 * i] = b12;
    gram[2 * i + 1][2 * i + 1] = b22;
  }
  return qf_from_gram(k, std::move(gram));
}

inline QForm transfer_additive_trace(const QForm& qE) {
  const FieldPtr& k = qE.F->base;
  return transfer_additive(qE, scalar_int(k, 2), scalar_zero(k));
}

// Split-etale additive transfer: T(q1, q2) = q1 perp q2.
inline QForm transfer_additive_split(const QForm& q1, const QForm& q2) {
  return qf_sum(q1, q2);
}

// Multiplicative transfer N_{E/k}(q): the restriction of iota(q) (x) q to the
// switch-fixed subspace, computed on the symmetrized basis.
inline QForm transfer_mult(const QForm& qE) {
  const FieldPtr& E = qE.F;
  if (E->kind != FieldKind::Quad)
    throw FieldError(FieldErrorCode::UnsupportedField,
                     "multiplicative transfer needs a quadratic field layer");
  const FieldPtr& k = E->base;
  const Scalar& d = *E->d;
  int n = qE.dim();
  auto conj = [&](const Scalar& x) {
    const auto& qv = std::get<QuadVal>(x.v);
    return make_quad(E, *qv.a, scalar_neg(*qv.b));
  };
  std::vector<Scalar> diag_entries;
  std::vector<std::vector<std::vector<Scalar>>> blocks;  // 2x2 per pair
  for (int i = 0; i < n; ++i) {
    Scalar Nc = [&] {
      Scalar m = scalar_mul(conj(qE.entries[i]), qE.entries[i]);
      const auto& qv = std::get<QuadVal>(m.v);
      return *qv.a;  // imaginary part is zero
    }();
    diag_entries.push_back(Nc);
  }
  std::vector<std::vector<Scalar>> gram;
  int dim = n + n * (n - 1);  // n fixed vectors + 2 per pair
  gram.assign(dim, std::vector<Scalar>(dim, scalar_zero(k)));
  for (int i = 0; i < n; ++i) gram[i][i] = diag_entries[i];
  int pos = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // iota(c_i) c_j = a + b sqrt(d)
      Scalar m = scalar_mul(conj(qE.entries[i]), qE.entries[j]);
      const auto& qv = std::get<QuadVal>(m.v);
      Scalar a2 = scalar_add(*qv.a, *qv.a);  // tr = 2a
      Scalar cross = scalar_mul(scalar_int(k, 2), scalar_mul(*qv.b, d));
      gram[pos][pos] = a2;
      gram[pos][pos + 1] = cross;
      gram[pos + 1][pos] = cross;
      gram[pos + 1][pos + 1] = scalar_mul(d, a2);
      pos += 2;
    }
  return qf_from_gram(k, std::move(gram));
}

// Split-etale multiplicative transfer: N(q1, q2) = q1 (x) q2.
inline QForm transfer_mult_split(const QForm& q1, const QForm& q2) {
  return qf_tensor(q1, q2);
}

// --------------------------------------------------------------------------
// Exterior square and P_n
// --------------------------------------------------------------------------

inline QForm qf_lambda2(const QForm& q) {
  if (q.dim() < 2)
    throw QFormError(QFormErrorCode::DimTooSmall, "lambda^2 needs dim >= 2");
  std::vector<Scalar> e;
  for (int i = 0; i < q.dim(); ++i)
    for (int j = i + 1; j < q.dim(); ++j)
      e.push_back(scalar_mul(q.entries[i], q.entries[j]));
  return QForm{q.F, std::move(e)};
}

// P_n(q) = dim q / 2 + lambda^2(q) - 2^{n-1} q in W(k), returned as the Witt
// class of an explicit representative.  The I^n membership precondition is
// enforced by the caller (cohomology layer owns the e_n machinery).
inline WittClass qf_P_n(int n, const QForm& q) {
  if (q.dim() % 2 != 0)
    throw QFormError(QFormErrorCode::NotInIdeal, "P_n input must be even-dimensional");
  const FieldPtr& F = q.F;
  int m = q.dim() / 2;
  std::vector<Scalar> rep;
  // the integer m in W(k) is represented by m * <1>
  for (int i = 0; i < m; ++i) rep.push_back(scalar_one(F));
  QForm l2 = qf_lambda2(q);
  rep.insert(rep.end(), l2.entries.begin(), l2.entries.end());
  long long scale = 1;
  for (int i = 1; i < n; ++i) scale *= 2;
  QForm neg_q = qf_neg(q);
  for (long long t = 0; t < scale; ++t)
    rep.insert(rep.end(), neg_q.entries.begin(), neg_q.entries.end());
  return qf_witt_decompose(QForm{F, std::move(rep)});
}

}  // namespace bioct
