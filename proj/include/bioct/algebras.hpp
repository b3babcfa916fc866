// Composition algebras via Cayley-Dickson doubling, tensor products with
// involution, corestrictions along a quadratic etale extension (fixed points
// of the semilinear switch on iota(C) (x)_E C), structural subspaces (skew,
// hermitian, nucleus, center), the Malcev-algebra centroid of the skew part,
// and the decomposition algorithm recovering the factors (or the field of
// definition) of a product algebra.
//
// Structure tensors are stored sparsely: for the algebras built here every
// basis product has at most a handful of nonzero coordinates, which keeps all
// the operator calculus cheap even at dimension 64.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bioct/fields.hpp"
#include "bioct/linalg.hpp"
#include "bioct/qforms.hpp"

namespace bioct {

enum class AlgebraErrorCode {
  ZeroParameter,
  UnsupportedField,
  InvalidDims,
  NotANonsquare,
  UnexpectedCentroidDim,
  NotScalarMultiple,
};

struct AlgebraError : std::runtime_error {
  AlgebraErrorCode code;
  AlgebraError(AlgebraErrorCode c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

// --------------------------------------------------------------------------
// Runtime-field context so the linalg templates work on dynamic Scalars.
// --------------------------------------------------------------------------

struct ScalarCtx {
  FieldPtr F;
  using Elt = Scalar;
  FieldPtr desc() const { return F; }
  Elt zero() const { return scalar_zero(F); }
  Elt one() const { return scalar_one(F); }
  Elt from_int(long long n) const { return scalar_int(F, n); }
  Elt add(const Elt& a, const Elt& b) const { return scalar_add(a, b); }
  Elt sub(const Elt& a, const Elt& b) const { return scalar_sub(a, b); }
  Elt mul(const Elt& a, const Elt& b) const { return scalar_mul(a, b); }
  Elt neg(const Elt& a) const { return scalar_neg(a); }
  Elt inv(const Elt& a) const { return scalar_inv(a); }
  bool is_zero(const Elt& a) const { return scalar_is_zero(a); }
  bool eq(const Elt& a, const Elt& b) const { return scalar_eq(a, b); }
  Scalar to_scalar(const Elt& a) const { return a; }
  Elt from_scalar(const Scalar& s) const { return s; }
};

// --------------------------------------------------------------------------
// Algebras with involution
// --------------------------------------------------------------------------

using SRow = std::vector<std::pair<int, Scalar>>;  // sparse coordinate vector
using AVec = std::vector<Scalar>;                  // dense coordinate vector

struct Algebra {
  FieldPtr F;
  int dim = 0;
  std::vector<SRow> table;   // [i*dim+j] -> coordinates of e_i e_j
  AVec unit;                 // coordinates of 1
  std::vector<SRow> invol;   // invol[i] -> coordinates of sigma(e_i)
  const SRow& row(int i, int j) const { return table[static_cast<std::size_t>(i) * dim + j]; }
};

inline AVec avec_zero(const FieldPtr& F, int n) {
  return AVec(static_cast<std::size_t>(n), scalar_zero(F));
}

inline bool avec_eq(const AVec& x, const AVec& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!scalar_eq(x[i], y[i])) return false;
  return true;
}

inline bool avec_is_zero(const AVec& x) {
  for (const auto& e : x)
    if (!scalar_is_zero(e)) return false;
  return true;
}

inline AVec avec_add(const AVec& x, const AVec& y) {
  AVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = scalar_add(r[i], y[i]);
  return r;
}

inline AVec avec_sub(const AVec& x, const AVec& y) {
  AVec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = scalar_sub(r[i], y[i]);
  return r;
}

inline AVec avec_scale(const Scalar& c, const AVec& x) {
  AVec r = x;
  for (auto& e : r) e = scalar_mul(c, e);
  return r;
}

inline SRow srow_from_dense(const AVec& v) {
  SRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!scalar_is_zero(v[i])) r.emplace_back(static_cast<int>(i), v[i]);
  return r;
}

inline AVec srow_to_dense(const FieldPtr& F, int n, const SRow& r) {
  AVec v = avec_zero(F, n);
  for (const auto& [k, c] : r) v[static_cast<std::size_t>(k)] = scalar_add(v[static_cast<std::size_t>(k)], c);
  return v;
}

inline SRow srow_normalize(const FieldPtr& F, int n, const SRow& r) {
  return srow_from_dense(srow_to_dense(F, n, r));
}

// Compares two normalized sparse rows entrywise.
inline bool srow_eq(const SRow& x, const SRow& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t t = 0; t < x.size(); ++t)
    if (x[t].first != y[t].first || !scalar_eq(x[t].second, y[t].second))
      return false;
  return true;
}

inline AVec alg_mul(const Algebra& A, const AVec& x, const AVec& y) {
  AVec acc = avec_zero(A.F, A.dim);
  for (int i = 0; i < A.dim; ++i) {
    if (scalar_is_zero(x[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; j < A.dim; ++j) {
      if (scalar_is_zero(y[static_cast<std::size_t>(j)])) continue;
      Scalar xy = scalar_mul(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)]);
      for (const auto& [k, c] : A.row(i, j))
        acc[static_cast<std::size_t>(k)] = scalar_add(acc[static_cast<std::size_t>(k)], scalar_mul(xy, c));
    }
  }
  return acc;
}

inline SRow sp_mul(const Algebra& A, const SRow& x, const SRow& y) {
  AVec acc = avec_zero(A.F, A.dim);
  for (const auto& [i, xi] : x)
    for (const auto& [j, yj] : y) {
      Scalar xy = scalar_mul(xi, yj);
      for (const auto& [k, c] : A.row(i, j))
        acc[static_cast<std::size_t>(k)] = scalar_add(acc[static_cast<std::size_t>(k)], scalar_mul(xy, c));
    }
  return srow_from_dense(acc);
}

inline SRow sp_invol(const Algebra& A, const SRow& x) {
  AVec acc = avec_zero(A.F, A.dim);
  for (const auto& [i, xi] : x)
    for (const auto& [k, c] : A.invol[static_cast<std::size_t>(i)])
      acc[static_cast<std::size_t>(k)] = scalar_add(acc[static_cast<std::size_t>(k)], scalar_mul(xi, c));
  return srow_from_dense(acc);
}

inline AVec alg_invol(const Algebra& A, const AVec& x) {
  return srow_to_dense(A.F, A.dim, sp_invol(A, srow_from_dense(x)));
}

inline AVec alg_commutator(const Algebra& A, const AVec& x, const AVec& y) {
  return avec_sub(alg_mul(A, x, y), alg_mul(A, y, x));
}

inline AVec alg_associator(const Algebra& A, const AVec& x, const AVec& y,
                           const AVec& z) {
  return avec_sub(alg_mul(A, alg_mul(A, x, y), z),
                  alg_mul(A, x, alg_mul(A, y, z)));
}

inline AVec alg_basis_vec(const Algebra& A, int i) {
  AVec v = avec_zero(A.F, A.dim);
  v[static_cast<std::size_t>(i)] = scalar_one(A.F);
  return v;
}

inline AVec alg_random(const Algebra& A, Rng& rng, long long height = 3) {
  AVec v;
  v.reserve(static_cast<std::size_t>(A.dim));
  for (int i = 0; i < A.dim; ++i)
    v.push_back(scalar_int(A.F, rng.range(-height, height)));
  return v;
}

// e_i * y and x * e_j without building a basis vector.
inline AVec alg_mul_be(const Algebra& A, int i, const AVec& y) {
  AVec acc = avec_zero(A.F, A.dim);
  for (int j = 0; j < A.dim; ++j) {
    if (scalar_is_zero(y[static_cast<std::size_t>(j)])) continue;
    for (const auto& [k, c] : A.row(i, j))
      acc[static_cast<std::size_t>(k)] = scalar_add(
          acc[static_cast<std::size_t>(k)], scalar_mul(y[static_cast<std::size_t>(j)], c));
  }
  return acc;
}

inline AVec alg_mul_eb(const Algebra& A, const AVec& x, int j) {
  AVec acc = avec_zero(A.F, A.dim);
  for (int i = 0; i < A.dim; ++i) {
    if (scalar_is_zero(x[static_cast<std::size_t>(i)])) continue;
    for (const auto& [k, c] : A.row(i, j))
      acc[static_cast<std::size_t>(k)] = scalar_add(
          acc[static_cast<std::size_t>(k)], scalar_mul(x[static_cast<std::size_t>(i)], c));
  }
  return acc;
}

// Checks the AlgebraWithInvolution invariants: two-sided unit, involution of
// order 2, anti-multiplicativity on all basis pairs.
inline bool alg_validate(const Algebra& A) {
  SRow u = srow_from_dense(A.unit);
  for (int j = 0; j < A.dim; ++j) {
    SRow ej{{j, scalar_one(A.F)}};
    if (!srow_eq(srow_normalize(A.F, A.dim, sp_mul(A, u, ej)), ej)) return false;
    if (!srow_eq(srow_normalize(A.F, A.dim, sp_mul(A, ej, u)), ej)) return false;
    if (!srow_eq(srow_normalize(A.F, A.dim, sp_invol(A, sp_invol(A, ej))), ej))
      return false;
  }
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) {
      SRow lhs = sp_invol(A, A.row(i, j));
      SRow rhs = sp_mul(A, A.invol[static_cast<std::size_t>(j)], A.invol[static_cast<std::size_t>(i)]);
      if (!srow_eq(srow_normalize(A.F, A.dim, lhs), srow_normalize(A.F, A.dim, rhs)))
        return false;
    }
  return true;
}

// --------------------------------------------------------------------------
// Exact square roots (used for splitting the centroid)
// --------------------------------------------------------------------------

inline std::optional<Scalar> scalar_sqrt(const Scalar& x) {
  if (scalar_is_zero(x)) return scalar_zero(x.F);
  switch (x.F->kind) {
    case FieldKind::Q: {
      const Rat& r = std::get<Rat>(x.v);
      if (r < 0) return std::nullopt;
      BigInt num = boost::multiprecision::numerator(r);
      BigInt den = boost::multiprecision::denominator(r);
      BigInt sn = boost::multiprecision::sqrt(num);
      BigInt sd = boost::multiprecision::sqrt(den);
      if (sn * sn != num || sd * sd != den) return std::nullopt;
      return make_rat(Rat(sn, sd));
    }
    case FieldKind::Fp: {
      if (!is_square(x)) return std::nullopt;
      return Scalar{x.F, fp_sqrt(std::get<std::uint64_t>(x.v), x.F->p)};
    }
    case FieldKind::Quad: {
      const auto& q = std::get<QuadVal>(x.v);
      const Scalar& a = *q.a;
      const Scalar& b = *q.b;
      const Scalar& d = *x.F->d;
      if (scalar_is_zero(b)) {
        if (auto s = scalar_sqrt(a)) return make_quad(x.F, *s, scalar_zero(a.F));
        if (auto t = scalar_sqrt(scalar_div(a, d)))
          return make_quad(x.F, scalar_zero(a.F), *t);
        return std::nullopt;
      }
      // (u + v sqrt(d))^2 = a + b sqrt(d): u^2 is a root of t^2 - a t + d b^2/4.
      Scalar disc = scalar_sub(scalar_mul(a, a), scalar_mul(d, scalar_mul(b, b)));
      auto sq = scalar_sqrt(disc);
      if (!sq) return std::nullopt;
      Scalar two = scalar_int(a.F, 2);
      for (int sign = 0; sign < 2; ++sign) {
        Scalar t = scalar_div(sign ? scalar_sub(a, *sq) : scalar_add(a, *sq), two);
        auto u = scalar_sqrt(t);
        if (!u || scalar_is_zero(*u)) continue;
        Scalar v = scalar_div(b, scalar_mul(two, *u));
        Scalar cand_norm = scalar_add(scalar_mul(*u, *u), scalar_mul(d, scalar_mul(v, v)));
        if (scalar_eq(cand_norm, a) &&
            scalar_eq(scalar_mul(two, scalar_mul(*u, v)), b))
          return make_quad(x.F, *u, v);
      }
      return std::nullopt;
    }
    case FieldKind::Laurent: {
      const auto& l = std::get<LaurVal>(x.v);
      for (long long e : l.exps)
        if (e % 2 != 0) return std::nullopt;
      auto cs = scalar_sqrt(*l.coeff);
      if (!cs) return std::nullopt;
      std::vector<long long> half = l.exps;
      for (auto& e : half) e /= 2;
      return make_laurent(x.F, *cs, half);
    }
  }
  return std::nullopt;
}

// --------------------------------------------------------------------------
// Cayley-Dickson doubling
// --------------------------------------------------------------------------

struct CompositionAlgebraParams {
  FieldPtr F;
  std::vector<Scalar> mus;  // 0..3 nonzero Cayley-Dickson parameters
};

struct CompositionAlgebra {
  Algebra A;
  QForm norm;
};

namespace detail {
inline SRow srow_scale(const Scalar& c, const SRow& r) {
  SRow out;
  out.reserve(r.size());
  for (const auto& [k, v] : r) out.emplace_back(k, scalar_mul(c, v));
  return out;
}
inline SRow srow_shift(const SRow& r, int off) {
  SRow out;
  out.reserve(r.size());
  for (const auto& [k, v] : r) out.emplace_back(k + off, v);
  return out;
}
}  // namespace detail

// Doubling rule (a,b)(c,d) = (ac + mu conj(d) b, da + b conj(c)) with
// conj(a,b) = (conj(a), -b); norm n((a,b)) = n(a) - mu n(b).
inline CompositionAlgebra cayley_dickson(const CompositionAlgebraParams& P) {
  const FieldPtr& F = P.F;
  if (F->kind == FieldKind::Laurent)
    throw AlgebraError(AlgebraErrorCode::UnsupportedField,
                       "algebra construction over a Laurent tower");
  if (P.mus.size() > 3)
    throw AlgebraError(AlgebraErrorCode::InvalidDims,
                       "at most three Cayley-Dickson parameters");
  for (const auto& mu : P.mus) {
    if (!same_field(mu.F, F))
      throw FieldError(FieldErrorCode::MixedFields, "parameter in wrong field");
    if (scalar_is_zero(mu))
      throw AlgebraError(AlgebraErrorCode::ZeroParameter,
                         "zero Cayley-Dickson parameter");
  }
  int n = 1;
  std::vector<SRow> tab{SRow{{0, scalar_one(F)}}};
  AVec sg{scalar_one(F)};  // diagonal of the standard involution
  std::vector<Scalar> norm_entries{scalar_one(F)};
  for (const auto& mu : P.mus) {
    int n2 = 2 * n;
    std::vector<SRow> nt(static_cast<std::size_t>(n2) * n2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const SRow& ij = tab[static_cast<std::size_t>(i) * n + j];
        const SRow& ji = tab[static_cast<std::size_t>(j) * n + i];
        // (e_i,0)(e_j,0) = (e_i e_j, 0)
        nt[static_cast<std::size_t>(i) * n2 + j] = ij;
        // (e_i,0)(0,e_j) = (0, e_j e_i)
        nt[static_cast<std::size_t>(i) * n2 + (n + j)] = detail::srow_shift(ji, n);
        // (0,e_i)(e_j,0) = (0, e_i conj(e_j)) = sg_j (0, e_i e_j)
        nt[static_cast<std::size_t>(n + i) * n2 + j] =
            detail::srow_shift(detail::srow_scale(sg[static_cast<std::size_t>(j)], ij), n);
        // (0,e_i)(0,e_j) = (mu conj(e_j) e_i, 0) = mu sg_j (e_j e_i, 0)
        nt[static_cast<std::size_t>(n + i) * n2 + (n + j)] =
            detail::srow_scale(scalar_mul(mu, sg[static_cast<std::size_t>(j)]), ji);
      }
    sg.resize(static_cast<std::size_t>(n2), scalar_neg(scalar_one(F)));
    std::size_t m = norm_entries.size();
    for (std::size_t t = 0; t < m; ++t)
      norm_entries.push_back(scalar_mul(scalar_neg(mu), norm_entries[t]));
    n = n2;
    tab = std::move(nt);
  }
  Algebra A;
  A.F = F;
  A.dim = n;
  A.table = std::move(tab);
  A.unit = avec_zero(F, n);
  A.unit[0] = scalar_one(F);
  A.invol.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    A.invol[static_cast<std::size_t>(i)] = SRow{{i, sg[static_cast<std::size_t>(i)]}};
  return CompositionAlgebra{std::move(A), qform(F, std::move(norm_entries))};
}

// --------------------------------------------------------------------------
// Tensor product with involution gamma_1 (x) gamma_2
// --------------------------------------------------------------------------

inline Algebra alg_tensor(const Algebra& X, const Algebra& Y) {
  if (!same_field(X.F, Y.F))
    throw FieldError(FieldErrorCode::MixedFields, "tensor over mixed fields");
  Algebra A;
  A.F = X.F;
  A.dim = X.dim * Y.dim;
  int dY = Y.dim;
  A.table.resize(static_cast<std::size_t>(A.dim) * A.dim);
  for (int i1 = 0; i1 < X.dim; ++i1)
    for (int j1 = 0; j1 < dY; ++j1)
      for (int i2 = 0; i2 < X.dim; ++i2)
        for (int j2 = 0; j2 < dY; ++j2) {
          SRow r;
          for (const auto& [m, cm] : X.row(i1, i2))
            for (const auto& [q, cq] : Y.row(j1, j2))
              r.emplace_back(m * dY + q, scalar_mul(cm, cq));
          A.table[static_cast<std::size_t>(i1 * dY + j1) * A.dim + (i2 * dY + j2)] = std::move(r);
        }
  A.unit = avec_zero(A.F, A.dim);
  for (int i = 0; i < X.dim; ++i)
    for (int j = 0; j < dY; ++j)
      A.unit[static_cast<std::size_t>(i * dY + j)] =
          scalar_mul(X.unit[static_cast<std::size_t>(i)], Y.unit[static_cast<std::size_t>(j)]);
  A.invol.resize(static_cast<std::size_t>(A.dim));
  for (int i = 0; i < X.dim; ++i)
    for (int j = 0; j < dY; ++j) {
      SRow r;
      for (const auto& [m, cm] : X.invol[static_cast<std::size_t>(i)])
        for (const auto& [q, cq] : Y.invol[static_cast<std::size_t>(j)])
          r.emplace_back(m * dY + q, scalar_mul(cm, cq));
      A.invol[static_cast<std::size_t>(i * dY + j)] = std::move(r);
    }
  return A;
}

// --------------------------------------------------------------------------
// Corestriction: fixed points of the switch s(iota x (x) y) = iota y (x) x
// --------------------------------------------------------------------------

// Basis ordering (design decision): first the symmetrized vectors
// u_ij = iota e_i (x) e_j + iota e_j (x) e_i for i <= j in lex order, then
// w_ij = sqrt(d) (iota e_i (x) e_j - iota e_j (x) e_i) for i < j in lex order.
inline int cor_sym_index(int n, int i, int j) {
  return i * n - i * (i - 1) / 2 + (j - i);
}

inline int cor_anti_index(int n, int i, int j) {
  return n * (n + 1) / 2 + i * (n - 1) - i * (i - 1) / 2 + (j - i - 1);
}

namespace detail {

struct EtStruct {
  QuadraticEtale E;
  int n;  // dimension of C over E
  std::vector<std::vector<std::pair<int, EtaleElt>>> tab;  // [i*n+j]
  std::vector<int> sg;  // involution diagonal of C, entries +-1
};

inline EtaleElt et_zero(const QuadraticEtale& E) {
  return etale_elt(E, scalar_zero(E.base), scalar_zero(E.base));
}

inline EtaleElt et_add(const QuadraticEtale& E, const EtaleElt& x, const EtaleElt& y) {
  if (E.split()) return EtaleElt{scalar_add(x.a, y.a), scalar_add(x.b, y.b)};
  return EtaleElt{scalar_add(x.a, y.a), scalar_zero(E.base)};
}

inline EtaleElt et_mul(const QuadraticEtale& E, const EtaleElt& x, const EtaleElt& y) {
  if (E.split()) return EtaleElt{scalar_mul(x.a, y.a), scalar_mul(x.b, y.b)};
  return EtaleElt{scalar_mul(x.a, y.a), scalar_zero(E.base)};
}

inline EtaleElt et_neg(const QuadraticEtale& E, const EtaleElt& x) {
  if (E.split()) return EtaleElt{scalar_neg(x.a), scalar_neg(x.b)};
  return EtaleElt{scalar_neg(x.a), scalar_zero(E.base)};
}

inline bool et_is_zero(const QuadraticEtale& E, const EtaleElt& x) {
  if (E.split()) return scalar_is_zero(x.a) && scalar_is_zero(x.b);
  return scalar_is_zero(x.a);
}

inline EtaleElt et_int(const QuadraticEtale& E, long long n) {
  if (E.split()) return EtaleElt{scalar_int(E.base, n), scalar_int(E.base, n)};
  return etale_elt(E, scalar_int(E.base, n), scalar_zero(E.base));
}

// The distinguished square root: sqrt(d) in the field case, (1,-1) (a square
// root of 1 negated by the switch) in the split case.
inline EtaleElt et_delta(const QuadraticEtale& E) {
  if (E.split())
    return EtaleElt{scalar_one(E.base), scalar_neg(scalar_one(E.base))};
  return EtaleElt{make_quad(E.ext, scalar_zero(E.base), scalar_one(E.base)),
                  scalar_zero(E.base)};
}

// x = alpha + beta * delta with alpha, beta over the base field.
inline std::pair<Scalar, Scalar> et_parts(const QuadraticEtale& E, const EtaleElt& x) {
  if (E.split()) {
    Scalar two = scalar_int(E.base, 2);
    return {scalar_div(scalar_add(x.a, x.b), two),
            scalar_div(scalar_sub(x.a, x.b), two)};
  }
  const auto& q = std::get<QuadVal>(x.a.v);
  return {*q.a, *q.b};
}

inline Algebra corestriction_from(const EtStruct& S) {
  const QuadraticEtale& E = S.E;
  const FieldPtr& k = E.base;
  int n = S.n;
  int N = n * n;
  // Sparse E-matrix of each fixed-basis vector.
  struct Entry { int i, j; EtaleElt v; };
  auto basis_mat = [&](int t) -> std::vector<Entry> {
    int nsym = n * (n + 1) / 2;
    EtaleElt one = et_int(E, 1);
    if (t < nsym) {
      // invert lex index over i <= j
      for (int i = 0; i < n; ++i) {
        int base = cor_sym_index(n, i, i);
        if (t <= cor_sym_index(n, i, n - 1)) {
          int j = i + (t - base);
          if (i == j) return {Entry{i, i, et_int(E, 2)}};
          return {Entry{i, j, one}, Entry{j, i, one}};
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      if (i + 1 >= n) break;
      int base = cor_anti_index(n, i, i + 1);
      int last = cor_anti_index(n, i, n - 1);
      if (t >= base && t <= last) {
        int j = i + 1 + (t - base);
        EtaleElt delta = et_delta(E);
        return {Entry{i, j, delta}, Entry{j, i, et_neg(E, delta)}};
      }
    }
    throw std::logic_error("corestriction basis index out of range");
  };
  std::vector<std::vector<Entry>> basis(static_cast<std::size_t>(N));
  for (int t = 0; t < N; ++t) basis[static_cast<std::size_t>(t)] = basis_mat(t);

  auto to_coords = [&](const std::vector<std::vector<EtaleElt>>& grid) {
    AVec coords = avec_zero(k, N);
    Scalar two = scalar_int(k, 2);
    for (int m = 0; m < n; ++m)
      for (int q = m; q < n; ++q) {
        auto [alpha, beta] = et_parts(E, grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(q)]);
        if (m == q) {
          coords[static_cast<std::size_t>(cor_sym_index(n, m, m))] = scalar_div(alpha, two);
        } else {
          coords[static_cast<std::size_t>(cor_sym_index(n, m, q))] = alpha;
          coords[static_cast<std::size_t>(cor_anti_index(n, m, q))] = beta;
        }
      }
    return coords;
  };

  Algebra A;
  A.F = k;
  A.dim = N;
  A.table.resize(static_cast<std::size_t>(N) * N);
  std::vector<std::vector<EtaleElt>> grid(
      static_cast<std::size_t>(n), std::vector<EtaleElt>(static_cast<std::size_t>(n), et_zero(E)));
  for (int t = 0; t < N; ++t)
    for (int u = 0; u < N; ++u) {
      for (auto& row : grid) std::fill(row.begin(), row.end(), et_zero(E));
      for (const auto& ea : basis[static_cast<std::size_t>(t)])
        for (const auto& eb : basis[static_cast<std::size_t>(u)]) {
          // (iota e_i (x) e_j)(iota e_k (x) e_l)
          //   = sum conj(c[i][k][m]) c[j][l][q] iota e_m (x) e_q
          EtaleElt ab = et_mul(E, ea.v, eb.v);
          for (const auto& [m, cm] : S.tab[static_cast<std::size_t>(ea.i) * n + eb.i])
            for (const auto& [q, cq] : S.tab[static_cast<std::size_t>(ea.j) * n + eb.j]) {
              EtaleElt term = et_mul(E, ab, et_mul(E, etale_conj(E, cm), cq));
              grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(q)] =
                  et_add(E, grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(q)], term);
            }
        }
      A.table[static_cast<std::size_t>(t) * N + u] = srow_from_dense(to_coords(grid));
    }
  A.unit = avec_zero(k, N);
  A.unit[static_cast<std::size_t>(cor_sym_index(n, 0, 0))] =
      scalar_div(scalar_one(k), scalar_int(k, 2));
  // gamma (x) gamma is diagonal on both u_ij and w_ij with sign sg_i sg_j.
  A.invol.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int s = S.sg[static_cast<std::size_t>(i)] * S.sg[static_cast<std::size_t>(j)];
      Scalar sc = scalar_int(k, s);
      A.invol[static_cast<std::size_t>(cor_sym_index(n, i, j))] =
          SRow{{cor_sym_index(n, i, j), sc}};
      if (i < j)
        A.invol[static_cast<std::size_t>(cor_anti_index(n, i, j))] =
            SRow{{cor_anti_index(n, i, j), sc}};
    }
  return A;
}

inline std::vector<int> invol_diagonal_signs(const Algebra& C) {
  std::vector<int> sg(static_cast<std::size_t>(C.dim), 1);
  for (int i = 0; i < C.dim; ++i) {
    const SRow& r = C.invol[static_cast<std::size_t>(i)];
    if (r.size() != 1 || r[0].first != i)
      throw std::logic_error("expected diagonal involution");
    sg[static_cast<std::size_t>(i)] = scalar_eq(r[0].second, scalar_one(C.F)) ? 1 : -1;
  }
  return sg;
}

}  // namespace detail

// Corestriction along E = k(sqrt(d)) of the octonion (or quaternion) algebra
// with Cayley-Dickson parameters mus_E over E.
inline Algebra build_corestriction(const FieldPtr& k, const Scalar& d,
                                   const std::vector<Scalar>& mus_E) {
  if (!same_field(d.F, k))
    throw FieldError(FieldErrorCode::MixedFields, "d in wrong field");
  if (scalar_is_zero(d) || is_square(d))
    throw AlgebraError(AlgebraErrorCode::NotANonsquare,
                       "corestriction requires a nonsquare d");
  if (mus_E.size() != 2 && mus_E.size() != 3)
    throw AlgebraError(AlgebraErrorCode::InvalidDims,
                       "corestriction factor must be a quaternion or octonion algebra");
  QuadraticEtale E = etale_field(k, d);
  CompositionAlgebra C = cayley_dickson(CompositionAlgebraParams{E.ext, mus_E});
  detail::EtStruct S;
  S.E = E;
  S.n = C.A.dim;
  S.tab.resize(static_cast<std::size_t>(S.n) * S.n);
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j < S.n; ++j)
      for (const auto& [m, c] : C.A.row(i, j))
        S.tab[static_cast<std::size_t>(i) * S.n + j].emplace_back(
            m, EtaleElt{c, scalar_zero(k)});
  S.sg = detail::invol_diagonal_signs(C.A);
  return detail::corestriction_from(S);
}

// Corestriction over the split etale k x k of C_1 x C_2 (same dimension);
// isomorphic to C_1 (x) C_2 -- used as the structure-constant oracle.
inline Algebra build_corestriction_split(const CompositionAlgebraParams& p1,
                                         const CompositionAlgebraParams& p2) {
  if (p1.mus.size() != p2.mus.size())
    throw AlgebraError(AlgebraErrorCode::InvalidDims,
                       "split corestriction factors must have equal dimension");
  if (p1.mus.size() != 2 && p1.mus.size() != 3)
    throw AlgebraError(AlgebraErrorCode::InvalidDims,
                       "corestriction factor must be a quaternion or octonion algebra");
  CompositionAlgebra C1 = cayley_dickson(p1);
  CompositionAlgebra C2 = cayley_dickson(p2);
  const FieldPtr& k = p1.F;
  detail::EtStruct S;
  S.E = etale_split(k);
  S.n = C1.A.dim;
  S.tab.resize(static_cast<std::size_t>(S.n) * S.n);
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j < S.n; ++j) {
      AVec r1 = srow_to_dense(k, S.n, C1.A.row(i, j));
      AVec r2 = srow_to_dense(k, S.n, C2.A.row(i, j));
      for (int m = 0; m < S.n; ++m)
        if (!scalar_is_zero(r1[static_cast<std::size_t>(m)]) ||
            !scalar_is_zero(r2[static_cast<std::size_t>(m)]))
          S.tab[static_cast<std::size_t>(i) * S.n + j].emplace_back(
              m, EtaleElt{r1[static_cast<std::size_t>(m)], r2[static_cast<std::size_t>(m)]});
    }
  S.sg = detail::invol_diagonal_signs(C1.A);
  return detail::corestriction_from(S);
}

struct ProductAlgebraDescriptor {
  bool corestriction = false;
  CompositionAlgebraParams p1, p2;  // decomposable case
  FieldPtr k;                       // corestriction case
  Scalar d = make_rat(1);
  std::vector<Scalar> mu;           // parameters over E = k(sqrt(d))
};

inline Algebra build_decomposable(const CompositionAlgebraParams& p1,
                                  const CompositionAlgebraParams& p2) {
  if (p1.mus.size() == 1 && p2.mus.size() == 1)
    throw AlgebraError(AlgebraErrorCode::InvalidDims,
                       "(2,2)-product algebras are excluded");
  CompositionAlgebra C1 = cayley_dickson(p1);
  CompositionAlgebra C2 = cayley_dickson(p2);
  return alg_tensor(C1.A, C2.A);
}

inline Algebra build_product(const ProductAlgebraDescriptor& desc) {
  if (desc.corestriction) return build_corestriction(desc.k, desc.d, desc.mu);
  return build_decomposable(desc.p1, desc.p2);
}

// --------------------------------------------------------------------------
// Structural subspaces
// --------------------------------------------------------------------------

enum class SubspaceKind { Skew, Hermitian, Nucleus, Center };

namespace detail {

inline Mat<ScalarCtx> invol_matrix(const Algebra& A) {
  ScalarCtx f{A.F};
  Mat<ScalarCtx> M = mat_zero(f, A.dim, A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (const auto& [k, c] : A.invol[static_cast<std::size_t>(i)])
      M.at(k, i) = scalar_add(M.at(k, i), c);
  return M;
}

// Stack of linear maps whose common kernel is the nucleus (resp. center);
// candidate kernels from a few random pairs are verified against every basis
// pair and refined with the violated constraints until exact.
inline std::vector<AVec> nucleus_like(const Algebra& A, bool center) {
  ScalarCtx f{A.F};
  Rng rng(0xa15eb00cULL);
  std::vector<Mat<ScalarCtx>> cons;
  auto add_assoc_maps = [&](const AVec& a, const AVec& b) {
    AVec ab = alg_mul(A, a, b);
    Mat<ScalarCtx> L = mat_zero(f, A.dim, A.dim);
    Mat<ScalarCtx> M = mat_zero(f, A.dim, A.dim);
    Mat<ScalarCtx> R = mat_zero(f, A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i) {
      AVec l = avec_sub(alg_mul(A, alg_mul_be(A, i, a), b), alg_mul_be(A, i, ab));
      AVec m = avec_sub(alg_mul(A, alg_mul_eb(A, a, i), b),
                        alg_mul(A, a, alg_mul_be(A, i, b)));
      AVec r = avec_sub(alg_mul_eb(A, ab, i), alg_mul(A, a, alg_mul_eb(A, b, i)));
      for (int k = 0; k < A.dim; ++k) {
        L.at(k, i) = l[static_cast<std::size_t>(k)];
        M.at(k, i) = m[static_cast<std::size_t>(k)];
        R.at(k, i) = r[static_cast<std::size_t>(k)];
      }
    }
    cons.push_back(std::move(L));
    cons.push_back(std::move(M));
    cons.push_back(std::move(R));
  };
  auto add_comm_map = [&](const AVec& a) {
    Mat<ScalarCtx> C = mat_zero(f, A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i) {
      AVec c = avec_sub(alg_mul_be(A, i, a), alg_mul_eb(A, a, i));
      for (int k = 0; k < A.dim; ++k) C.at(k, i) = c[static_cast<std::size_t>(k)];
    }
    cons.push_back(std::move(C));
  };
  for (int t = 0; t < 2; ++t) {
    AVec a = alg_random(A, rng, 2);
    AVec b = alg_random(A, rng, 2);
    add_assoc_maps(a, b);
    if (center) add_comm_map(a);
  }
  for (int iter = 0; iter < 64; ++iter) {
    int rows = 0;
    for (const auto& c : cons) rows += c.rows;
    Mat<ScalarCtx> stack = mat_zero(f, rows, A.dim);
    int at = 0;
    for (const auto& c : cons) {
      for (int i = 0; i < c.rows; ++i)
        for (int j = 0; j < c.cols; ++j) stack.at(at + i, j) = c.a[static_cast<std::size_t>(i) * c.cols + j];
      at += c.rows;
    }
    Mat<ScalarCtx> ns = nullspace(f, stack);
    bool ok = true;
    for (int r = 0; r < ns.rows && ok; ++r) {
      SRow v;
      for (int j = 0; j < A.dim; ++j)
        if (!f.is_zero(ns.at(r, j))) v.emplace_back(j, ns.at(r, j));
      for (int j = 0; j < A.dim && ok; ++j) {
        SRow ej{{j, scalar_one(A.F)}};
        if (center) {
          SRow comm = srow_normalize(A.F, A.dim,
                                     [&] {
                                       SRow x = sp_mul(A, v, ej);
                                       SRow y = sp_mul(A, ej, v);
                                       AVec d = avec_sub(srow_to_dense(A.F, A.dim, x),
                                                         srow_to_dense(A.F, A.dim, y));
                                       return srow_from_dense(d);
                                     }());
          if (!comm.empty()) {
            add_comm_map(srow_to_dense(A.F, A.dim, ej));
            ok = false;
            break;
          }
        }
        for (int k = 0; k < A.dim && ok; ++k) {
          const SRow& ejk = A.row(j, k);
          SRow ek{{k, scalar_one(A.F)}};
          AVec a1 = avec_sub(srow_to_dense(A.F, A.dim, sp_mul(A, sp_mul(A, v, ej), ek)),
                             srow_to_dense(A.F, A.dim, sp_mul(A, v, ejk)));
          AVec a2 = avec_sub(srow_to_dense(A.F, A.dim, sp_mul(A, sp_mul(A, ej, v), ek)),
                             srow_to_dense(A.F, A.dim, sp_mul(A, ej, sp_mul(A, v, ek))));
          AVec a3 = avec_sub(srow_to_dense(A.F, A.dim, sp_mul(A, ejk, v)),
                             srow_to_dense(A.F, A.dim, sp_mul(A, ej, sp_mul(A, ek, v))));
          if (!avec_is_zero(a1) || !avec_is_zero(a2) || !avec_is_zero(a3)) {
            add_assoc_maps(srow_to_dense(A.F, A.dim, ej), srow_to_dense(A.F, A.dim, ek));
            ok = false;
          }
        }
      }
    }
    if (ok) {
      std::vector<AVec> out;
      for (int r = 0; r < ns.rows; ++r) {
        AVec v;
        v.reserve(static_cast<std::size_t>(A.dim));
        for (int j = 0; j < A.dim; ++j) v.push_back(ns.at(r, j));
        out.push_back(std::move(v));
      }
      return out;
    }
  }
  throw std::logic_error("nucleus computation did not stabilize");
}

}  // namespace detail

inline std::vector<AVec> subspaces(const Algebra& A, SubspaceKind which) {
  ScalarCtx f{A.F};
  switch (which) {
    case SubspaceKind::Skew:
    case SubspaceKind::Hermitian: {
      Mat<ScalarCtx> M = detail::invol_matrix(A);
      Scalar s = which == SubspaceKind::Skew ? scalar_one(A.F)
                                             : scalar_neg(scalar_one(A.F));
      for (int i = 0; i < A.dim; ++i) M.at(i, i) = scalar_add(M.at(i, i), s);
      Mat<ScalarCtx> ns = nullspace(f, M);
      std::vector<AVec> out;
      for (int r = 0; r < ns.rows; ++r) {
        AVec v;
        v.reserve(static_cast<std::size_t>(A.dim));
        for (int j = 0; j < A.dim; ++j) v.push_back(ns.at(r, j));
        out.push_back(std::move(v));
      }
      return out;
    }
    case SubspaceKind::Nucleus:
      return detail::nucleus_like(A, false);
    case SubspaceKind::Center:
      return detail::nucleus_like(A, true);
  }
  return {};
}

// --------------------------------------------------------------------------
// Malcev centroid of S^- = (Skew, commutator)
// --------------------------------------------------------------------------

struct MalcevCentroid {
  bool split = false;
  std::vector<AVec> skew;        // rows: basis of S in A-coordinates
  Mat<ScalarCtx> e1, e2;         // split: centroid idempotents as operators on S
  Scalar d = make_rat(1);        // field case: canonical nonsquare with centroid k(sqrt d)
  Mat<ScalarCtx> phi0;           // trace-free generator, phi0^2 = delta * id
  Scalar delta = make_rat(1);
};

namespace detail {

// [s_i, s_j] expressed back in the skew basis.
inline std::vector<std::vector<AVec>> skew_bracket_table(
    const Algebra& A, const std::vector<AVec>& S) {
  ScalarCtx f{A.F};
  int r = static_cast<int>(S.size());
  Mat<ScalarCtx> B = mat_zero(f, A.dim, r);
  for (int t = 0; t < r; ++t)
    for (int i = 0; i < A.dim; ++i) B.at(i, t) = S[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
  std::vector<std::vector<AVec>> K(
      static_cast<std::size_t>(r), std::vector<AVec>(static_cast<std::size_t>(r)));
  for (int i = 0; i < r; ++i) {
    K[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = avec_zero(A.F, r);
    for (int j = i + 1; j < r; ++j) {
      AVec br = alg_commutator(A, S[static_cast<std::size_t>(i)], S[static_cast<std::size_t>(j)]);
      auto sol = solve(f, B, br);
      if (!sol)
        throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim,
                           "skew part is not closed under commutators");
      K[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *sol;
      AVec neg = *sol;
      for (auto& e : neg) e = scalar_neg(e);
      K[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::move(neg);
    }
  }
  return K;
}

}  // namespace detail

inline MalcevCentroid malcev_centroid(const Algebra& A) {
  ScalarCtx f{A.F};
  std::vector<AVec> S = subspaces(A, SubspaceKind::Skew);
  int r = static_cast<int>(S.size());
  if (r == 0)
    throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim, "no skew part");
  auto K = detail::skew_bracket_table(A, S);
  int n2 = r * r;
  // Unknown phi as an r x r matrix, vectorized row-major; the defining
  // equations phi([s_i,s_j]) = [phi(s_i), s_j] contribute, for each output
  // coordinate q, the row  sum_m K[i][j][m] phi[q][m] - sum_u K[u][j][q] phi[u][i].
  RankAccumulator<ScalarCtx> acc(f, n2);
  auto add_block = [&](int i, int j) {
    for (int q = 0; q < r; ++q) {
      Vec<ScalarCtx> row(static_cast<std::size_t>(n2), f.zero());
      for (int m = 0; m < r; ++m)
        row[static_cast<std::size_t>(q * r + m)] =
            scalar_add(row[static_cast<std::size_t>(q * r + m)],
                       K[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(m)]);
      for (int u = 0; u < r; ++u)
        row[static_cast<std::size_t>(u * r + i)] =
            scalar_sub(row[static_cast<std::size_t>(u * r + i)],
                       K[static_cast<std::size_t>(u)][static_cast<std::size_t>(j)][static_cast<std::size_t>(q)]);
      acc.add(std::move(row));
    }
  };
  for (int i = 0; i < r && n2 - acc.rank() > 2; ++i)
    for (int j = 0; j < r; ++j)
      if (j != i) add_block(i, j);
  auto extract = [&]() {
    // nullspace of the accumulated reduced rows
    std::vector<bool> is_piv(static_cast<std::size_t>(n2), false);
    for (std::size_t t = 0; t < acc.rows.size(); ++t) is_piv[static_cast<std::size_t>(acc.lead[t])] = true;
    std::vector<Mat<ScalarCtx>> cands;
    for (int c = 0; c < n2; ++c) {
      if (is_piv[static_cast<std::size_t>(c)]) continue;
      Mat<ScalarCtx> phi = mat_zero(f, r, r);
      phi.a[static_cast<std::size_t>(c)] = f.one();
      for (std::size_t t = 0; t < acc.rows.size(); ++t)
        phi.a[static_cast<std::size_t>(acc.lead[t])] = f.neg(acc.rows[t][static_cast<std::size_t>(c)]);
      cands.push_back(std::move(phi));
    }
    return cands;
  };
  // Verify the candidate centroid against every basis pair; refine if needed.
  for (int pass = 0; pass < 4; ++pass) {
    auto cands = extract();
    bool ok = true;
    for (const auto& phi : cands) {
      for (int i = 0; i < r && ok; ++i)
        for (int j = 0; j < r && ok; ++j) {
          if (i == j) continue;
          for (int q = 0; q < r; ++q) {
            Scalar lhs = scalar_zero(A.F);
            for (int m = 0; m < r; ++m)
              lhs = scalar_add(lhs, scalar_mul(phi.a[static_cast<std::size_t>(q) * r + m],
                                               K[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(m)]));
            Scalar rhs = scalar_zero(A.F);
            for (int u = 0; u < r; ++u)
              rhs = scalar_add(rhs, scalar_mul(phi.a[static_cast<std::size_t>(u) * r + i],
                                               K[static_cast<std::size_t>(u)][static_cast<std::size_t>(j)][static_cast<std::size_t>(q)]));
            if (!scalar_eq(lhs, rhs)) {
              add_block(i, j);
              ok = false;
              break;
            }
          }
        }
      if (!ok) break;
    }
    if (ok) break;
  }
  auto cands = extract();
  if (cands.size() != 2)
    throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim,
                       "centroid dimension " + std::to_string(cands.size()));
  Mat<ScalarCtx> I = mat_identity(f, r);
  auto proportional_to_id = [&](const Mat<ScalarCtx>& M) {
    return mat_eq(f, M, mat_scale(f, M.at(0, 0), I));
  };
  Mat<ScalarCtx> psi = proportional_to_id(cands[0]) ? cands[1] : cands[0];
  // psi^2 = alpha * id + beta * psi within the 2-dimensional centroid.
  Mat<ScalarCtx> psi2 = mat_mul(f, psi, psi);
  Mat<ScalarCtx> sys = mat_zero(f, n2, 2);
  Vec<ScalarCtx> rhs(static_cast<std::size_t>(n2), f.zero());
  for (int t = 0; t < n2; ++t) {
    sys.at(t, 0) = I.a[static_cast<std::size_t>(t)];
    sys.at(t, 1) = psi.a[static_cast<std::size_t>(t)];
    rhs[static_cast<std::size_t>(t)] = psi2.a[static_cast<std::size_t>(t)];
  }
  auto ab = solve(f, sys, rhs);
  if (!ab)
    throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim,
                       "centroid is not closed under composition");
  Scalar alpha = (*ab)[0], beta = (*ab)[1];
  Scalar two = scalar_int(A.F, 2);
  Mat<ScalarCtx> phi0 = mat_sub(f, psi, mat_scale(f, scalar_div(beta, two), I));
  Scalar delta = scalar_add(alpha, scalar_div(scalar_mul(beta, beta), scalar_int(A.F, 4)));
  if (scalar_is_zero(delta))
    throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim,
                       "centroid is not etale");
  MalcevCentroid out;
  out.skew = std::move(S);
  out.phi0 = phi0;
  out.delta = delta;
  if (auto s = scalar_sqrt(delta)) {
    out.split = true;
    Mat<ScalarCtx> half = mat_scale(f, scalar_div(scalar_one(A.F), two), I);
    Mat<ScalarCtx> p = mat_scale(f, scalar_div(scalar_div(scalar_one(A.F), two), *s), phi0);
    out.e1 = mat_add(f, half, p);
    out.e2 = mat_sub(f, half, p);
    // deterministic factor ordering: lex-compare the flattened idempotents
    auto key = [&](const Mat<ScalarCtx>& M) {
      std::string k;
      for (const auto& e : M.a) {
        k += scalar_to_string(e);
        k += ';';
      }
      return k;
    };
    if (key(out.e2) < key(out.e1)) std::swap(out.e1, out.e2);
  } else {
    out.split = false;
    out.d = square_class(delta);
  }
  return out;
}

// --------------------------------------------------------------------------
// Decomposition
// --------------------------------------------------------------------------

struct DecomposeResult {
  bool decomposable = false;
  Algebra c1, c2;            // decomposable case (deterministically ordered)
  Scalar d = make_rat(1);    // field case: A = cor_{E/k}(C), E = k(sqrt d)
  Algebra oct;               // field case: C over E
};

namespace detail {

// The unital subalgebra on k*1 (+) span(svecs); throws if not closed.
inline Algebra reconstruct_factor(const Algebra& A, const std::vector<AVec>& svecs) {
  ScalarCtx f{A.F};
  int m = 1 + static_cast<int>(svecs.size());
  std::vector<AVec> basis;
  basis.push_back(A.unit);
  for (const auto& v : svecs) basis.push_back(v);
  Mat<ScalarCtx> B = mat_zero(f, A.dim, m);
  for (int t = 0; t < m; ++t)
    for (int i = 0; i < A.dim; ++i) B.at(i, t) = basis[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
  Algebra C;
  C.F = A.F;
  C.dim = m;
  C.table.resize(static_cast<std::size_t>(m) * m);
  for (int t = 0; t < m; ++t)
    for (int u = 0; u < m; ++u) {
      AVec p = alg_mul(A, basis[static_cast<std::size_t>(t)], basis[static_cast<std::size_t>(u)]);
      auto sol = solve(f, B, p);
      if (!sol)
        throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim,
                           "candidate factor is not closed under multiplication");
      C.table[static_cast<std::size_t>(t) * m + u] = srow_from_dense(*sol);
    }
  C.unit = avec_zero(A.F, m);
  C.unit[0] = scalar_one(A.F);
  C.invol.resize(static_cast<std::size_t>(m));
  C.invol[0] = SRow{{0, scalar_one(A.F)}};
  for (int t = 1; t < m; ++t) C.invol[static_cast<std::size_t>(t)] = SRow{{t, scalar_neg(scalar_one(A.F))}};
  return C;
}

// Row basis of the image of an operator on S, returned in A-coordinates.
inline std::vector<AVec> operator_image(const ScalarCtx& f,
                                        const Mat<ScalarCtx>& op,
                                        const std::vector<AVec>& S,
                                        const Algebra& A) {
  int r = op.rows;
  Mat<ScalarCtx> cols = mat_zero(f, r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) cols.at(j, i) = op.at(i, j);  // rows = images
  std::vector<int> pivots;
  int rank = row_reduce(f, cols, &pivots);
  std::vector<AVec> out;
  for (int t = 0; t < rank; ++t) {
    AVec v = avec_zero(A.F, A.dim);
    for (int m = 0; m < r; ++m) {
      if (f.is_zero(cols.at(t, m))) continue;
      for (int i = 0; i < A.dim; ++i)
        v[static_cast<std::size_t>(i)] = scalar_add(
            v[static_cast<std::size_t>(i)],
            scalar_mul(cols.at(t, m), S[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline Algebra alg_map_field(const Algebra& A, const FieldPtr& G,
                             const std::function<Scalar(const Scalar&)>& emb) {
  Algebra B;
  B.F = G;
  B.dim = A.dim;
  B.table.resize(A.table.size());
  for (std::size_t t = 0; t < A.table.size(); ++t)
    for (const auto& [k, c] : A.table[t]) B.table[t].emplace_back(k, emb(c));
  B.unit.reserve(A.unit.size());
  for (const auto& c : A.unit) B.unit.push_back(emb(c));
  B.invol.resize(A.invol.size());
  for (std::size_t t = 0; t < A.invol.size(); ++t)
    for (const auto& [k, c] : A.invol[t]) B.invol[t].emplace_back(k, emb(c));
  return B;
}

}  // namespace detail

inline DecomposeResult decompose(const Algebra& A) {
  MalcevCentroid cen = malcev_centroid(A);
  DecomposeResult out;
  if (cen.split) {
    ScalarCtx f{A.F};
    out.decomposable = true;
    std::vector<AVec> S1 = detail::operator_image(f, cen.e1, cen.skew, A);
    std::vector<AVec> S2 = detail::operator_image(f, cen.e2, cen.skew, A);
    out.c1 = detail::reconstruct_factor(A, S1);
    out.c2 = detail::reconstruct_factor(A, S2);
    return out;
  }
  // Field case: the centroid is k(sqrt(delta)); over E = k(sqrt(d)) with
  // d = square_class(delta) the extended algebra splits, and the positive
  // eigenspace of phi0 reconstructs the octonion factor C with A = cor(C).
  out.decomposable = false;
  out.d = cen.d;
  Scalar t2 = scalar_div(cen.delta, cen.d);
  auto t = scalar_sqrt(t2);
  if (!t)
    throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim,
                       "delta is not d times a square");
  FieldPtr E = field_quad(A.F, cen.d);
  auto emb = [&](const Scalar& s) { return make_quad(E, s, scalar_zero(A.F)); };
  Algebra AE = detail::alg_map_field(A, E, emb);
  ScalarCtx fE{E};
  int r = cen.phi0.rows;
  Mat<ScalarCtx> M = mat_zero(fE, r, r);
  Scalar sqrt_delta = make_quad(E, scalar_zero(A.F), *t);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      M.at(i, j) = emb(cen.phi0.at(i, j));
      if (i == j) M.at(i, j) = scalar_sub(M.at(i, j), sqrt_delta);
    }
  Mat<ScalarCtx> ns = nullspace(fE, M);
  std::vector<AVec> SE;
  for (const auto& v : cen.skew) {
    AVec w;
    w.reserve(v.size());
    for (const auto& c : v) w.push_back(emb(c));
    SE.push_back(std::move(w));
  }
  std::vector<AVec> Splus;
  for (int row = 0; row < ns.rows; ++row) {
    AVec v = avec_zero(E, AE.dim);
    for (int m = 0; m < r; ++m) {
      if (fE.is_zero(ns.at(row, m))) continue;
      for (int i = 0; i < AE.dim; ++i)
        v[static_cast<std::size_t>(i)] = scalar_add(
            v[static_cast<std::size_t>(i)],
            scalar_mul(ns.at(row, m), SE[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]));
    }
    Splus.push_back(std::move(v));
  }
  out.oct = detail::reconstruct_factor(AE, Splus);
  return out;
}

// --------------------------------------------------------------------------
// Norm of a composition algebra recovered from the multiplication
// --------------------------------------------------------------------------

// x must be a scalar multiple of the unit; returns that scalar.
inline Scalar alg_unit_coeff(const Algebra& A, const AVec& x) {
  int t = -1;
  for (int i = 0; i < A.dim; ++i)
    if (!scalar_is_zero(A.unit[static_cast<std::size_t>(i)])) { t = i; break; }
  Scalar lam = scalar_div(x[static_cast<std::size_t>(t)], A.unit[static_cast<std::size_t>(t)]);
  if (!avec_eq(x, avec_scale(lam, A.unit)))
    throw AlgebraError(AlgebraErrorCode::NotScalarMultiple,
                       "element is not a scalar multiple of the unit");
  return lam;
}

inline Scalar alg_norm_value(const Algebra& A, const AVec& x) {
  return alg_unit_coeff(A, alg_mul(A, x, alg_invol(A, x)));
}

inline QForm alg_norm_form(const Algebra& A) {
  Scalar two = scalar_int(A.F, 2);
  std::vector<std::vector<Scalar>> g(
      static_cast<std::size_t>(A.dim),
      std::vector<Scalar>(static_cast<std::size_t>(A.dim), scalar_zero(A.F)));
  std::vector<SRow> sig(static_cast<std::size_t>(A.dim));
  for (int i = 0; i < A.dim; ++i) sig[static_cast<std::size_t>(i)] = A.invol[static_cast<std::size_t>(i)];
  for (int i = 0; i < A.dim; ++i)
    for (int j = i; j < A.dim; ++j) {
      SRow ei{{i, scalar_one(A.F)}};
      SRow ej{{j, scalar_one(A.F)}};
      AVec p = avec_add(srow_to_dense(A.F, A.dim, sp_mul(A, ei, sig[static_cast<std::size_t>(j)])),
                        srow_to_dense(A.F, A.dim, sp_mul(A, ej, sig[static_cast<std::size_t>(i)])));
      Scalar b = scalar_div(alg_unit_coeff(A, p), two);
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = b;
      g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = b;
    }
  return qf_from_gram(A.F, std::move(g));
}

}  // namespace bioct
