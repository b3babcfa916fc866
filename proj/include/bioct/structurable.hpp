// Structurable-algebra operator calculus on product algebras: the operators
// V_{x,y}, L_x, R_x, T_x, U_{x,y}, D_{x,y} and psi, conjugate inversion, the
// Albert quadratic form Q with its natural map on the skew part, the trace
// form, the octic norm, the matrix factorization M_x and the P-operators.
// Operators are materialized as exact matrices over the ground field; the
// element-level evaluations are also exposed because they are much cheaper
// for residual checks.
#pragma once

#include <optional>

#include "bioct/algebras.hpp"

namespace bioct {

enum class StructurableErrorCode {
  MixedAlgebras,
  BadBasepoint,
  NotInvertible,
  UnknownProvenance,
};

struct StructurableError : std::runtime_error {
  StructurableErrorCode code;
  StructurableError(StructurableErrorCode c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

inline void st_check_elt(const Algebra& A, const AVec& x) {
  if (static_cast<int>(x.size()) != A.dim ||
      (!x.empty() && !same_field(x[0].F, A.F)))
    throw StructurableError(StructurableErrorCode::MixedAlgebras,
                            "element does not belong to the algebra");
}

// --------------------------------------------------------------------------
// Element-level operators
// --------------------------------------------------------------------------

// V_{x,y}(z) = {x,y,z} = (x conj(y)) z + (z conj(y)) x - (z conj(x)) y
inline AVec st_V(const Algebra& A, const AVec& x, const AVec& y, const AVec& z) {
  AVec yc = alg_invol(A, y);
  AVec xc = alg_invol(A, x);
  AVec t = alg_mul(A, alg_mul(A, x, yc), z);
  t = avec_add(t, alg_mul(A, alg_mul(A, z, yc), x));
  return avec_sub(t, alg_mul(A, alg_mul(A, z, xc), y));
}

inline AVec st_psi(const Algebra& A, const AVec& x, const AVec& y) {
  return avec_sub(alg_mul(A, x, alg_invol(A, y)), alg_mul(A, y, alg_invol(A, x)));
}

// U_{x,y}(z) = V_{x,z}(y) = (x conj(z)) y + (y conj(z)) x - (y conj(x)) z
inline AVec st_Uxy(const Algebra& A, const AVec& x, const AVec& y, const AVec& z) {
  AVec zc = alg_invol(A, z);
  AVec xc = alg_invol(A, x);
  AVec t = alg_mul(A, alg_mul(A, x, zc), y);
  t = avec_add(t, alg_mul(A, alg_mul(A, y, zc), x));
  return avec_sub(t, alg_mul(A, alg_mul(A, y, xc), z));
}

// U_x(z) = U_{x,x}(z) = 2 (x conj(z)) x - (x conj(x)) z
inline AVec st_U(const Algebra& A, const AVec& x, const AVec& z) {
  AVec t = alg_mul(A, alg_mul(A, x, alg_invol(A, z)), x);
  t = avec_scale(scalar_int(A.F, 2), t);
  return avec_sub(t, alg_mul(A, alg_mul(A, x, alg_invol(A, x)), z));
}

// D_{x,y}(z) = 1/3 [[x,y] + [conj(x),conj(y)], z] + [z,y,x] - [z,conj(x),conj(y)]
inline AVec st_D(const Algebra& A, const AVec& x, const AVec& y, const AVec& z) {
  AVec xc = alg_invol(A, x), yc = alg_invol(A, y);
  AVec inner = avec_add(alg_commutator(A, x, y), alg_commutator(A, xc, yc));
  AVec t = avec_scale(scalar_div(scalar_one(A.F), scalar_int(A.F, 3)),
                      alg_commutator(A, inner, z));
  t = avec_add(t, alg_associator(A, z, y, x));
  return avec_sub(t, alg_associator(A, z, xc, yc));
}

// --------------------------------------------------------------------------
// Operator matrices
// --------------------------------------------------------------------------

template <class Fn>
Mat<ScalarCtx> op_matrix(const Algebra& A, Fn&& f) {
  ScalarCtx ctx{A.F};
  Mat<ScalarCtx> M = mat_zero(ctx, A.dim, A.dim);
  for (int i = 0; i < A.dim; ++i) {
    AVec col = f(alg_basis_vec(A, i));
    for (int k = 0; k < A.dim; ++k) M.at(k, i) = col[static_cast<std::size_t>(k)];
  }
  return M;
}

inline Mat<ScalarCtx> op_L(const Algebra& A, const AVec& x) {
  st_check_elt(A, x);
  return op_matrix(A, [&](const AVec& z) { return alg_mul(A, x, z); });
}

inline Mat<ScalarCtx> op_R(const Algebra& A, const AVec& x) {
  st_check_elt(A, x);
  return op_matrix(A, [&](const AVec& z) { return alg_mul(A, z, x); });
}

inline Mat<ScalarCtx> op_V(const Algebra& A, const AVec& x, const AVec& y) {
  st_check_elt(A, x);
  st_check_elt(A, y);
  return op_matrix(A, [&](const AVec& z) { return st_V(A, x, y, z); });
}

inline Mat<ScalarCtx> op_T(const Algebra& A, const AVec& x) {
  return op_V(A, x, A.unit);
}

inline Mat<ScalarCtx> op_U(const Algebra& A, const AVec& x) {
  st_check_elt(A, x);
  return op_matrix(A, [&](const AVec& z) { return st_U(A, x, z); });
}

inline Mat<ScalarCtx> op_Uxy(const Algebra& A, const AVec& x, const AVec& y) {
  st_check_elt(A, x);
  st_check_elt(A, y);
  return op_matrix(A, [&](const AVec& z) { return st_Uxy(A, x, y, z); });
}

inline Mat<ScalarCtx> op_D(const Algebra& A, const AVec& x, const AVec& y) {
  st_check_elt(A, x);
  st_check_elt(A, y);
  return op_matrix(A, [&](const AVec& z) { return st_D(A, x, y, z); });
}

// --------------------------------------------------------------------------
// Conjugate inversion: the candidate is hat(x) = U_x^{-1}(x), but an
// invertible U_x is not sufficient (isotropic skew vectors have invertible
// U_s without being conjugate-invertible), so V_{x,hat(x)} = id is verified
// and x is rejected when it fails.
// --------------------------------------------------------------------------

// V_{x,y} as a matrix via V_{x,y} = L_{x conj(y)} + R_x R_{conj(y)} - R_y R_{conj(x)};
// the one-sided multiplications build column-by-column against sparse basis
// vectors, so this is much cheaper than evaluating V on every basis vector.
inline Mat<ScalarCtx> op_V_fast(const Algebra& A, const AVec& x, const AVec& y) {
  ScalarCtx ctx{A.F};
  AVec xc = alg_invol(A, x), yc = alg_invol(A, y);
  AVec xyc = alg_mul(A, x, yc);
  Mat<ScalarCtx> M = op_matrix(A, [&](const AVec& z) { return alg_mul(A, xyc, z); });
  Mat<ScalarCtx> Rx = op_matrix(A, [&](const AVec& z) { return alg_mul(A, z, x); });
  Mat<ScalarCtx> Ryc = op_matrix(A, [&](const AVec& z) { return alg_mul(A, z, yc); });
  Mat<ScalarCtx> Ry = op_matrix(A, [&](const AVec& z) { return alg_mul(A, z, y); });
  Mat<ScalarCtx> Rxc = op_matrix(A, [&](const AVec& z) { return alg_mul(A, z, xc); });
  M = mat_add(ctx, M, mat_mul(ctx, Rx, Ryc));
  return mat_sub(ctx, M, mat_mul(ctx, Ry, Rxc));
}

inline std::optional<AVec> conjugate_inverse(const Algebra& A, const AVec& x) {
  st_check_elt(A, x);
  ScalarCtx ctx{A.F};
  Mat<ScalarCtx> Ux = op_U(A, x);
  auto inv = mat_inverse(ctx, Ux);
  if (!inv) return std::nullopt;
  AVec xhat = mat_vec(ctx, *inv, x);
  if (!mat_eq(ctx, op_V_fast(A, x, xhat), mat_identity(ctx, A.dim)))
    return std::nullopt;
  return xhat;
}

// --------------------------------------------------------------------------
// Albert data: the quadratic form Q on the skew part and the natural map.
// Both are recovered from the centroid of the Malcev algebra S^-:
//   decomposable: natural = e1 - e2 (+1 on S1, -1 on S2),
//   corestriction: natural = phi0 / t with delta = d t^2, so natural^2 = d;
// Q is then pinned down exactly by L_s L_{s_natural} = -Q(s) id via traces.
// --------------------------------------------------------------------------

struct AlbertData {
  FieldPtr F;
  std::vector<AVec> skew;                   // basis of S in A-coordinates
  Mat<ScalarCtx> basis;                     // dim x r, columns = skew basis
  std::vector<std::vector<Scalar>> gram;    // Gram of Q on the skew basis
  QForm Q;                                  // diagonalized Albert form
  Mat<ScalarCtx> natural;                   // the natural map on skew coordinates
  bool corestriction = false;
  Scalar d = make_rat(1);                   // corestriction case only
};

inline AVec skew_coords(const AlbertData& D, const AVec& x) {
  ScalarCtx ctx{D.F};
  auto sol = solve(ctx, D.basis, x);
  if (!sol)
    throw StructurableError(StructurableErrorCode::MixedAlgebras,
                            "element does not lie in the skew part");
  return *sol;
}

inline AVec skew_to_alg(const AlbertData& D, const AVec& coords) {
  ScalarCtx ctx{D.F};
  return mat_vec(ctx, D.basis, coords);
}

inline Scalar albert_Q(const AlbertData& D, const AVec& coords) {
  Scalar acc = scalar_zero(D.F);
  int r = static_cast<int>(D.skew.size());
  for (int i = 0; i < r; ++i) {
    if (scalar_is_zero(coords[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; j < r; ++j) {
      if (scalar_is_zero(coords[static_cast<std::size_t>(j)])) continue;
      acc = scalar_add(acc, scalar_mul(scalar_mul(coords[static_cast<std::size_t>(i)],
                                                  coords[static_cast<std::size_t>(j)]),
                                       D.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
  }
  return acc;
}

inline AVec albert_natural(const AlbertData& D, const AVec& coords) {
  ScalarCtx ctx{D.F};
  return mat_vec(ctx, D.natural, coords);
}

inline AlbertData albert_data(const Algebra& A) {
  ScalarCtx ctx{A.F};
  MalcevCentroid cen = malcev_centroid(A);
  AlbertData D;
  D.F = A.F;
  D.skew = cen.skew;
  int r = static_cast<int>(D.skew.size());
  D.basis = mat_zero(ctx, A.dim, r);
  for (int t = 0; t < r; ++t)
    for (int i = 0; i < A.dim; ++i)
      D.basis.at(i, t) = D.skew[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
  if (cen.split) {
    D.corestriction = false;
    D.natural = mat_sub(ctx, cen.e1, cen.e2);
  } else {
    D.corestriction = true;
    D.d = cen.d;
    Scalar t2 = scalar_div(cen.delta, cen.d);
    auto t = scalar_sqrt(t2);
    if (!t)
      throw AlgebraError(AlgebraErrorCode::UnexpectedCentroidDim,
                         "delta is not d times a square");
    D.natural = mat_scale(ctx, scalar_inv(*t), cen.phi0);
  }
  // Gram of Q from tr(L_s L_{s_nat}) = -dim * Q(s), polarized.
  std::vector<Mat<ScalarCtx>> L, Lnat;
  for (int t = 0; t < r; ++t) {
    L.push_back(op_L(A, D.skew[static_cast<std::size_t>(t)]));
    AVec ncoords(static_cast<std::size_t>(r), scalar_zero(A.F));
    for (int u = 0; u < r; ++u) ncoords[static_cast<std::size_t>(u)] = D.natural.at(u, t);
    Lnat.push_back(op_L(A, skew_to_alg(D, ncoords)));
  }
  auto tr_prod = [&](const Mat<ScalarCtx>& X, const Mat<ScalarCtx>& Y) {
    Scalar acc = scalar_zero(A.F);
    for (int a = 0; a < A.dim; ++a)
      for (int b = 0; b < A.dim; ++b) {
        if (ctx.is_zero(X.at(a, b)) || ctx.is_zero(Y.at(b, a))) continue;
        acc = scalar_add(acc, scalar_mul(X.at(a, b), Y.at(b, a)));
      }
    return acc;
  };
  Scalar denom = scalar_int(A.F, -2 * A.dim);
  D.gram.assign(static_cast<std::size_t>(r),
                std::vector<Scalar>(static_cast<std::size_t>(r), scalar_zero(A.F)));
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Scalar s = scalar_add(tr_prod(L[static_cast<std::size_t>(i)], Lnat[static_cast<std::size_t>(j)]),
                            tr_prod(L[static_cast<std::size_t>(j)], Lnat[static_cast<std::size_t>(i)]));
      Scalar g = scalar_div(s, denom);
      D.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g;
      D.gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = g;
    }
  D.Q = qf_from_gram(A.F, D.gram);
  return D;
}

// --------------------------------------------------------------------------
// Trace form T_A(x,y) = tr(L_{x conj(y) + y conj(x)})
// --------------------------------------------------------------------------

// tr(L_w) is linear in w; precompute tau_i = tr(L_{e_i}).
inline AVec trace_vector(const Algebra& A) {
  AVec tau = avec_zero(A.F, A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int k = 0; k < A.dim; ++k)
      for (const auto& [m, c] : A.row(i, k))
        if (m == k)
          tau[static_cast<std::size_t>(i)] = scalar_add(tau[static_cast<std::size_t>(i)], c);
  return tau;
}

inline Scalar trace_bilinear(const Algebra& A, const AVec& tau, const AVec& x,
                             const AVec& y) {
  AVec w = avec_add(alg_mul(A, x, alg_invol(A, y)), alg_mul(A, y, alg_invol(A, x)));
  Scalar acc = scalar_zero(A.F);
  for (int i = 0; i < A.dim; ++i)
    acc = scalar_add(acc, scalar_mul(w[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(i)]));
  return acc;
}

inline QForm trace_form(const Algebra& A) {
  AVec tau = trace_vector(A);
  // G_ij = tr(L_{e_i conj(e_j)}) + tr(L_{e_j conj(e_i)}); basis products stay
  // sparse, so each entry is a handful of structure-constant lookups.
  auto half = [&](int i, int j) {
    Scalar acc = scalar_zero(A.F);
    for (const auto& [m, c] : A.invol[static_cast<std::size_t>(j)])
      for (const auto& [t, c2] : A.row(i, m))
        acc = scalar_add(acc,
                         scalar_mul(scalar_mul(c, c2),
                                    tau[static_cast<std::size_t>(t)]));
    return acc;
  };
  std::vector<std::vector<Scalar>> g(
      static_cast<std::size_t>(A.dim),
      std::vector<Scalar>(static_cast<std::size_t>(A.dim), scalar_zero(A.F)));
  for (int i = 0; i < A.dim; ++i)
    for (int j = i; j < A.dim; ++j) {
      // q(x) = T_A(x,x) = x^T G x with G_ij = T_A(e_i,e_j); in particular
      // q(1) = T_A(1,1) = 2 dim A.
      Scalar v = scalar_add(half(i, j), half(j, i));
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  return qf_from_gram(A.F, std::move(g));
}

// --------------------------------------------------------------------------
// Octic norm, matrix factorization, P-operators
// --------------------------------------------------------------------------

inline AVec default_basepoint(const AlbertData& D) {
  int r = static_cast<int>(D.skew.size());
  for (int i = 0; i < r; ++i)
    if (!scalar_is_zero(D.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]))
      return D.skew[static_cast<std::size_t>(i)];
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      AVec coords(static_cast<std::size_t>(r), scalar_zero(D.F));
      coords[static_cast<std::size_t>(i)] = scalar_one(D.F);
      coords[static_cast<std::size_t>(j)] = scalar_one(D.F);
      if (!scalar_is_zero(albert_Q(D, coords)))
        return avec_add(D.skew[static_cast<std::size_t>(i)], D.skew[static_cast<std::size_t>(j)]);
    }
  throw StructurableError(StructurableErrorCode::BadBasepoint,
                          "no anisotropic skew vector found");
}

// N_A(x) = (1/(36 Q(s0))) * Q(psi(x, U_x(s0 x)))
inline Scalar octic_norm(const Algebra& A, const AlbertData& D, const AVec& x,
                         const AVec* s0 = nullptr) {
  st_check_elt(A, x);
  AVec base = s0 ? *s0 : default_basepoint(D);
  Scalar qs0 = albert_Q(D, skew_coords(D, base));
  if (scalar_is_zero(qs0))
    throw StructurableError(StructurableErrorCode::BadBasepoint,
                            "basepoint with Q(s0) = 0");
  AVec w = st_psi(A, x, st_U(A, x, alg_mul(A, base, x)));
  Scalar qw = albert_Q(D, skew_coords(D, w));
  return scalar_div(qw, scalar_mul(scalar_int(A.F, 36), qs0));
}

// M_x(s) = 1/6 psi(x, U_x(s_natural x)) as a matrix on skew coordinates.
inline Mat<ScalarCtx> matrix_factorization(const Algebra& A, const AlbertData& D,
                                           const AVec& x) {
  st_check_elt(A, x);
  ScalarCtx ctx{A.F};
  int r = static_cast<int>(D.skew.size());
  Scalar sixth = scalar_div(scalar_one(A.F), scalar_int(A.F, 6));
  Mat<ScalarCtx> M = mat_zero(ctx, r, r);
  for (int t = 0; t < r; ++t) {
    AVec coords(static_cast<std::size_t>(r), scalar_zero(A.F));
    coords[static_cast<std::size_t>(t)] = scalar_one(A.F);
    AVec nat = skew_to_alg(D, albert_natural(D, coords));
    AVec w = avec_scale(sixth, st_psi(A, x, st_U(A, x, alg_mul(A, nat, x))));
    AVec wc = skew_coords(D, w);
    for (int k = 0; k < r; ++k) M.at(k, t) = wc[static_cast<std::size_t>(k)];
  }
  return M;
}

// (P_x)_S(s) = 1/6 psi(x, U_x(s x)) -- total on A, Lemma form.
inline Mat<ScalarCtx> p_operator_skew(const Algebra& A, const AlbertData& D,
                                      const AVec& x) {
  st_check_elt(A, x);
  ScalarCtx ctx{A.F};
  int r = static_cast<int>(D.skew.size());
  Scalar sixth = scalar_div(scalar_one(A.F), scalar_int(A.F, 6));
  Mat<ScalarCtx> M = mat_zero(ctx, r, r);
  for (int t = 0; t < r; ++t) {
    AVec w = avec_scale(
        sixth, st_psi(A, x, st_U(A, x, alg_mul(A, D.skew[static_cast<std::size_t>(t)], x))));
    AVec wc = skew_coords(D, w);
    for (int k = 0; k < r; ++k) M.at(k, t) = wc[static_cast<std::size_t>(k)];
  }
  return M;
}

// P_x(a) = 1/3 U_x(5a - 2 V_{a,x}(hat(x)))
inline Mat<ScalarCtx> p_operator_full(const Algebra& A, const AVec& x) {
  st_check_elt(A, x);
  auto xhat = conjugate_inverse(A, x);
  if (!xhat)
    throw StructurableError(StructurableErrorCode::NotInvertible,
                            "P_x requires a conjugate-invertible x");
  Scalar third = scalar_div(scalar_one(A.F), scalar_int(A.F, 3));
  return op_matrix(A, [&](const AVec& a) {
    AVec inner = avec_sub(avec_scale(scalar_int(A.F, 5), a),
                          avec_scale(scalar_int(A.F, 2), st_V(A, a, x, *xhat)));
    return avec_scale(third, st_U(A, x, inner));
  });
}

// Skew part of an automorphism-like operator: alpha_S(s) = 1/2 psi(alpha(s), alpha(1)).
inline Mat<ScalarCtx> skew_part_of(const Algebra& A, const AlbertData& D,
                                   const Mat<ScalarCtx>& alpha) {
  ScalarCtx ctx{A.F};
  int r = static_cast<int>(D.skew.size());
  AVec a1 = mat_vec(ctx, alpha, A.unit);
  Scalar half = scalar_div(scalar_one(A.F), scalar_int(A.F, 2));
  Mat<ScalarCtx> M = mat_zero(ctx, r, r);
  for (int t = 0; t < r; ++t) {
    AVec as = mat_vec(ctx, alpha, D.skew[static_cast<std::size_t>(t)]);
    AVec w = avec_scale(half, st_psi(A, as, a1));
    AVec wc = skew_coords(D, w);
    for (int k = 0; k < r; ++k) M.at(k, t) = wc[static_cast<std::size_t>(k)];
  }
  return M;
}

// --------------------------------------------------------------------------
// Residual checks (composition property and theta relations)
// --------------------------------------------------------------------------

struct ResidualReport {
  bool ok = true;
  int trials = 0;
  int bad_q = 0;      // Q(sts) != Q(s)^2 Q(t)
  int bad_l = 0;      // L_{sts} != L_s L_t L_s
  int bad_theta = 0;  // theta relation failures
};

inline AVec random_skew(const AlbertData& D, Rng& rng, long long height = 2) {
  AVec v = avec_zero(D.F, static_cast<int>(D.basis.rows));
  for (const auto& s : D.skew)
    v = avec_add(v, avec_scale(scalar_int(D.F, rng.range(-height, height)), s));
  return v;
}

// Q(sts) = d^{-1} Q(s)^2 Q(t) (the natural map is a similitude with
// multiplier d, which is 1 in the decomposable case) and L_{sts} = L_s L_t L_s
// on random skew pairs, plus the theta relation
// (-L_r L_{s_nat})(-L_s L_{t_nat}) = -Q(s) L_r L_{t_nat}.
inline ResidualReport composition_property_check(const Algebra& A,
                                                 const AlbertData& D, Rng& rng,
                                                 int trials) {
  ScalarCtx ctx{A.F};
  ResidualReport rep;
  rep.trials = trials;
  Scalar mult = D.corestriction ? scalar_inv(D.d) : scalar_one(A.F);
  for (int n = 0; n < trials; ++n) {
    AVec s = random_skew(D, rng);
    AVec t = random_skew(D, rng);
    AVec sts = alg_mul(A, s, alg_mul(A, t, s));
    Scalar lhs = albert_Q(D, skew_coords(D, sts));
    Scalar qs = albert_Q(D, skew_coords(D, s));
    Scalar qt = albert_Q(D, skew_coords(D, t));
    if (!scalar_eq(lhs, scalar_mul(mult, scalar_mul(scalar_mul(qs, qs), qt)))) {
      rep.ok = false;
      ++rep.bad_q;
    }
    // L_{sts} = L_s L_t L_s checked pointwise on a random element
    AVec z = alg_random(A, rng, 2);
    if (!avec_eq(alg_mul(A, sts, z), alg_mul(A, s, alg_mul(A, t, alg_mul(A, s, z))))) {
      rep.ok = false;
      ++rep.bad_l;
    }
    // theta relation, also pointwise
    AVec r = random_skew(D, rng);
    AVec snat = skew_to_alg(D, albert_natural(D, skew_coords(D, s)));
    AVec tnat = skew_to_alg(D, albert_natural(D, skew_coords(D, t)));
    AVec left = alg_mul(A, r, alg_mul(A, snat, alg_mul(A, s, alg_mul(A, tnat, z))));
    AVec right = avec_scale(scalar_neg(qs), alg_mul(A, r, alg_mul(A, tnat, z)));
    if (!avec_eq(left, right)) {
      rep.ok = false;
      ++rep.bad_theta;
    }
  }
  return rep;
}

}  // namespace bioct
