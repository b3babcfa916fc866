// Cohomological invariants of bi-octonion algebras and their Albert forms:
// the b-invariants (centroid class, e3 of the Albert form, e6 of the norm
// transfer), the a-invariants of 14-dimensional I^3 forms, the z-invariants
// of 12-dimensional I^3 forms, Serre's b^h, the division and isotopy
// decision procedures, Rost's constructions and Pfister's I^3_12
// parameterization.
#pragma once

#include <optional>

#include "bioct/cohomology.hpp"
#include "bioct/structurable.hpp"

namespace bioct {

enum class InvariantErrorCode {
  NotI14,
  NotI12,
  NotI2,
  HNotInJ1,
  ParameterizationNotFound,
  DeltaNotTraceZero,
  CrossCheckFailed,
  BadDescriptor,
};

struct InvariantError : std::runtime_error {
  InvariantErrorCode code;
  InvariantError(InvariantErrorCode c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

// --------------------------------------------------------------------------
// Albert forms from descriptors (recipe level; no algebra is built, so this
// also works where algebra construction is barred)
// --------------------------------------------------------------------------

inline Scalar inv_embed_quad(const FieldPtr& E, const Scalar& x) {
  return same_field(x.F, E) ? x : make_quad(E, x, scalar_zero(x.F));
}

inline Scalar inv_quad_conj(const Scalar& x) {
  const auto& qv = std::get<QuadVal>(x.v);
  return make_quad(x.F, *qv.a, scalar_neg(*qv.b));
}

inline QForm descriptor_albert_form(const ProductAlgebraDescriptor& desc) {
  if (desc.corestriction) {
    FieldPtr E = field_quad(desc.k, desc.d);
    std::vector<Scalar> musE;
    for (const auto& m : desc.mu) musE.push_back(inv_embed_quad(E, m));
    QForm np = qf_pure_part(qf_pfister(E, musE));
    Scalar sqrt_d = make_quad(E, scalar_zero(desc.k), scalar_one(desc.k));
    // Scharlau transfer along a + b sqrt(d) |-> -2bd, i.e. x |-> Tr(-sqrt(d) x)
    return transfer_additive_trace(qf_scale(scalar_neg(sqrt_d), np));
  }
  QForm n1p = qf_pure_part(qf_pfister(desc.p1.F, desc.p1.mus));
  QForm n2p = qf_pure_part(qf_pfister(desc.p2.F, desc.p2.mus));
  return qf_sum(n1p, qf_scale(scalar_int(desc.p1.F, -1), n2p));
}

inline FieldPtr descriptor_field(const ProductAlgebraDescriptor& desc) {
  return desc.corestriction ? desc.k : desc.p1.F;
}

inline void check_bioctonion(const ProductAlgebraDescriptor& desc) {
  std::size_t n1 = desc.corestriction ? desc.mu.size() : desc.p1.mus.size();
  std::size_t n2 = desc.corestriction ? desc.mu.size() : desc.p2.mus.size();
  if (n1 != 3 || n2 != 3)
    throw InvariantError(InvariantErrorCode::BadDescriptor,
                         "bi-octonion descriptor required");
  if (desc.corestriction && is_square(desc.d))
    throw InvariantError(InvariantErrorCode::BadDescriptor,
                         "corestriction descriptor needs a nonsquare d");
}

// --------------------------------------------------------------------------
// P_n representative without Witt decomposition.  e_n only needs *some*
// representative of the Witt class (it works via signatures / Springer
// residues), so the expensive anisotropic-kernel computation of qf_P_n is
// bypassed.
// --------------------------------------------------------------------------

inline QForm p_n_representative(int n, const QForm& q) {
  if (q.dim() % 2 != 0)
    throw QFormError(QFormErrorCode::NotInIdeal,
                     "P_n input must be even-dimensional");
  const FieldPtr& F = q.F;
  std::vector<Scalar> rep;
  for (int i = 0; i < q.dim() / 2; ++i) rep.push_back(scalar_one(F));
  QForm l2 = qf_lambda2(q);
  rep.insert(rep.end(), l2.entries.begin(), l2.entries.end());
  QForm nq = qf_neg(q);
  long long copies = 1LL << (n - 1);
  for (long long t = 0; t < copies; ++t)
    rep.insert(rep.end(), nq.entries.begin(), nq.entries.end());
  return QForm{F, std::move(rep)};
}

// --------------------------------------------------------------------------
// b-invariants
// --------------------------------------------------------------------------

struct BInvariants {
  CohClass b1, b3, b6;
  bool decomposable = false;
  QForm albert;
};

inline BInvariants b_invariants(const ProductAlgebraDescriptor& desc) {
  check_bioctonion(desc);
  FieldPtr k = descriptor_field(desc);
  QForm Q = descriptor_albert_form(desc);
  BInvariants out{coh_zero(k, 1), coh_zero(k, 3), coh_zero(k, 6), false, Q};
  out.decomposable = !desc.corestriction;
  if (!out.decomposable) out.b1 = coh_symbol(k, {desc.d});
  out.b3 = e_n(3, Q);

  // b6 = e6(N_{E/k}(n) - 4 n_E) with n_E the binary norm form of E
  QForm N = desc.corestriction
                ? transfer_mult(qf_pfister(field_quad(k, desc.d), [&] {
                    FieldPtr E = field_quad(k, desc.d);
                    std::vector<Scalar> musE;
                    for (const auto& m : desc.mu)
                      musE.push_back(inv_embed_quad(E, m));
                    return musE;
                  }()))
                : transfer_mult_split(qf_pfister(k, desc.p1.mus),
                                      qf_pfister(k, desc.p2.mus));
  Scalar dE = desc.corestriction ? desc.d : scalar_one(k);
  QForm nE = qform(k, {scalar_one(k), scalar_neg(dE)});
  QForm rep = N;
  QForm neg_nE = qf_neg(nE);
  for (int t = 0; t < 4; ++t) rep = qf_sum(rep, neg_nE);
  out.b6 = e_n(6, rep);

  // cross-check against the trace form: <128> T_A - 4 n_E (Lemma Trace path);
  // disagreement is a hard error, never papered over.
  Algebra A = build_product(desc);
  QForm TA = qf_scale(scalar_int(k, 128), trace_form(A));
  QForm rep2 = TA;
  for (int t = 0; t < 4; ++t) rep2 = qf_sum(rep2, neg_nE);
  if (!coh_eq(out.b6, e_n(6, rep2)))
    throw InvariantError(InvariantErrorCode::CrossCheckFailed,
                         "b6 transfer/trace computations disagree");
  return out;
}

// --------------------------------------------------------------------------
// a-invariants of Q in I^3_14
// --------------------------------------------------------------------------

struct AInvariants {
  CohClass a3, a6;
  std::optional<CohClass> ah;
};

inline AInvariants a_invariants(const QForm& Q,
                                const std::optional<CohClass>& h = std::nullopt) {
  if (Q.dim() != 14 || !in_In(Q, 3))
    throw InvariantError(InvariantErrorCode::NotI14,
                         "a-invariants need a 14-dimensional form in I^3");
  AInvariants out{e_n(3, Q), e_n(6, p_n_representative(3, Q)), std::nullopt};
  if (h) {
    if (!in_J(*h, 1))
      throw InvariantError(InvariantErrorCode::HNotInJ1, "h not in J_1");
    // anisotropic vector: first standard basis vector (diagonal entries are
    // nonzero), so Q(v) is the first entry
    out.ah = coh_cup(coh_cup(*h, coh_symbol(Q.F, {Q.entries[0]})), out.a6);
  }
  return out;
}

// a7 = a^h at h = 1, permitted exactly when (-1) = 0 in the backend
inline CohClass a7(const QForm& Q) {
  CohClass one = coh_one(Q.F);
  auto r = a_invariants(Q, one);
  return *r.ah;
}

// --------------------------------------------------------------------------
// Pfister's parameterization of I^3_12
// --------------------------------------------------------------------------

struct I12Param {
  bool found = false;
  Scalar c = make_rat(1);
  QForm r;
};

namespace detail {

// perfect matching on the 12 entries where a pair (i,j) is allowed when
// -c e_i e_j is a square; side selection within each pair is resolved by the
// I^2 membership of the resulting 6-dimensional form.
inline bool i12_pairing(const QForm& q, const Scalar& c, QForm& r_out) {
  int n = q.dim();
  const FieldPtr& F = q.F;
  std::vector<std::vector<int>> ok(static_cast<std::size_t>(n));
  Scalar nc = scalar_neg(c);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (is_square(scalar_mul(nc, scalar_mul(q.entries[i], q.entries[j]))))
        ok[static_cast<std::size_t>(i)].push_back(j);
  std::vector<int> mate(static_cast<std::size_t>(n), -1);
  std::vector<std::pair<int, int>> pairs;
  auto match = [&](auto&& self, int i) -> bool {
    while (i < n && mate[static_cast<std::size_t>(i)] >= 0) ++i;
    if (i >= n) return true;
    for (int j : ok[static_cast<std::size_t>(i)]) {
      if (mate[static_cast<std::size_t>(j)] >= 0) continue;
      mate[static_cast<std::size_t>(i)] = j;
      mate[static_cast<std::size_t>(j)] = i;
      pairs.emplace_back(i, j);
      if (self(self, i + 1)) return true;
      pairs.pop_back();
      mate[static_cast<std::size_t>(i)] = -1;
      mate[static_cast<std::size_t>(j)] = -1;
    }
    return false;
  };
  if (!match(match, 0)) return false;
  // each pair contributes either side as the r-entry; scan the 2^6 choices
  // for one with r in I^2 (cheap discriminant test first, via in_In)
  int m = static_cast<int>(pairs.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<Scalar> e;
    for (int t = 0; t < m; ++t) {
      int idx = (mask >> t) & 1 ? pairs[static_cast<std::size_t>(t)].second
                                : pairs[static_cast<std::size_t>(t)].first;
      e.push_back(q.entries[idx]);
    }
    QForm r{F, std::move(e)};
    if (!in_In(r, 2)) continue;
    r_out = r;
    return true;
  }
  return false;
}

}  // namespace detail

inline I12Param i12_parameterize(const QForm& q) {
  if (q.dim() != 12 || !in_In(q, 3))
    throw InvariantError(InvariantErrorCode::NotI12,
                         "parameterization needs a 12-dimensional form in I^3");
  const FieldPtr& F = q.F;
  I12Param out;
  if (qf_is_hyperbolic(q)) {
    out.found = true;
    out.c = scalar_one(F);
    std::vector<Scalar> e;
    for (int i = 0; i < 3; ++i) {
      e.push_back(scalar_one(F));
      e.push_back(scalar_int(F, -1));
    }
    out.r = QForm{F, std::move(e)};
    return out;
  }
  // candidate multipliers: represented values (diagonal entries), pairwise
  // entry products, both up to sign (when -1 is not a square, <<c>> and
  // <<-c>> differ and only one of them pairs up), and -- where the
  // square-class group is finite -- all square classes; deduplicated up to
  // squares.
  std::vector<Scalar> cands;
  auto push = [&](const Scalar& c) {
    for (const auto& u : cands)
      if (is_square(scalar_mul(u, c))) return;
    cands.push_back(c);
  };
  auto push_pm = [&](const Scalar& c) {
    push(c);
    push(scalar_neg(c));
  };
  for (const auto& e : q.entries) push_pm(e);
  for (std::size_t i = 0; i < q.entries.size(); ++i)
    for (std::size_t j = i + 1; j < q.entries.size(); ++j)
      push_pm(scalar_mul(q.entries[i], q.entries[j]));
  FieldPtr deep = F;
  while (deep->kind == FieldKind::Laurent) deep = deep->base;
  if (deep->kind == FieldKind::Fp &&
      (F->kind == FieldKind::Fp || F->vars.size() <= 3))
    for (const auto& c : square_class_reps(F)) push(c);
  for (const auto& c : cands) {
    QForm r;
    if (detail::i12_pairing(q, c, r)) {
      // the pairing is entrywise up to squares, hence an isometry proof
      out.found = true;
      out.c = c;
      out.r = r;
      return out;
    }
  }
  // honest failure: the search bound is exhausted; Pfister guarantees a
  // factorization exists, so this reports the bound, not nonexistence
  return out;
}

// --------------------------------------------------------------------------
// z-invariants of q in I^3_12
// --------------------------------------------------------------------------

struct ZInvariants {
  CohClass z3, z5;
  std::optional<CohClass> zh;
  Scalar c = make_rat(1);
  QForm r;
};

inline ZInvariants z_invariants(const QForm& q,
                                const std::optional<CohClass>& h = std::nullopt) {
  I12Param par = i12_parameterize(q);  // also enforces the I^3_12 check
  if (!par.found)
    throw InvariantError(InvariantErrorCode::ParameterizationNotFound,
                         "no <<c>>r factorization found within bounds");
  ZInvariants out;
  out.c = par.c;
  out.r = par.r;
  out.z3 = e_n(3, q);
  out.z5 = coh_cup(coh_symbol(q.F, {par.c}),
                   e_n(4, p_n_representative(2, par.r)));
  if (h) {
    if (!in_J(*h, 1))
      throw InvariantError(InvariantErrorCode::HNotInJ1, "h not in J_1");
    out.zh = coh_cup(coh_cup(*h, coh_symbol(q.F, {q.entries[0]})), out.z5);
  }
  return out;
}

// --------------------------------------------------------------------------
// Serre's b^h with preconditions enforced
// --------------------------------------------------------------------------

inline CohClass serre_bh_checked(const CohClass& h, const QForm& q) {
  if (!in_J(h, 1))
    throw InvariantError(InvariantErrorCode::HNotInJ1, "h not in J_1");
  if (q.dim() <= 2 || q.dim() % 2 != 0 || !in_In(q, 2))
    throw InvariantError(InvariantErrorCode::NotI2,
                         "b^h needs an even form of dimension > 2 in I^2");
  return serre_bh(h, q);
}

// --------------------------------------------------------------------------
// Division and isotopy decisions
// --------------------------------------------------------------------------

struct DivisionReport {
  bool division = false;
  bool centroid_field = false;
  QForm albert;
  std::optional<std::vector<Scalar>> isotropic_witness;
};

// Form-level verdict: division iff the Albert form is anisotropic and the
// centroid parameter d is a nonsquare (field centroid).
inline DivisionReport is_division_form(const QForm& albert, const Scalar& d) {
  DivisionReport rep;
  rep.albert = albert;
  rep.centroid_field = !is_square(d);
  IsoResult iso = qf_isotropic(albert);
  rep.division = rep.centroid_field && !iso.isotropic;
  if (iso.isotropic) rep.isotropic_witness = iso.witness;
  return rep;
}

inline DivisionReport is_division(const ProductAlgebraDescriptor& desc) {
  FieldPtr k = descriptor_field(desc);
  Scalar d = desc.corestriction ? desc.d : scalar_one(k);
  DivisionReport rep = is_division_form(descriptor_albert_form(desc), d);
  if (desc.corestriction && !is_square(desc.d)) {
    // Cor cross-check: a slot of the pure norm n' lying in k * (E^x)^2 means
    // n' represents an element of k, which forces the transfer form to be
    // isotropic.  sigma(a)/a being a square in E detects such a slot.
    FieldPtr E = field_quad(k, desc.d);
    std::vector<Scalar> musE;
    for (const auto& m : desc.mu) musE.push_back(inv_embed_quad(E, m));
    QForm np = qf_pure_part(qf_pfister(E, musE));
    for (const auto& a : np.entries) {
      Scalar conj_a = inv_quad_conj(a);
      if (scalar_sqrt(scalar_div(conj_a, a))) {
        if (rep.division)
          throw InvariantError(InvariantErrorCode::CrossCheckFailed,
                               "k-representing slot found but transfer form "
                               "anisotropic");
        break;
      }
    }
  }
  return rep;
}

enum class IsotopyVerdict { Isotopic, NotIsotopic, Undecided };

inline IsotopyVerdict is_isotopic(const ProductAlgebraDescriptor& a,
                                  const ProductAlgebraDescriptor& b) {
  check_bioctonion(a);
  check_bioctonion(b);
  if (!same_field(descriptor_field(a), descriptor_field(b)))
    throw FieldError(FieldErrorCode::MixedFields, "isotopy over mixed fields");
  SimilarResult s = qf_similar(descriptor_albert_form(a),
                               descriptor_albert_form(b));
  switch (s.verdict) {
    case SimilarVerdict::Similar: return IsotopyVerdict::Isotopic;
    case SimilarVerdict::NotSimilar: return IsotopyVerdict::NotIsotopic;
    case SimilarVerdict::Undecided: break;
  }
  return IsotopyVerdict::Undecided;
}

// --------------------------------------------------------------------------
// Rost's constructions of forms in I^3_14 with bi-octonion witnesses
// --------------------------------------------------------------------------

struct RostResult {
  QForm Q;
  ProductAlgebraDescriptor desc;
};

struct RostTwoPfister {
  Scalar c = make_rat(1);
  std::vector<Scalar> phi1, phi2;  // 3-Pfister slot data over k
};

struct RostTransfer {
  FieldPtr k;
  Scalar d = make_rat(1);      // E = k(sqrt d)
  Scalar delta = make_rat(1);  // trace-zero element of E
  std::vector<Scalar> phi;     // 3-Pfister slot data over E
};

inline RostResult rost_construct(const RostTwoPfister& spec) {
  const FieldPtr& k = spec.c.F;
  QForm p1 = qf_pure_part(qf_pfister(k, spec.phi1));
  QForm p2 = qf_pure_part(qf_pfister(k, spec.phi2));
  RostResult out;
  out.Q = qf_scale(spec.c,
                   qf_sum(p1, qf_scale(scalar_int(k, -1), p2)));
  out.desc.corestriction = false;
  out.desc.p1 = CompositionAlgebraParams{k, spec.phi1};
  out.desc.p2 = CompositionAlgebraParams{k, spec.phi2};
  return out;
}

inline RostResult rost_construct(const RostTransfer& spec) {
  FieldPtr E = field_quad(spec.k, spec.d);
  if (!same_field(spec.delta.F, E))
    throw FieldError(FieldErrorCode::MixedFields, "delta not over E");
  const auto& qv = std::get<QuadVal>(spec.delta.v);
  if (!scalar_is_zero(*qv.a))
    throw InvariantError(InvariantErrorCode::DeltaNotTraceZero,
                         "delta must have trace zero in E");
  QForm np = qf_pure_part(qf_pfister(E, spec.phi));
  RostResult out;
  out.Q = transfer_additive_trace(qf_scale(spec.delta, np));
  out.desc.corestriction = true;
  out.desc.k = spec.k;
  out.desc.d = spec.d;
  out.desc.mu = spec.phi;
  return out;
}

}  // namespace bioct
