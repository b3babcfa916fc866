#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bioct/qforms.hpp"

using namespace bioct;

namespace {

QForm random_form(const FieldPtr& F, int dim, Rng& rng) {
  std::vector<Scalar> e;
  for (int i = 0; i < dim; ++i) e.push_back(random_scalar(F, rng, true, 5));
  return qform(F, std::move(e));
}

// Witt-class representative of a WittClass (kernel only; planes vanish in W).
const QForm& rep(const WittClass& w) { return w.kernel; }

}  // namespace

TEST_CASE("builders") {
  auto F = field_Q();
  auto pf = qf_pfister(F, {make_rat(-1), make_rat(-1), make_rat(-1)});
  CHECK(pf.dim() == 8);
  for (const auto& e : pf.entries) CHECK(scalar_eq(e, make_rat(1)));

  auto dd = qf_pfister(F, {make_rat(5)});
  auto pp = qf_pure_part(dd);
  CHECK(pp.dim() == 1);
  CHECK(scalar_eq(pp.entries[0], make_rat(-5)));

  auto scaled = qf_scale(make_rat(2), qform_ints(F, {1, -3}));
  CHECK(scalar_eq(scaled.entries[0], make_rat(2)));
  CHECK(scalar_eq(scaled.entries[1], make_rat(-6)));

  CHECK_THROWS_AS(qform(F, {scalar_zero(F)}), QFormError);
}

TEST_CASE("gram diagonalization") {
  auto F = field_Q();
  // hyperbolic plane in its off-diagonal model
  std::vector<std::vector<Scalar>> g{{make_rat(0), make_rat(1)},
                                     {make_rat(1), make_rat(0)}};
  auto q = qf_from_gram(F, g);
  CHECK(qf_isometric(q, qform_ints(F, {1, -1})));
  // singular gram rejected
  std::vector<std::vector<Scalar>> s{{make_rat(1), make_rat(1)},
                                     {make_rat(1), make_rat(1)}};
  CHECK_THROWS_AS(qf_from_gram(F, s), QFormError);
  // towers rejected
  auto T = field_laurent(F, {"t"});
  CHECK_THROWS_AS(qf_from_gram(T, {}), FieldError);
}

TEST_CASE("isotropy over Q") {
  auto F = field_Q();
  auto q = qform_ints(F, {1, 1, 1, 1, -7});
  auto r = qf_isotropic(q);
  CHECK(r.isotropic);
  REQUIRE(r.witness.has_value());
  CHECK(qf_evaluates_to_zero(q, *r.witness));
  bool nonzero = false;
  for (const auto& x : *r.witness)
    if (!scalar_is_zero(x)) nonzero = true;
  CHECK(nonzero);

  auto definite = qf_pfister(F, {make_rat(-1), make_rat(-1), make_rat(-1)});
  CHECK_FALSE(qf_isotropic(definite).isotropic);

  // dim-4 local subtleties: <1,1,1,-7> is anisotropic (7 is not a sum of
  // three rational squares), while <1,1,-3,-7> is isotropic
  CHECK_FALSE(qf_isotropic(qform_ints(F, {1, 1, 1, -7})).isotropic);
  auto q4 = qform_ints(F, {1, 1, -3, -7});
  auto r4 = qf_isotropic(q4);
  CHECK(r4.isotropic);
  CHECK(qf_evaluates_to_zero(q4, *r4.witness));

  // dim-3: <1,1,-7> anisotropic, <1,1,-2> isotropic (1+1=2)
  CHECK_FALSE(qf_isotropic(qform_ints(F, {1, 1, -7})).isotropic);
  CHECK(qf_isotropic(qform_ints(F, {1, 1, -2})).isotropic);
}

TEST_CASE("isotropy over F_p and towers") {
  auto F5 = field_Fp(5);
  auto q = qform_ints(F5, {1, 1, 1, 1});
  auto r = qf_isotropic(q);
  CHECK(r.isotropic);
  CHECK(qf_evaluates_to_zero(q, *r.witness));

  auto w = qf_witt_decompose(q);
  CHECK(w.kernel.dim() == 0);
  CHECK(w.hyperbolic == 2);

  // dim 2: <1,1> isotropic over F5 (2^2 = -1), not over F7
  CHECK(qf_isotropic(qform_ints(F5, {1, 1})).isotropic);
  CHECK_FALSE(qf_isotropic(qform_ints(field_Fp(7), {1, 1})).isotropic);

  auto T = field_laurent(field_Q(), {"t"});
  auto one = make_laurent(T, make_rat(1), {0});
  auto negt = make_laurent(T, make_rat(-1), {1});
  CHECK_FALSE(qf_isotropic(qform(T, {one, negt})).isotropic);
  // <1,-1> over the tower is isotropic, witness embeds
  auto negone = make_laurent(T, make_rat(-1), {0});
  auto rt = qf_isotropic(qform(T, {one, negone}));
  CHECK(rt.isotropic);
  CHECK(qf_evaluates_to_zero(qform(T, {one, negone}), *rt.witness));
  // mixed-level witness: <t, -t, 1, 1, 1, 1, 1, -7> style splits
  auto t = make_laurent(T, make_rat(1), {1});
  auto q2 = qform(T, {t, make_laurent(T, make_rat(-4), {1})});
  auto rq2 = qf_isotropic(q2);
  CHECK(rq2.isotropic);
  CHECK(qf_evaluates_to_zero(q2, *rq2.witness));
}

TEST_CASE("witt decomposition") {
  auto F = field_Q();
  auto w = qf_witt_decompose(qform_ints(F, {1, -1, 1, -1, 5}));
  CHECK(w.hyperbolic == 2);
  REQUIRE(w.kernel.dim() == 1);
  CHECK(square_class_eq(w.kernel.entries[0], make_rat(5)));

  // <<1,a,b>> contains a <<1>> = <1,-1> factor: fully split
  auto pf = qf_pfister(F, {make_rat(1), make_rat(2), make_rat(-3)});
  auto wpf = qf_witt_decompose(pf);
  CHECK(wpf.kernel.dim() == 0);
  CHECK(wpf.hyperbolic == 4);

  auto F7 = field_Fp(7);
  auto pf7 = qf_pfister(F7, {make_fp(F7, 1), make_fp(F7, 3), make_fp(F7, 5)});
  auto wpf7 = qf_witt_decompose(pf7);
  CHECK(wpf7.kernel.dim() == 0);
  CHECK(wpf7.hyperbolic == 4);
}

TEST_CASE("witt decomposition round trip") {
  Rng rng(2024);
  std::vector<FieldPtr> backends{field_Q(), field_Fp(5),
                                 field_laurent(field_Fp(5), {"t"}),
                                 field_laurent(field_Q(), {"t1", "t2"})};
  for (const auto& F : backends) {
    for (int trial = 0; trial < 12; ++trial) {
      int dim = 1 + static_cast<int>(rng.range(0, 9));
      auto q = random_form(F, dim, rng);
      auto w = qf_witt_decompose(q);
      CHECK_FALSE(qf_isotropic(w.kernel).isotropic);
      auto recon = qf_sum(w.kernel, qf_hyperbolic(F, w.hyperbolic));
      CHECK(qf_isometric(recon, q));
    }
  }
}

TEST_CASE("isometry") {
  auto F = field_Q();
  CHECK(qf_isometric(qform_ints(F, {1, -1}), qform_ints(F, {2, -2})));
  CHECK_FALSE(qf_isometric(qform_ints(F, {1, 1}), qform_ints(F, {1, 2})));
  // same dim/sig/disc but different Hasse sets: <1,1,1,1> vs <2,2,2,2>?
  // both have trivial Hasse; use <1,7,7,7> vs <7,1,1,1>... same class; use
  // the classical pair <1,1,1,1> vs <1,1,1,1> scaled: fall back to a known
  // non-pair: <2,3> vs <1,6> (same disc 6, check Hasse distinguishes or not)
  // (2,3)_v vs (1,6)_v = 1: s(<2,3>) ramifies where (2,3)=-1.
  bool same = qf_isometric(qform_ints(F, {2, 3}), qform_ints(F, {1, 6}));
  // oracle: both represent... (2,3)_2: by formula = -1? verify consistency
  // with binary-form theory: <a,b> ~ <c,d> iff same disc and same Hasse.
  CHECK(same == (symbol_places(Rat(2), Rat(3)) ==
                 symbol_places(Rat(1), Rat(6))));

  auto F5 = field_Fp(5);
  CHECK_FALSE(qf_isometric(qform_ints(F5, {1, 1}), qform_ints(F5, {1, 2})));
  CHECK(qf_isometric(qform_ints(F5, {1, 4}), qform_ints(F5, {4, 4})));

  auto T2 = field_laurent(field_Q(), {"t1", "t2"});
  auto t1 = make_laurent(T2, make_rat(1), {1, 0});
  auto t2 = make_laurent(T2, make_rat(1), {0, 1});
  auto t1t2sq = make_laurent(T2, make_rat(4), {1, 1});
  CHECK_FALSE(qf_isometric(qform(T2, {t1, t2}), qform(T2, {t1, t1t2sq})));
  CHECK(qf_isometric(qform(T2, {t1, t2}),
                     qform(T2, {make_laurent(T2, make_rat(9), {1, 2}),
                                make_laurent(T2, make_rat(1, 4), {2, 1})})));
}

TEST_CASE("isometry is an equivalence relation") {
  Rng rng(515);
  std::vector<FieldPtr> backends{field_Q(), field_Fp(11),
                                 field_laurent(field_Q(), {"t"})};
  for (const auto& F : backends) {
    for (int trial = 0; trial < 67; ++trial) {
      int dim = 1 + static_cast<int>(rng.range(0, 4));
      auto a = random_form(F, dim, rng);
      // b: entries of a scaled by random squares and permuted (isometric)
      auto entries = a.entries;
      for (auto& e : entries) {
        Scalar y = random_scalar(F, rng, true, 4);
        e = scalar_mul(e, scalar_mul(y, y));
      }
      std::reverse(entries.begin(), entries.end());
      auto b = qform(F, entries);
      auto c = random_form(F, dim, rng);
      CHECK(qf_isometric(a, a));
      CHECK(qf_isometric(a, b));
      CHECK(qf_isometric(b, a));
      if (qf_isometric(a, c)) CHECK(qf_isometric(b, c));
    }
  }
}

TEST_CASE("similarity") {
  auto F = field_Q();
  // <<-1,-1,-1>>' perp <-1><<1,1,1>>' vs its negative: Similar(-1)
  auto psi1p = qf_pure_part(qf_pfister(F, {make_rat(-1), make_rat(-1), make_rat(-1)}));
  auto psi2p = qf_pure_part(qf_pfister(F, {make_rat(1), make_rat(1), make_rat(1)}));
  auto q = qf_sum(psi1p, qf_scale(make_rat(-1), psi2p));
  auto res = qf_similar(q, qf_neg(q));
  REQUIRE(res.verdict == SimilarVerdict::Similar);
  CHECK(qf_isometric(qf_scale(*res.c, q), qf_neg(q)));

  auto r2 = qf_similar(qf_pfister(F, {make_rat(2), make_rat(3)}),
                       qf_pfister(F, {make_rat(-1), make_rat(-1)}));
  CHECK(r2.verdict == SimilarVerdict::NotSimilar);
}

TEST_CASE("similar(q, <c>q) over all backends") {
  Rng rng(606);
  std::vector<FieldPtr> backends{field_Q(), field_Fp(7),
                                 field_laurent(field_Fp(5), {"t"})};
  for (const auto& F : backends) {
    for (int trial = 0; trial < 67; ++trial) {
      int dim = 2 * (1 + static_cast<int>(rng.range(0, 2)));
      auto q = random_form(F, dim, rng);
      Scalar c = random_scalar(F, rng, true, 4);
      auto res = qf_similar(q, qf_scale(c, q));
      REQUIRE(res.verdict == SimilarVerdict::Similar);
      CHECK(qf_isometric(qf_scale(*res.c, q), qf_scale(c, q)));
    }
  }
}

TEST_CASE("additive transfer") {
  auto k = field_Q();
  // split: concatenation
  auto q1 = qform_ints(k, {1, 2});
  auto q2 = qform_ints(k, {3, -1});
  auto ts = transfer_additive_split(q1, q2);
  CHECK(ts.dim() == 4);
  CHECK(qf_isometric(ts, qform_ints(k, {1, 2, 3, -1})));

  for (long long d : {-1LL, 2LL, 3LL, 5LL}) {
    auto E = field_quad(k, make_rat(d));
    auto one = qform(E, {scalar_one(E)});
    auto t = transfer_additive_trace(one);
    CHECK(qf_isometric(t, qform_ints(k, {2, 2 * d})));
  }

  // custom functional and its degenerate rejection
  auto E = field_quad(k, make_rat(2));
  auto one = qform(E, {scalar_one(E)});
  CHECK_THROWS_AS(transfer_additive(one, make_rat(0), make_rat(0)), QFormError);
  auto tc = transfer_additive(one, make_rat(0), make_rat(1));  // s(sqrt2)=1
  CHECK(tc.dim() == 2);
  // s(x^2) on {1,sqrt2}: gram [[0,1],[1,0]] -> hyperbolic
  CHECK(qf_isometric(tc, qform_ints(k, {1, -1})));
}

TEST_CASE("multiplicative transfer basics") {
  auto k = field_Q();
  Rng rng(321);
  for (long long d : {-1LL, 2LL, -2LL, 3LL, 5LL}) {
    auto E = field_quad(k, make_rat(d));
    auto Eet = etale_field(k, make_rat(d));
    for (int trial = 0; trial < 10; ++trial) {
      Scalar e1 = random_scalar(E, rng, true, 4);
      Scalar e2 = random_scalar(E, rng, true, 4);
      // N(<e>) = <N(e)>
      auto n1 = transfer_mult(qform(E, {e1}));
      REQUIRE(n1.dim() == 1);
      const auto& qv = std::get<QuadVal>(e1.v);
      Scalar Ne1 = scalar_sub(scalar_mul(*qv.a, *qv.a),
                              scalar_mul(make_rat(d), scalar_mul(*qv.b, *qv.b)));
      CHECK(square_class_eq(n1.entries[0], Ne1));
      // multiplicativity on 1-dim forms
      auto nprod = transfer_mult(qform(E, {scalar_mul(e1, e2)}));
      auto n2 = transfer_mult(qform(E, {e2}));
      CHECK(qf_isometric(nprod, qf_tensor(n1, n2)));
    }
    // N(H) = <2,-2d,1,-1>
    auto nh = transfer_mult(qform(E, {scalar_one(E), scalar_int(E, -1)}));
    CHECK(qf_isometric(nh, qform_ints(k, {2, -2 * d, 1, -1})));
  }
  // split case: tensor
  auto np = transfer_mult_split(qform_ints(k, {1, 2}), qform_ints(k, {3, 5}));
  CHECK(qf_isometric(np, qform_ints(k, {3, 5, 6, 10})));
}

TEST_CASE("Rost-Wittkop norm form closed formula") {
  auto k = field_Q();
  Rng rng(88);
  for (long long d : {-1LL, 2LL, -2LL, 3LL, 5LL}) {
    auto E = field_quad(k, make_rat(d));
    auto norm_of = [&](const Scalar& c) {
      const auto& qv = std::get<QuadVal>(c.v);
      return scalar_sub(scalar_mul(*qv.a, *qv.a),
                        scalar_mul(make_rat(d), scalar_mul(*qv.b, *qv.b)));
    };
    auto trace_of = [&](const Scalar& c) {
      const auto& qv = std::get<QuadVal>(c.v);
      return scalar_add(*qv.a, *qv.a);
    };
    for (int n = 2; n <= 3; ++n) {
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Scalar> cs;
        bool zero_trace = false;
        for (int i = 0; i < n; ++i) {
          Scalar c = random_scalar(E, rng, true, 3);
          if (trial == 2 && i == 0)  // force the degenerate branch
            c = make_quad(E, make_rat(0), make_rat(1));
          cs.push_back(c);
          if (scalar_is_zero(trace_of(c))) zero_trace = true;
        }
        auto q = qf_pfister(E, cs);
        auto N = transfer_mult(q);
        long long half = 1LL << (n - 1);
        auto dd = qf_pfister(k, {make_rat(d)});
        QForm halfdd{k, {}};
        for (long long i = 0; i < half; ++i) halfdd = qf_sum(halfdd, dd);
        if (zero_trace) {
          auto rhs = qf_sum(qf_hyperbolic(k, half * ((1LL << n) - 1)), halfdd);
          CHECK(qf_isometric(N, rhs));
        } else {
          QForm prod = qform(k, {scalar_one(k)});
          bool first = true;
          for (const auto& c : cs) {
            auto fac = qf_pfister(
                k, {trace_of(c),
                    scalar_neg(scalar_mul(make_rat(d), norm_of(c)))});
            prod = first ? fac : qf_tensor(prod, fac);
            first = false;
          }
          auto lhs = qf_sum(N, qf_hyperbolic(k, half));
          auto rhs = qf_sum(halfdd, prod);
          CHECK(qf_isometric(lhs, rhs));
        }
      }
    }
  }
}

TEST_CASE("lambda^2") {
  auto F = field_Q();
  auto l = qf_lambda2(qform_ints(F, {2, 3, 5}));
  CHECK(qf_isometric(l, qform_ints(F, {6, 10, 15})));
  CHECK(qf_isometric(qf_lambda2(qform_ints(F, {1, -1})), qform_ints(F, {-1})));
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto q = random_form(field_Fp(7), 4, rng);
    Scalar c = random_scalar(field_Fp(7), rng, true);
    CHECK(qf_isometric(qf_lambda2(qf_scale(c, q)), qf_lambda2(q)));
  }
  CHECK_THROWS_AS(qf_lambda2(qform_ints(F, {1})), QFormError);
}

TEST_CASE("lambda^2 of additive transfer (Rost-Wittkop)") {
  // lambda^2(T(x)) = T(lambda^2(x)) + <d> N(x) in W(Q)
  auto k = field_Q();
  Rng rng(3141);
  int done = 0;
  for (long long d : {-1LL, 2LL, 5LL}) {
    auto E = field_quad(k, make_rat(d));
    for (int trial = 0; trial < 17 && done < 50; ++trial, ++done) {
      int dim = 2 + static_cast<int>(rng.range(0, 2));
      auto x = random_form(E, dim, rng);
      auto lhs = qf_lambda2(transfer_additive_trace(x));
      auto rhs = qf_sum(transfer_additive_trace(qf_lambda2(x)),
                        qf_scale(make_rat(d), transfer_mult(x)));
      CHECK(witt_eq(lhs, rhs));
    }
  }
}

TEST_CASE("P_n") {
  auto F7 = field_Fp(7);
  Rng rng(555);
  // P_n of an n-fold Pfister form vanishes
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scalar> cs2{random_scalar(F7, rng, true),
                            random_scalar(F7, rng, true)};
    auto w2 = qf_P_n(2, qf_pfister(F7, cs2));
    CHECK(rep(w2).dim() == 0);
    std::vector<Scalar> cs3 = cs2;
    cs3.push_back(random_scalar(F7, rng, true));
    auto w3 = qf_P_n(3, qf_pfister(F7, cs3));
    CHECK(rep(w3).dim() == 0);
  }
  // one rational instance
  auto F = field_Q();
  auto w = qf_P_n(2, qf_pfister(F, {make_rat(2), make_rat(3)}));
  CHECK(rep(w).dim() == 0);

  // P_n(<c>q) = P_n(q) + 2^{n-1}<<c>>q
  for (int trial = 0; trial < 10; ++trial) {
    auto q = qf_sum(qf_pfister(F7, {random_scalar(F7, rng, true),
                                    random_scalar(F7, rng, true)}),
                    qf_pfister(F7, {random_scalar(F7, rng, true),
                                    random_scalar(F7, rng, true)}));
    Scalar c = random_scalar(F7, rng, true);
    auto lhs = rep(qf_P_n(2, qf_scale(c, q)));
    auto corr = qf_tensor(qf_pfister(F7, {c}), q);
    QForm rhs = rep(qf_P_n(2, q));
    rhs = qf_sum(rhs, corr);
    rhs = qf_sum(rhs, corr);  // 2^{n-1} = 2 copies
    CHECK(witt_eq(lhs, rhs));
  }

  // P_n(x+y) = P_n(x) + xy + P_n(y)
  for (int trial = 0; trial < 10; ++trial) {
    auto x = qf_pfister(F7, {random_scalar(F7, rng, true),
                             random_scalar(F7, rng, true)});
    auto y = qf_pfister(F7, {random_scalar(F7, rng, true),
                             random_scalar(F7, rng, true)});
    auto lhs = rep(qf_P_n(2, qf_sum(x, y)));
    auto rhs = qf_sum(qf_sum(rep(qf_P_n(2, x)), qf_tensor(x, y)),
                      rep(qf_P_n(2, y)));
    CHECK(witt_eq(lhs, rhs));
  }

  CHECK_THROWS_AS(qf_P_n(2, qform_ints(F7, {1, 2, 3})), QFormError);
}

TEST_CASE("signature") {
  auto F = field_Q();
  CHECK(qf_signature(qform_ints(F, {1, 1, -1})) == 1);
  CHECK(qf_signature(qf_pfister(F, {make_rat(-1), make_rat(-1), make_rat(-1)})) == 8);
  CHECK(qf_signature(qform_ints(F, {1, -1})) == 0);
}

TEST_CASE("pfister splitting over quadratic extensions") {
  // For a Pfister form q over Q and F = Q(sqrt a): q_F isotropic iff the pure
  // part q' represents -a.  The representation side is decidable; when it
  // holds we build an explicit isotropic vector over F and verify it.  When
  // it fails and q is definite with a > 0, anisotropy over F follows from
  // F being real-embeddable.
  auto k = field_Q();
  Rng rng(7777);
  int verified_iso = 0, verified_aniso = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Scalar> cs;
    int n = 2 + static_cast<int>(rng.range(0, 1));
    for (int i = 0; i < n; ++i) cs.push_back(random_scalar(k, rng, true, 5));
    auto q = qf_pfister(k, cs);
    Rat a_r;
    do {
      a_r = std::get<Rat>(random_scalar(k, rng, true, 6).v);
    } while (rat_squarefree_rep(a_r) == 1);
    Scalar a = make_rat(a_r);
    auto qp = qf_pure_part(q);
    // does q' represent -a?  iff q' perp <a> isotropic (q' anisotropic case)
    // and trivially if q' is isotropic (universal)
    auto test_form = qf_sum(qp, qform(k, {a}));
    bool represents = qf_isotropic(test_form).isotropic;
    if (represents) {
      // find v with q'(v) = -a: from a witness of q' perp <a> with nonzero
      // last coordinate, or from universality of an isotropic q'
      auto E = field_quad(k, a);
      std::vector<Scalar> v(qp.dim(), scalar_zero(k));
      auto wit = qf_isotropic(test_form).witness;
      REQUIRE(wit.has_value());
      if (!scalar_is_zero(wit->back())) {
        Scalar z = scalar_inv(wit->back());
        for (int i = 0; i < qp.dim(); ++i)
          v[i] = scalar_mul((*wit)[i], z);
      } else {
        // q' itself isotropic: q over Q isotropic, embed its witness over E
        auto wq = qf_isotropic(q);
        REQUIRE(wq.isotropic);
        std::vector<Scalar> wE;
        for (const auto& x : *wq.witness)
          wE.push_back(make_quad(E, x, scalar_zero(k)));
        QForm qE{E, [&] {
                   std::vector<Scalar> es;
                   for (const auto& e : q.entries)
                     es.push_back(make_quad(E, e, scalar_zero(k)));
                   return es;
                 }()};
        CHECK(qf_evaluates_to_zero(qE, wE));
        ++verified_iso;
        continue;
      }
      // explicit isotropic vector over E: (sqrt a, v) for q = <1> perp q'
      std::vector<Scalar> w;
      w.push_back(make_quad(E, scalar_zero(k), scalar_one(k)));
      for (const auto& x : v) w.push_back(make_quad(E, x, scalar_zero(k)));
      QForm qE{E, [&] {
                 std::vector<Scalar> es;
                 for (const auto& e : q.entries)
                   es.push_back(make_quad(E, e, scalar_zero(k)));
                 return es;
               }()};
      CHECK(qf_evaluates_to_zero(qE, w));
      ++verified_iso;
    } else {
      bool definite = std::abs(qf_signature(q)) == q.dim();
      if (definite && a_r > 0) ++verified_aniso;  // real embedding argument
    }
  }
  CHECK(verified_iso > 5);
  CHECK(verified_aniso > 0);
}
