#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bioct/tkk.hpp"

using namespace bioct;

namespace {

CompositionAlgebraParams params_ints(const FieldPtr& F,
                                     std::vector<long long> ms) {
  CompositionAlgebraParams p;
  p.F = F;
  for (long long m : ms) p.mus.push_back(scalar_int(F, m));
  return p;
}

// split product algebra with factor dimensions 2^|m1| x 2^|m2|
Algebra split_product(const FieldPtr& F, std::vector<long long> m1,
                      std::vector<long long> m2) {
  return build_decomposable(params_ints(F, std::move(m1)),
                            params_ints(F, std::move(m2)));
}

bool leibniz_holds(const Algebra& A, const Mat<ScalarCtx>& D, Rng& rng) {
  ScalarCtx sc{A.F};
  AVec x = alg_random(A, rng), y = alg_random(A, rng);
  AVec lhs = mat_vec(sc, D, alg_mul(A, x, y));
  AVec rhs = avec_add(alg_mul(A, mat_vec(sc, D, x), y),
                      alg_mul(A, x, mat_vec(sc, D, y)));
  return avec_eq(lhs, rhs);
}

bool commutes_with_involution(const Algebra& A, const Mat<ScalarCtx>& D,
                              Rng& rng) {
  ScalarCtx sc{A.F};
  AVec x = alg_random(A, rng);
  return avec_eq(mat_vec(sc, D, alg_invol(A, x)),
                 alg_invol(A, mat_vec(sc, D, x)));
}

Mat<ScalarCtx> commutator(const FieldPtr& F, const Mat<ScalarCtx>& a,
                          const Mat<ScalarCtx>& b) {
  ScalarCtx sc{F};
  return mat_sub(sc, mat_mul(sc, a, b), mat_mul(sc, b, a));
}

}  // namespace

TEST_CASE("derivation dimensions match the per-factor table") {
  auto F5 = field_Fp(5);
  Rng rng(11);

  auto check = [&](const Algebra& A, int expect) {
    auto ders = derivations(A);
    REQUIRE(static_cast<int>(ders.size()) == expect);
    for (const auto& D : ders) {
      CHECK(leibniz_holds(A, D, rng));
      CHECK(commutes_with_involution(A, D, rng));
    }
  };

  check(split_product(F5, {1, 1}, {1}), 3);         // (4,2) -> 3
  check(split_product(F5, {1, 1, 1}, {}), 14);      // (8,1) -> 14
  check(split_product(F5, {1, 1, 1}, {1, 1, 1}), 28);  // (8,8) -> 28

  // small case over the rationals, with division-algebra parameters
  check(split_product(field_Q(), {-1, -1}, {-1}), 3);
}

TEST_CASE("derivations form a Lie subalgebra") {
  auto F5 = field_Fp(5);
  Algebra A = split_product(F5, {1, 1, 1}, {});  // (8,1): Der = 14
  auto ders = derivations(A);
  REQUIRE(ders.size() == 14);

  ScalarCtx sc{A.F};
  RankAccumulator<ScalarCtx> span(sc, A.dim * A.dim);
  for (const auto& D : ders) span.add(mat_flatten(D));
  REQUIRE(span.rank() == 14);

  Rng rng(23);
  for (int t = 0; t < 25; ++t) {
    std::size_t a = static_cast<std::size_t>(rng.range(0, 13));
    std::size_t b = static_cast<std::size_t>(rng.range(0, 13));
    CHECK(span.contains(mat_flatten(commutator(A.F, ders[a], ders[b]))));
  }
}

TEST_CASE("vaa span dimension equals dim A + dim Der") {
  auto F5 = field_Fp(5);
  CHECK(vaa_span(split_product(F5, {1, 1, 1}, {})).dim() == 22);       // 8 + 14
  CHECK(vaa_span(split_product(F5, {1, 1, 1}, {1, 1, 1})).dim() == 92);  // 64 + 28
}

TEST_CASE("vaa span dimension is independent of the ground field") {
  for (auto mk : {field_Fp(5), field_Fp(7), field_Q()}) {
    CHECK(vaa_span(split_product(mk, {1, 1}, {1})).dim() == 11);  // (4,2)
    CHECK(vaa_span(split_product(mk, {1, 1, 1}, {1})).dim() == 30);  // (8,2)
  }
  // heavy cross-check over the rationals for the full (8,8) case
  CHECK(vaa_span(split_product(field_Q(), {1, 1, 1}, {1, 1, 1})).dim() == 92);
}

TEST_CASE("V operators close under commutator inside the span") {
  auto F5 = field_Fp(5);
  Algebra A = split_product(F5, {1, 1, 1}, {1, 1, 1});
  OperatorSpan span = vaa_span(A);
  REQUIRE(span.dim() == 92);

  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    AVec x = alg_random(A, rng), y = alg_random(A, rng);
    AVec z = alg_random(A, rng), w = alg_random(A, rng);
    Mat<ScalarCtx> c =
        commutator(A.F, op_V_fast(A, x, y), op_V_fast(A, z, w));
    CHECK(span.contains(c));
  }
}

TEST_CASE("graded profiles match the dimension formula and type table") {
  auto F5 = field_Fp(5);

  struct Row {
    std::vector<long long> m1, m2;
    std::array<int, 5> dims;
    int total;
    const char* label;
  };
  const Row rows[] = {
      {{1, 1, 1}, {1, 1, 1}, {14, 64, 92, 64, 14}, 248, "E8"},
      {{1, 1, 1}, {1, 1}, {10, 32, 49, 32, 10}, 133, "E7"},
      {{1, 1, 1}, {1}, {8, 16, 30, 16, 8}, 78, "E6"},
      {{1, 1, 1}, {}, {7, 8, 22, 8, 7}, 52, "F4"},
      {{1, 1}, {1, 1}, {6, 16, 22, 16, 6}, 66, "D6"},
      {{1, 1}, {1}, {4, 8, 11, 8, 4}, 35, "A5"},
      {{1, 1}, {}, {3, 4, 7, 4, 3}, 21, "C3"},
      {{1}, {}, {1, 2, 2, 2, 1}, 8, "A2"},
      {{}, {}, {0, 1, 1, 1, 0}, 3, "A1"},
  };
  for (const auto& row : rows) {
    GradedProfile g = graded_profile(split_product(F5, row.m1, row.m2));
    CHECK(g.dims == row.dims);
    CHECK(g.total == row.total);
    CHECK(g.type_label == row.label);
    // symmetry and the total as a sum of components
    CHECK(g.dims[0] == g.dims[4]);
    CHECK(g.dims[1] == g.dims[3]);
    CHECK(g.dims[0] + g.dims[1] + g.dims[2] + g.dims[3] + g.dims[4] == g.total);
    if (std::string(row.label) == "D6") CHECK(g.note == "table-entry ambiguous");
    else CHECK(g.note.empty());
  }
}

TEST_CASE("graded profile over the rationals and on corestrictions") {
  GradedProfile gq = graded_profile(split_product(field_Q(), {-1, -1, -1}, {-1, -1, -1}));
  CHECK(gq.dims == std::array<int, 5>{14, 64, 92, 64, 14});
  CHECK(gq.total == 248);
  CHECK(gq.type_label == "E8");

  auto F5 = field_Fp(5);
  Scalar d = scalar_int(F5, 2);
  FieldPtr E = field_quad(F5, d);
  Algebra cor = build_corestriction(
      F5, d, {scalar_one(E), scalar_one(E), scalar_one(E)});
  GradedProfile gc = graded_profile(cor);
  CHECK(gc.dims == std::array<int, 5>{14, 64, 92, 64, 14});
  CHECK(gc.total == 248);
  CHECK(gc.type_label == "E8");
}

TEST_CASE("rank computations reject unsupported ground fields") {
  FieldPtr E = field_quad(field_Fp(5), scalar_int(field_Fp(5), 2));
  Algebra A = split_product(E, {1, 1}, {});
  CHECK_THROWS_AS(derivations(A), TkkError);
  CHECK_THROWS_AS(vaa_span(A), TkkError);
  try {
    derivations(A);
  } catch (const TkkError& e) {
    CHECK(e.code == TkkErrorCode::UnsupportedField);
  }
}
