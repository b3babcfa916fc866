// JSON serialization of the domain types and json-in/json-out report
// functions for every batch verb.  Shared by the command-line tool and the
// python bindings; exit-code policy (invalid input vs Undecided vs internal
// violation) stays with the callers.
#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bioct/selftest.hpp"

namespace bioct::jsonio {

using nlohmann::json;

struct JsonIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ----- field / form / class conversions ------------------------------------

inline FieldPtr field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw JsonIoError("field descriptor needs a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return field_Q();
  if (kind == "Fp") return field_Fp(j.at("p").get<long long>());
  if (kind == "quad") {
    FieldPtr base = field_from_json(j.at("base"));
    return field_quad(base,
                      scalar_from_string(base, j.at("d").get<std::string>()));
  }
  if (kind == "laurent") {
    FieldPtr base = field_from_json(j.at("base"));
    return field_laurent(base, j.at("vars").get<std::vector<std::string>>());
  }
  throw JsonIoError("unknown field kind: " + kind);
}

inline json field_to_json(const FieldPtr& F) {
  switch (F->kind) {
    case FieldKind::Q:
      return json{{"kind", "Q"}};
    case FieldKind::Fp:
      return json{{"kind", "Fp"}, {"p", static_cast<long long>(F->p)}};
    case FieldKind::Quad:
      return json{{"kind", "quad"},
                  {"base", field_to_json(F->base)},
                  {"d", scalar_to_string(*F->d)}};
    case FieldKind::Laurent:
      return json{{"kind", "laurent"},
                  {"base", field_to_json(F->base)},
                  {"vars", F->vars}};
  }
  throw JsonIoError("bad field kind");
}

inline QForm form_from_json(const json& j) {
  FieldPtr F = field_from_json(j.at("field"));
  std::vector<Scalar> entries;
  for (const auto& e : j.at("entries"))
    entries.push_back(scalar_from_string(F, e.get<std::string>()));
  return qform(F, std::move(entries));
}

inline json form_to_json(const QForm& q) {
  json entries = json::array();
  for (const auto& e : q.entries) entries.push_back(scalar_to_string(e));
  return json{{"field", field_to_json(q.F)}, {"entries", entries}};
}

inline json witt_to_json(const WittClass& w) {
  json kernel = json::array();
  for (const auto& e : w.kernel.entries) kernel.push_back(scalar_to_string(e));
  return json{{"kernel", kernel}, {"hyperbolic", w.hyperbolic}};
}

inline json base_cls_to_json(const BaseCls& b) {
  json out{{"degree", b.degree}};
  if (b.degree == 1) {
    if (b.sq) out["sq"] = scalar_to_string(*b.sq);
  } else if (b.degree == 2 && !b.places.empty()) {
    json ram = json::array();
    for (const auto& p : b.places) ram.push_back(p.str());  // "-1" = real place
    out["ramified"] = ram;
  } else {
    out["bit"] = b.bit;
  }
  return out;
}

inline json coh_to_json(const CohClass& c) {
  FieldPtr base = coh_base_field(c.F);
  json out{{"degree", c.degree},
           {"zero", coh_is_zero(c)},
           {"backend", base->kind == FieldKind::Q ? "Q" : "Fp"}};
  if (c.F->kind == FieldKind::Laurent) {
    out["backend"] = "laurent";
    out["base"] = field_to_json(base);
    json terms = json::array();
    for (const auto& [vars, b] : c.terms) {
      if (base_is_zero(b)) continue;
      json names = json::array();
      for (int v : vars) names.push_back(c.F->vars[static_cast<std::size_t>(v)]);
      terms.push_back(json{{"vars", names}, {"base", base_cls_to_json(b)}});
    }
    out["terms"] = terms;
  } else {
    auto it = c.terms.find({});
    if (it != c.terms.end() && !base_is_zero(it->second))
      out.update(base_cls_to_json(it->second));
  }
  return out;
}

// E-scalar entries serialize either as component pairs ["a","b"] over the
// base or as a single string over E
inline Scalar escalar_from_json(const FieldPtr& E, const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw JsonIoError("E-scalar pair needs two components");
    return make_quad(E, scalar_from_string(E->base, j[0].get<std::string>()),
                     scalar_from_string(E->base, j[1].get<std::string>()));
  }
  return scalar_from_string(E, j.get<std::string>());
}

inline ProductAlgebraDescriptor desc_from_json(const json& j,
                                               const FieldPtr& k) {
  if (!j.contains("kind")) throw JsonIoError("descriptor needs a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  ProductAlgebraDescriptor d;
  if (kind == "decomposable") {
    d.corestriction = false;
    d.p1.F = k;
    d.p2.F = k;
    for (const auto& m : j.at("mu1"))
      d.p1.mus.push_back(scalar_from_string(k, m.get<std::string>()));
    for (const auto& m : j.at("mu2"))
      d.p2.mus.push_back(scalar_from_string(k, m.get<std::string>()));
    return d;
  }
  if (kind == "corestriction") {
    d.corestriction = true;
    d.k = k;
    d.d = scalar_from_string(k, j.at("d").get<std::string>());
    FieldPtr E = field_quad(k, d.d);
    for (const auto& m : j.at("mu")) d.mu.push_back(escalar_from_json(E, m));
    return d;
  }
  throw JsonIoError("unknown descriptor kind: " + kind);
}

inline json desc_to_json(const ProductAlgebraDescriptor& d) {
  if (!d.corestriction) {
    json m1 = json::array(), m2 = json::array();
    for (const auto& m : d.p1.mus) m1.push_back(scalar_to_string(m));
    for (const auto& m : d.p2.mus) m2.push_back(scalar_to_string(m));
    return json{{"kind", "decomposable"},
                {"field", field_to_json(d.p1.F)},
                {"mu1", m1},
                {"mu2", m2}};
  }
  json mu = json::array();
  for (const auto& m : d.mu) {
    const auto& qv = std::get<QuadVal>(m.v);
    mu.push_back(
        json::array({scalar_to_string(*qv.a), scalar_to_string(*qv.b)}));
  }
  return json{{"kind", "corestriction"},
              {"field", field_to_json(d.k)},
              {"d", scalar_to_string(d.d)},
              {"mu", mu}};
}

// the ground field comes from the input object or a fallback field JSON
inline FieldPtr input_field(const json& j, const std::string& fallback = "") {
  if (j.is_object() && j.contains("field"))
    return field_from_json(j.at("field"));
  if (!fallback.empty()) return field_from_json(json::parse(fallback));
  throw JsonIoError("no field: provide \"field\" in the input or --field");
}

// ----- verb-level reports ---------------------------------------------------

inline json algebra_build_report(const json& in, const std::string& field = "") {
  auto desc = desc_from_json(in, input_field(in, field));
  Algebra A = build_product(desc);
  AlbertData D = albert_data(A);
  json out{{"dim", A.dim},
           {"corestriction", D.corestriction},
           {"albert_form", form_to_json(D.Q)}};
  if (D.corestriction) out["d"] = scalar_to_string(D.d);
  return out;
}

inline json algebra_invariants_report(const json& in,
                                      const std::string& field = "") {
  auto desc = desc_from_json(in, input_field(in, field));
  BInvariants b = b_invariants(desc);
  DivisionReport div = is_division(desc);
  return json{{"b1", coh_to_json(b.b1)},
              {"b3", coh_to_json(b.b3)},
              {"b6", coh_to_json(b.b6)},
              {"division", div.division},
              {"decomposable", b.decomposable},
              {"albert_form", form_to_json(b.albert)}};
}

inline json algebra_division_report(const json& in,
                                    const std::string& field = "") {
  auto desc = desc_from_json(in, input_field(in, field));
  DivisionReport rep = is_division(desc);
  json out{{"division", rep.division},
           {"centroid_field", rep.centroid_field}};
  if (rep.isotropic_witness) {
    json w = json::array();
    for (const auto& s : *rep.isotropic_witness)
      w.push_back(scalar_to_string(s));
    out["isotropic_witness"] = w;
  }
  return out;
}

inline json algebra_isotopic_report(const json& in,
                                    const std::string& field = "") {
  FieldPtr k = input_field(in, field);
  auto da = desc_from_json(in.at("first"), k);
  auto db = desc_from_json(in.at("second"), k);
  IsotopyVerdict v = is_isotopic(da, db);
  const char* name = v == IsotopyVerdict::Isotopic      ? "Isotopic"
                     : v == IsotopyVerdict::NotIsotopic ? "NotIsotopic"
                                                        : "Undecided";
  return json{{"verdict", name}};
}

inline json algebra_decompose_report(const json& in,
                                     const std::string& field = "") {
  auto desc = desc_from_json(in, input_field(in, field));
  Algebra A = build_product(desc);
  DecomposeResult r = decompose(A);
  json out{{"decomposable", r.decomposable}};
  if (r.decomposable)
    out["factor_dims"] = json::array({r.c1.dim, r.c2.dim});
  else
    out["d"] = scalar_to_string(r.d);
  return out;
}

inline json form_witt_report(const json& in) {
  return witt_to_json(qf_witt_decompose(form_from_json(in)));
}

inline json form_en_report(const json& in, int n) {
  return coh_to_json(e_n(n, form_from_json(in)));
}

inline json form_similar_report(const json& in) {
  QForm a = form_from_json(in.at("first"));
  QForm b = form_from_json(in.at("second"));
  SimilarResult r = qf_similar(a, b);
  const char* name = r.verdict == SimilarVerdict::Similar      ? "Similar"
                     : r.verdict == SimilarVerdict::NotSimilar ? "NotSimilar"
                                                               : "Undecided";
  json out{{"verdict", name}};
  if (r.c) out["c"] = scalar_to_string(*r.c);
  return out;
}

inline json tkk_profile_report(const json& in, const std::string& field = "") {
  auto desc = desc_from_json(in, input_field(in, field));
  GradedProfile g = graded_profile(build_product(desc));
  json out{{"dims", json::array({g.dims[0], g.dims[1], g.dims[2], g.dims[3],
                                 g.dims[4]})},
           {"total", g.total},
           {"type", g.type_label}};
  if (!g.note.empty()) out["note"] = g.note;
  return out;
}

inline json rost_construct_report(const json& in,
                                  const std::string& field = "") {
  std::string mode = in.at("mode").get<std::string>();
  FieldPtr k = input_field(in, field);
  RostResult r;
  if (mode == "two-pfister") {
    RostTwoPfister spec;
    spec.c = scalar_from_string(k, in.at("c").get<std::string>());
    for (const auto& s : in.at("phi1"))
      spec.phi1.push_back(scalar_from_string(k, s.get<std::string>()));
    for (const auto& s : in.at("phi2"))
      spec.phi2.push_back(scalar_from_string(k, s.get<std::string>()));
    r = rost_construct(spec);
  } else if (mode == "transfer") {
    RostTransfer spec;
    spec.k = k;
    spec.d = scalar_from_string(k, in.at("d").get<std::string>());
    FieldPtr E = field_quad(k, spec.d);
    spec.delta = escalar_from_json(E, in.at("delta"));
    for (const auto& s : in.at("phi"))
      spec.phi.push_back(escalar_from_json(E, s));
    r = rost_construct(spec);
  } else {
    throw JsonIoError("unknown rost mode: " + mode);
  }
  return json{{"form", form_to_json(r.Q)},
              {"descriptor", desc_to_json(r.desc)}};
}

inline json selftest_report(std::uint64_t seed, int trials_percent) {
  SelftestOptions opts;
  opts.seed = seed;
  opts.trial_scale = trials_percent / 100.0;
  auto results = run_selftest(opts);
  int failures = 0;
  json arr = json::array();
  int idx = 0;
  for (const auto& r : results) {
    ++idx;
    if (!r.pass) ++failures;
    arr.push_back(json{{"criterion", idx},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail}});
  }
  return json{{"seed", seed},
              {"criteria", arr},
              {"passed", static_cast<int>(results.size()) - failures},
              {"total", static_cast<int>(results.size())}};
}

}  // namespace bioct::jsonio
