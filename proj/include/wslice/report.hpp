#pragma once

// JSON encodings of the library types. Rationals are {"num", "den"} strings,
// polynomial terms are in graded-lex order, keys keep insertion order.

#include <string>
#include <vector>

#include "json.hpp"
#include "wslice/catalog.hpp"
#include "wslice/longroot.hpp"
#include "wslice/rmatrix.hpp"

namespace wslice::report {

using nlohmann::ordered_json;
using Json = ordered_json;

inline Json rational(const Q& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

inline Json rational_vector(const QVec& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational(q));
  return out;
}

inline Json int_vector(const IVec& v) { return Json(std::vector<int>(v.begin(), v.end())); }

inline Json rational_matrix(const QMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational(m(i, j)));
    out.push_back(row);
  }
  return out;
}

/// Nonzero entries only, row-major.
inline Json sparse_matrix(const QMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) out.push_back(Json{{"row", i}, {"col", j}, {"value", rational(m(i, j))}});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", out}};
}

/// Rational value, or coefficients over Q in the basis 1, c, c^2, ... of K_m with c = 2cos(2pi/m).
inline Json field_element(const KElem& x) {
  if (x.is_rational()) return rational(x.rational());
  Json coeffs = Json::array();
  for (const auto& q : x.p.c) coeffs.push_back(rational(q));
  return Json{{"field", x.F->m}, {"coeffs", coeffs}, {"text", x.str()}};
}

inline Json field_vector(const KVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(field_element(x));
  return out;
}

/// Terms in graded-lex order of the exponent vectors.
inline Json polynomial(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.sorted_terms()) terms.push_back(Json{{"exp", Json(e)}, {"coef", rational(c)}});
  return Json{{"text", p.str()}, {"terms", terms}};
}

inline Json ring(const VarsPtr& v) {
  Json inv = Json::array();
  for (int i = 0; i < v->size(); ++i)
    if (v->invertible[i]) inv.push_back(v->names[i]);
  return Json{{"variables", v->names}, {"invertible", inv}};
}

inline Json table(const PoissonTable& t) {
  const auto& v = t.vars();
  Json br = Json::array();
  for (int i = 0; i < v->size(); ++i)
    for (int j = i + 1; j < v->size(); ++j)
      br.push_back(Json{{"pair", {v->names[i], v->names[j]}}, {"value", polynomial(t.get(i, j))}});
  return Json{{"ring", ring(v)}, {"brackets", br}};
}

inline Json check(const Check& c) { return Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

inline Json checks(const std::vector<Check>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(check(c));
  return out;
}

inline Json root_labels(const RootSystemData& rs, const std::vector<int>& idx) {
  Json out = Json::array();
  for (int a : idx) out.push_back(root_label(rs.roots[a]));
  return out;
}

inline Json root_system(const RootSystemData& rs) {
  Json roots = Json::array();
  for (const auto& a : rs.roots) roots.push_back(int_vector(a));
  return Json{{"type", std::string(1, rs.type_label)},
              {"rank", rs.rank},
              {"num_roots", rs.num_roots()},
              {"gram", rational_matrix(rs.gram)},
              {"roots", roots},
              {"highest_root", int_vector(rs.highest_root())}};
}

inline Json weyl_word(const WeylWord& w, const RootSystemData& rs) {
  Json word = Json::array();
  for (const auto& a : w.word()) word.push_back(root_label(a));
  return Json{{"word", word},
              {"matrix", rational_matrix(w.matrix())},
              {"order", w.order()},
              {"length", weyl_length(w, rs, standard_positive(rs))}};
}

inline Json subspace(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& v : s.basis) basis.push_back(field_vector(v));
  return Json{{"label", s.label}, {"origin", s.origin}, {"angle", s.angle()}, {"dim", s.dim()}, {"basis", basis}};
}

inline Json slice(const SliceData& sd, const RootSystemData& rs) {
  Json parts = Json::array();
  for (const auto& p : sd.dec.parts) parts.push_back(subspace(p));
  Json charpoly = Json::array();
  for (auto [m, e] : sd.dec.charpoly) charpoly.push_back(Json{{"phi", m}, {"power", e}});
  Json strata = Json::array();
  for (const auto& st : sd.strata) strata.push_back(root_labels(rs, st));
  Json generic = Json::array();
  for (const auto& h : sd.generic) generic.push_back(field_vector(h));
  Json scale = Json::array();
  for (const auto& q : sd.scale) scale.push_back(rational(q));
  std::vector<int> pos;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (sd.positive[a]) pos.push_back(a);
  return Json{{"type", std::string(1, sd.type_label)},
              {"rank", sd.rank},
              {"s", weyl_word(sd.s, rs)},
              {"charpoly", charpoly},
              {"ordering", sd.dec.ordering},
              {"fixed", subspace(sd.dec.fixed)},
              {"parts", parts},
              {"generic", generic},
              {"chosen", sd.chosen},
              {"scale", scale},
              {"lambda", rational(sd.lambda)},
              {"strata", strata},
              {"positive", root_labels(rs, pos)},
              {"gamma", root_labels(rs, sd.gamma)},
              {"length", sd.length},
              {"delta0", root_labels(rs, sd.delta0)},
              {"n", root_labels(rs, sd.n_roots)},
              {"nbar", root_labels(rs, sd.nbar_roots)},
              {"ns", root_labels(rs, sd.ns_roots)},
              {"dims",
               {{"h0", sd.dim_h0}, {"n", sd.dim_n}, {"ns", sd.dim_ns}, {"z", sd.dim_z}, {"slice", sd.dim_slice}}},
              {"checks", checks(sd.checks)}};
}

/// Checks on r for a slice: skewness, mCYBE, r+- identities, images and kernels, admissibility.
inline std::vector<Check> rmatrix_checks(const SliceData& sd, const ChevalleyBasis& cb, const RMatrixData& R) {
  std::vector<Check> out;
  out.push_back({"r.skew", check_skew(R.r, cb), ""});
  auto m = check_mcybe(R.r, cb);
  out.push_back({"r.mcybe", !m, m ? "basis pair " + std::to_string(m->first) + ", " + std::to_string(m->second) : ""});
  for (auto& c : check_rpm_identities(R, cb)) out.push_back(c);
  for (auto& c : check_images_kernels(R, cb)) out.push_back(c);
  out.push_back({"gstar.description", check_gstar_description(R, cb), ""});
  auto np = check_nperp_subalgebra(parabolic_basis(sd, cb), R, cb);
  out.push_back({"nperp.subalgebra", !np, np ? "basis pair " + std::to_string(np->first) + ", " + std::to_string(np->second) : ""});
  return out;
}

inline Json rmatrix(const RMatrixData& R) {
  Json h0 = Json::array(), h0perp = Json::array();
  for (const auto& v : R.h0) h0.push_back(rational_vector(v));
  for (const auto& v : R.h0perp) h0perp.push_back(rational_vector(v));
  return Json{{"r", sparse_matrix(R.r)}, {"r0", rational_matrix(R.r0)}, {"s_h", rational_matrix(R.s_h)},
              {"h0", h0},          {"h0perp", h0perp}};
}

inline Json entry(const catalog::SubregularEntry& en) {
  return Json{{"name", en.name()},
              {"e", en.e_text},
              {"s_e", en.s_text},
              {"recipe", catalog::recipe_name(en.recipe)},
              {"theta_min", rational(en.theta_min)},
              {"claimed_length", en.claimed_length},
              {"e_class", en.e_class},
              {"s_class", en.s_class}};
}

inline Json entry_report(const catalog::EntryReport& rep, bool with_slice) {
  Json out{{"entry", entry(rep.entry)}};
  if (!rep.error.empty()) out["error"] = rep.error;
  out["claims"] = checks(rep.claims);
  out["diagnostics"] = checks(rep.diagnostics);
  out["pass"] = rep.pass();
  out["family_claims_pass"] = catalog::family_claims_pass(rep);
  if (rep.slice) {
    auto rs = build_root_system(rep.entry.type_label, rep.entry.rank);
    if (with_slice) out["slice"] = slice(*rep.slice, rs);
    else
      out["slice"] = Json{{"length", rep.slice->length},
                          {"dim_slice", rep.slice->dim_slice},
                          {"theta_min", rational(catalog::minimal_angle(*rep.slice))}};
  }
  return out;
}

inline Json plane_search(const catalog::PlaneSearchResult& res) {
  Json plane = Json::array();
  for (const auto& v : res.plane) plane.push_back(field_vector(v));
  return Json{{"found", true}, {"angle", std::to_string(res.j) + "/" + std::to_string(res.m)}, {"plane", plane},
              {"diagnostics", res.diagnostics}};
}

inline Json lie_report(const longroot::LieReport& rep, const RootSystemData& rs) {
  Json out{{"type", std::string(1, rep.type_label)}, {"rank", rep.rank}};
  if (rep.beta >= 0) out["beta"] = root_label(rs.roots[rep.beta]);
  out["grading_dims"] = Json(std::vector<int>(rep.dims.begin(), rep.dims.end()));
  if (!rep.error.empty()) out["error"] = rep.error;
  out["checks"] = checks(rep.checks);
  out["pass"] = rep.pass();
  return out;
}

}  // namespace wslice::report
