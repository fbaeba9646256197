#pragma once

// The longest element of the Weyl group of SL(3): representative, slice,
// invariant extensions, reduced bracket table, Casimirs and the singular fiber.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wslice/poisson.hpp"
#include "wslice/weylslice.hpp"

namespace wslice::sl3 {

inline QMat normal_rep() {
  QMat s(3, 3, Q(0));
  s(0, 2) = 1;
  s(1, 1) = -1;
  s(2, 0) = 1;
  return s;
}

inline Q det3(const QMat& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Basis with the sign convention N_{-a,-b} = N_{a,b}; g13 is invertible.
inline MatrixGroupContext context() {
  auto cb = build_chevalley(build_root_system('A', 2));
  return make_sl_context(cb.signed_variant(standard_positive(cb.rs)), {{0, 2}});
}

inline WeylWord longest_element(const RootSystemData& rs) { return parse_word(rs, "1,2,1"); }

inline QMat z_element(const Q& t) {
  if (is_zero(t)) throw std::invalid_argument("t must be nonzero");
  QMat z(3, 3, Q(0));
  z(0, 0) = t;
  z(1, 1) = inv(t * t);
  z(2, 2) = t;
  return z;
}

inline QMat slice_point(const Q& t, const Q& a, const Q& b, const Q& c) {
  if (is_zero(t)) throw std::invalid_argument("t must be nonzero");
  QMat m(3, 3, Q(0));
  m(0, 2) = t;
  m(1, 1) = -inv(t * t);
  m(1, 2) = a;
  m(2, 0) = t;
  m(2, 1) = b;
  m(2, 2) = c;
  return m;
}

/// n_s with slice_point = n_s · z · s⁻¹.
inline QMat slice_ns(const Q& t, const Q& a, const Q& b, const Q& c) {
  QMat n = qidentity(3);
  n(1, 0) = a / t;
  n(2, 0) = c / t;
  n(2, 1) = -b * t * t;
  return n;
}

inline VarsPtr slice_vars() {
  static const VarsPtr v = make_vars({"t", "alpha", "beta", "gamma"}, {"t"});
  return v;
}

/// Images of g_ij under the slice parametrization.
inline std::vector<LaurentPoly> slice_param() {
  auto v = slice_vars();
  auto p = [&](const char* s) { return parse_laurent(v, s); };
  return {p("0"), p("0"), p("t"), p("0"), p("-t^-2"), p("alpha"), p("t"), p("beta"), p("gamma")};
}

struct Extension {
  std::string name;  // slice coordinate it restricts to
  LaurentPoly ext;
};

inline std::vector<Extension> extensions(const MatrixGroupContext& ctx) {
  auto g = [&](const char* s) { return parse_laurent(ctx.vars, s); };
  return {{"alpha", g("g13^2*(g11*g23 - g13*g21) + g23")},
          {"beta", g("g32 - g12*g13^-3*(1 + g13^2*g33)")},
          {"gamma", g("g11 + g22 + g33 + g13^-2")},
          {"t", g("g13")}};
}

inline LaurentPoly det_poly(const MatrixGroupContext& ctx) {
  return parse_laurent(ctx.vars,
                       "g11*(g22*g33 - g23*g32) - g12*(g21*g33 - g23*g31) + g13*(g21*g32 - g22*g31)");
}

/// Second family: each extension multiplied by det g (same restriction, still invariant).
inline std::vector<Extension> alternative_extensions(const MatrixGroupContext& ctx) {
  auto e = extensions(ctx);
  LaurentPoly d = det_poly(ctx);
  for (auto& x : e) x.ext = x.ext * d;
  return e;
}

/// N_s Z s⁻¹ N with n and n_s read off the slice data of the longest element.
inline SliceModel slice_model(const MatrixGroupContext& ctx, const SliceData& sd) {
  SliceModel m;
  m.ctx = &ctx;
  m.s = normal_rep();
  for (int a : sd.n_roots) m.n_basis.push_back(ctx.emb[a]);
  for (int a : sd.ns_roots) m.ns_basis.push_back(ctx.emb[a]);
  QMat h(3, 3, Q(0));
  h(0, 0) = 1;
  h(1, 1) = -2;
  h(2, 2) = 1;
  m.z_lie = {h};
  m.sample_z = [](std::mt19937_64& rng) { return z_element(random_nonzero_rational(rng, 4, 3)); };
  return m;
}

inline SliceData slice_data() {
  auto rs = build_root_system('A', 2);
  return analyze(rs, longest_element(rs));
}

/// Ad s sends the images of e_{±a}, a simple, to e_{±s(a)}.
inline bool normal_rep_property(const MatrixGroupContext& ctx, const QMat& s) {
  const RootSystemData& rs = ctx.cb.rs;
  WeylWord w = longest_element(rs);
  QMat sinv = *inverse(s);
  for (int i = 0; i < rs.rank; ++i) {
    int a = rs.find(rs.simple(i));
    for (int b : {a, rs.neg(a)}) {
      int sb = rs.find(w.apply(rs.roots[b]));
      if (!(s * ctx.emb[b] * sinv == ctx.emb[sb])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reduced brackets

inline PoissonTable reduced_table(const MatrixGroupContext& ctx, const RContext& R, const std::vector<Extension>& ext) {
  PoissonTable t(slice_vars());
  auto param = slice_param();
  std::vector<Gradients> grads;
  for (const auto& e : ext) grads.push_back(gradients(e.ext, ctx));
  for (std::size_t a = 0; a < ext.size(); ++a)
    for (std::size_t b = a + 1; b < ext.size(); ++b)
      t.set(ext[a].name, ext[b].name, bracket_tau(grads[a], grads[b], ctx, R).substitute(param));
  return t;
}

/// The relations as displayed, with {gamma, f} = {t^-2, f} expanded.
inline PoissonTable expected_table() {
  auto v = slice_vars();
  auto p = [&](const char* s) { return parse_laurent(v, s); };
  PoissonTable t(v);
  t.set("alpha", "beta", p("2*(t^2 - t^-4 - t^-2*gamma)"));
  t.set("t", "alpha", p("t*alpha"));
  t.set("t", "beta", p("-t*beta"));
  t.set("t", "gamma", p("0"));
  PoissonTable partial = t;
  LaurentPoly tm2 = p("t^-2");
  for (const char* f : {"alpha", "beta"}) t.set("gamma", f, partial.bracket(tm2, p(f)));
  return t;
}

inline bool tables_equal(const PoissonTable& a, const PoissonTable& b) {
  const int k = a.vars()->size();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (a.get(i, j) != b.get(i, j)) return false;
  return true;
}

inline std::pair<LaurentPoly, LaurentPoly> casimirs() {
  auto v = slice_vars();
  return {parse_laurent(v, "gamma - t^-2"), parse_laurent(v, "2*t^2 + t^-4 + 2*alpha*beta + gamma^2")};
}

// ---------------------------------------------------------------------------
// Singular fiber c1 = c2 = 3

inline VarsPtr fiber_vars() {
  static const VarsPtr v = make_vars({"x", "y", "z"});
  return v;
}

/// Working ring with w = z - 1 invertible.
inline VarsPtr fiber_w_vars() {
  static const VarsPtr v = make_vars({"x", "y", "w"}, {"w"});
  return v;
}

/// Replace every occurrence of x*y by rhs, repeatedly.
inline LaurentPoly rewrite_xy(const LaurentPoly& p, const LaurentPoly& rhs) {
  LaurentPoly done(p.vars()), todo = p;
  while (!todo.is_zero_poly()) {
    LaurentPoly next(p.vars());
    for (const auto& [e, c] : todo.terms()) {
      if (e[0] >= 1 && e[1] >= 1) {
        Exp r = e;
        --r[0];
        --r[1];
        next += LaurentPoly::monomial(p.vars(), r, c) * rhs;
      } else {
        done += LaurentPoly::monomial(p.vars(), e, c);
      }
    }
    todo = next;
  }
  return done;
}

struct FiberResult {
  PoissonTable table{fiber_vars()};  // brackets of x, y, z
  LaurentPoly relation;                // z^3 + x*y
  LaurentPoly gamma_on_fiber;          // gamma in terms of w = z - 1
  bool even_in_t = true;               // only t^2 appears before w = t^2
};

/// Substitutes x = t²α, y = t²β, z = t² + 1 into the reduced table and eliminates γ, αβ.
inline FiberResult singular_fiber(const PoissonTable& wps) {
  FiberResult out;
  auto v = slice_vars();
  auto p = [&](const char* s) { return parse_laurent(v, s); };
  LaurentPoly x = p("t^2*alpha"), y = p("t^2*beta"), z = p("t^2 + 1");
  // ring (x, y, t) to carry the intermediate expressions
  auto xt = make_vars({"x", "y", "t"}, {"t"});
  auto q = [&](const char* s) { return parse_laurent(xt, s); };
  // alpha = x t^-2, beta = y t^-2, gamma = 3 + t^-2 (first Casimir equal to 3)
  std::vector<LaurentPoly> to_xt = {q("t"), q("x*t^-2"), q("y*t^-2"), q("3 + t^-2")};
  auto wv = fiber_w_vars();
  auto to_w = [&](const LaurentPoly& a) {
    LaurentPoly b(wv);
    for (const auto& [e, c] : a.terms()) {
      if (e[2] % 2 != 0) out.even_in_t = false;
      b += LaurentPoly::monomial(wv, {e[0], e[1], e[2] / 2}, c);
    }
    return b;
  };
  // second Casimir equal to 3 gives x*y = -(w + 1)^3
  LaurentPoly xy = parse_laurent(wv, "-(w + 1)^3");
  auto fv = fiber_vars();
  std::vector<LaurentPoly> w_to_z = {LaurentPoly::variable(fv, "x"), LaurentPoly::variable(fv, "y"),
                                     parse_laurent(fv, "z - 1")};
  auto finish = [&](const LaurentPoly& a) {
    LaurentPoly r = rewrite_xy(to_w(a.substitute(to_xt)), xy);
    if (r.min_exponent(2) < 0) throw std::runtime_error("bracket is not polynomial in z: " + r.str());
    return r.substitute(w_to_z);
  };
  out.table.set("x", "y", finish(wps.bracket(x, y)));
  out.table.set("z", "x", finish(wps.bracket(z, x)));
  out.table.set("z", "y", finish(wps.bracket(z, y)));
  out.relation = parse_laurent(fv, "z^3 + x*y");
  out.gamma_on_fiber = to_w(p("gamma").substitute(to_xt));
  auto [c1, c2] = casimirs();
  LaurentPoly c2_fiber = rewrite_xy(to_w(c2.substitute(to_xt)), xy);
  if (c2_fiber != parse_laurent(wv, "3")) throw std::logic_error("second Casimir is not 3 after elimination");
  return out;
}

inline PoissonTable expected_fiber_table() {
  auto v = fiber_vars();
  PoissonTable t(v);
  t.set("x", "y", parse_laurent(v, "6*(z - 1)*z^2"));
  t.set("z", "x", parse_laurent(v, "2*(z - 1)*x"));
  t.set("z", "y", parse_laurent(v, "-2*(z - 1)*y"));
  return t;
}

/// Lie-algebra side table: (brsing) divided by (z - 1).
inline PoissonTable reference_fiber_table() {
  auto v = fiber_vars();
  PoissonTable t(v);
  t.set("x", "y", parse_laurent(v, "6*z^2"));
  t.set("z", "x", parse_laurent(v, "2*x"));
  t.set("z", "y", parse_laurent(v, "-2*y"));
  return t;
}

struct ProportionalityReport {
  std::map<std::string, LaurentPoly> ratios;  // per entry
  std::optional<LaurentPoly> factor;          // common ratio, if all agree
};

inline ProportionalityReport proportionality_report(const PoissonTable& fiber, const PoissonTable& reference) {
  ProportionalityReport rep;
  const std::vector<std::pair<std::string, std::string>> entries = {{"x", "y"}, {"z", "x"}, {"z", "y"}};
  auto v = fiber.vars();
  bool same = true;
  for (const auto& [a, b] : entries) {
    auto q = divide_exact(fiber.get(v->index(a), v->index(b)), reference.get(v->index(a), v->index(b)));
    if (!q) {
      same = false;
      continue;
    }
    std::string key = "{" + a + "," + b + "}";
    if (!rep.ratios.empty() && rep.ratios.begin()->second != *q) same = false;
    rep.ratios.emplace(key, *q);
  }
  if (same && rep.ratios.size() == entries.size()) rep.factor = rep.ratios.begin()->second;
  return rep;
}

/// {z^3 + xy, generator} reduced modulo z^3 + xy (zero means ideal membership).
inline std::vector<std::pair<std::string, bool>> relation_is_central(const PoissonTable& fiber, const LaurentPoly& rel) {
  std::vector<std::pair<std::string, bool>> out;
  for (const char* g : {"x", "y", "z"}) {
    LaurentPoly b = fiber.bracket(rel, LaurentPoly::variable(fiber.vars(), g));
    out.emplace_back(g, b.is_zero_poly() || divide_exact(b, rel).has_value());
  }
  return out;
}

}  // namespace wslice::sl3
