#pragma once

// Acceptance gates, each a named list of checks. Shared by the acceptance
// binary and `wslice verify-all`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wslice/catalog.hpp"
#include "wslice/longroot.hpp"
#include "wslice/poisson.hpp"
#include "wslice/report.hpp"
#include "wslice/rmatrix.hpp"
#include "wslice/sl3case.hpp"

namespace wslice::verify {

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;

  bool pass() const { return !checks.empty() && all_pass(checks); }
  std::string failures() const {
    std::string s;
    for (const auto& c : checks)
      if (!c.pass) s += (s.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
    return s;
  }
};

namespace detail {

inline LaurentPoly trace_power(const MatrixGroupContext& ctx, int power) {
  PMat g = pm_coords(ctx), acc = g;
  for (int k = 1; k < power; ++k) acc = pm_mul(acc, g, ctx.n);
  LaurentPoly t(ctx.vars);
  for (int i = 0; i < ctx.n; ++i) t += acc[i * ctx.n + i];
  return t;
}

inline MatrixGroupContext sl(int n) { return make_sl_context(build_chevalley(build_root_system('A', n - 1))); }

inline PoissonTable tau_table(const MatrixGroupContext& ctx, const RContext& R) {
  return coordinate_table(ctx, [&](const Gradients& a, const Gradients& b) { return bracket_tau(a, b, ctx, R); });
}

inline PoissonTable pbr_table(const MatrixGroupContext& ctx, const RContext& R) {
  return coordinate_table(ctx, [&](const Gradients& a, const Gradients& b) { return bracket_pbr(a, b, ctx, R); });
}

inline PoissonTable sl3_reduced_table() {
  auto ctx = sl3::context();
  return sl3::reduced_table(ctx, lower_rcontext(ctx), sl3::extensions(ctx));
}

}  // namespace detail

/// 1: tau on SL(3) coordinates with the standard r-matrix equals the closed coordinate formula.
inline Criterion gst_table() {
  Criterion c{1, "coordinate bracket table on SL(3)", {}};
  auto ctx = detail::sl(3);
  auto R = standard_rcontext(ctx);
  int mismatches = 0, total = 0;
  std::string first;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) {
          ++total;
          if (bracket_tau(ctx.g(i, j), ctx.g(k, m), ctx, R) != gst_entry(ctx, i, j, k, m)) {
            if (first.empty()) first = std::to_string(i + 1) + std::to_string(j + 1) + "," + std::to_string(k + 1) + std::to_string(m + 1);
            ++mismatches;
          }
        }
  c.checks.push_back({"gst.entries", mismatches == 0 && total == 81,
                      std::to_string(total - mismatches) + "/" + std::to_string(total) + (first.empty() ? "" : ", first " + first)});
  return c;
}

/// 2: reduced brackets of the invariant extensions.
inline Criterion wps_table() {
  Criterion c{2, "reduced brackets on the SL(3) slice", {}};
  auto table = detail::sl3_reduced_table();
  c.checks.push_back({"wps.relations", sl3::tables_equal(table, sl3::expected_table()), ""});
  auto ctx = sl3::context();
  c.checks.push_back({"wps.alternative_extensions",
                      sl3::tables_equal(sl3::reduced_table(ctx, lower_rcontext(ctx), sl3::alternative_extensions(ctx)), table), ""});
  c.checks.push_back({"wps.antisymmetric", table.antisymmetric(), ""});
  return c;
}

/// 3: singular fiber brackets after the change of variables.
inline Criterion brsing_table() {
  Criterion c{3, "singular fiber brackets", {}};
  auto fiber = sl3::singular_fiber(detail::sl3_reduced_table());
  c.checks.push_back({"brsing.brackets", sl3::tables_equal(fiber.table, sl3::expected_fiber_table()), ""});
  c.checks.push_back({"brsing.even_in_t", fiber.even_in_t, ""});
  for (const auto& [g, ok] : sl3::relation_is_central(fiber.table, fiber.relation))
    c.checks.push_back({"brsing.ideal." + g, ok, fiber.relation.str()});
  return c;
}

/// 4: Casimirs of the slice table and central traces of tau.
inline Criterion casimirs() {
  Criterion c{4, "Casimir centrality", {}};
  auto table = detail::sl3_reduced_table();
  auto [c1, c2] = sl3::casimirs();
  auto v = sl3::slice_vars();
  for (int i = 0; i < v->size(); ++i) {
    auto x = LaurentPoly::variable(v, i);
    c.checks.push_back({"casimir1." + v->names[i], table.bracket(c1, x).is_zero_poly(), ""});
    c.checks.push_back({"casimir2." + v->names[i], table.bracket(c2, x).is_zero_poly(), ""});
  }
  auto ctx = sl3::context();
  auto R = standard_rcontext(ctx);
  for (int power : {1, 2}) {
    bool ok = true;
    auto t = detail::trace_power(ctx, power);
    for (int a = 0; a < 9; ++a)
      if (!bracket_tau(t, LaurentPoly::variable(ctx.vars, a), ctx, R).is_zero_poly()) ok = false;
    c.checks.push_back({"trace" + std::to_string(power) + ".central", ok, ""});
  }
  return c;
}

/// Types of rank at most 3 and the Weyl elements of the r-matrix sweep.
struct SweepCase {
  char type_label;
  int rank;
  std::string label;
  SliceData slice;
};

inline std::vector<SweepCase> rmatrix_sweep(const std::vector<std::pair<char, int>>& types) {
  std::vector<SweepCase> out;
  for (auto [t, r] : types) {
    auto rs = build_root_system(t, r);
    for (int i = 1; i <= r; ++i)
      out.push_back({t, r, "s" + std::to_string(i), analyze(rs, WeylWord::from_simple(rs, {i}))});
    IVec idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i + 1;
    out.push_back({t, r, "coxeter", analyze(rs, WeylWord::from_simple(rs, idx))});
    bool has_entry = true;
    try {
      catalog::subregular(t, r);
    } catch (const std::invalid_argument&) {
      has_entry = false;
    }
    if (has_entry) out.push_back({t, r, "s_e", catalog::build_subregular_slice(catalog::subregular(t, r), rs).slice});
  }
  return out;
}

inline std::vector<std::pair<char, int>> rank3_types() {
  return {{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 2}, {'C', 3}, {'G', 2}};
}

/// 5 and 6: mCYBE, skewness and admissibility of r.
inline std::pair<Criterion, Criterion> rmatrix_criteria(const std::vector<std::pair<char, int>>& types) {
  Criterion c5{5, "mCYBE and skew-symmetry of r", {}}, c6{6, "admissibility of n-perp", {}};
  for (const auto& sc : rmatrix_sweep(types)) {
    auto cb = build_chevalley(build_root_system(sc.type_label, sc.rank));
    auto R = build_r(sc.slice, cb);
    std::string name = std::string(1, sc.type_label) + std::to_string(sc.rank) + "." + sc.label;
    auto cs = report::rmatrix_checks(sc.slice, cb, R);
    bool r_ok = sc.slice.ok();
    std::string detail;
    for (const auto& ch : cs) {
      if (ch.name == "nperp.subalgebra") {
        c6.checks.push_back({name, ch.pass, ch.detail});
      } else if (!ch.pass) {
        r_ok = false;
        detail += (detail.empty() ? "" : ",") + ch.name;
      }
    }
    c5.checks.push_back({name, r_ok, detail});
  }
  return {c5, c6};
}

/// 7: Hamiltonian fields of the extensions are tangent to N Z s^-1 N.
inline Criterion tangency(std::uint64_t seed, int points = 20) {
  Criterion c{7, "tangency of Hamiltonian fields", {}};
  auto ctx = sl3::context();
  auto sd = sl3::slice_data();
  auto model = sl3::slice_model(ctx, sd);
  auto R = lower_rcontext(ctx);
  std::mt19937_64 rng(seed);
  for (const auto& e : sl3::extensions(ctx)) {
    int ok = 0;
    std::string witness;
    for (int k = 0; k < points; ++k) {
      auto p = model.sample(rng);
      auto res = check_tangency(e.ext, model, R, p.ns, p.z, p.n);
      if (res.pass) ++ok;
      else if (witness.empty()) witness = res.witness;
    }
    c.checks.push_back({"tangent." + e.name, ok == points, std::to_string(ok) + "/" + std::to_string(points) + (witness.empty() ? "" : " " + witness)});
  }
  return c;
}

/// 8: family claims of the subregular catalog.
inline Criterion catalog_claims(bool deep) {
  Criterion c{8, "subregular catalog claims", {}};
  for (const auto& rep : catalog::verify_catalog(deep ? catalog::deep_scope() : catalog::default_scope())) {
    std::string failed = rep.error;
    for (const auto& cl : rep.claims)
      if ((cl.name == "length" || cl.name.rfind("strata.", 0) == 0 || cl.name == "dimension" || cl.name == "e.centralizer_dim") &&
          !cl.pass)
        failed += (failed.empty() ? "" : ", ") + cl.name + " " + cl.detail;
    c.checks.push_back({rep.entry.name(), catalog::family_claims_pass(rep), failed});
  }
  return c;
}

/// 9: short grading, centralizer grading, reduced r and the slice bracket on SL(3).
inline Criterion longroot_claims(std::uint64_t seed, int points = 10) {
  Criterion c{9, "reflection in a long root", {}};
  for (auto [t, r] : longroot::sweep_types(4)) {
    auto rep = longroot::lie_report(t, r);
    std::string failed = rep.error;
    for (const auto& ch : rep.checks)
      if (!ch.pass) failed += (failed.empty() ? "" : ",") + ch.name;
    c.checks.push_back({std::string(1, t) + std::to_string(r), rep.pass(), failed});
  }
  auto md = longroot::make_model(3);
  auto fs = longroot::coordinate_functions(md);
  std::mt19937_64 rng(seed);
  int agree = 0, total = 0;
  for (int k = 0; k < points; ++k) {
    auto p = md.sample(rng);
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b) {
        ++total;
        if (longroot::str_bracket(fs[a], fs[b], md, p.m) == longroot::reduced_bracket_at(fs[a], fs[b], md, p)) ++agree;
      }
  }
  c.checks.push_back({"str.equals_reduced", agree == total && points >= 10,
                      std::to_string(agree) + "/" + std::to_string(total) + " at " + std::to_string(points) + " points"});
  return c;
}

/// 10: Jacobi for the Sklyanin bracket and tau.
inline Criterion jacobi_suites(std::uint64_t seed, int points = 5) {
  Criterion c{10, "Jacobi identities", {}};
  auto sl2 = detail::sl(2);
  auto R2 = standard_rcontext(sl2);
  c.checks.push_back({"sl2.pbr.symbolic", !detail::pbr_table(sl2, R2).jacobi_violation(), ""});
  c.checks.push_back({"sl2.tau.symbolic", !detail::tau_table(sl2, R2).jacobi_violation(), ""});
  auto sl3c = detail::sl(3);
  auto R3 = standard_rcontext(sl3c);
  std::mt19937_64 rng(seed);
  std::vector<QVec> pts;
  for (int k = 0; k < points; ++k) pts.push_back(point_of(random_sl_point(3, rng)));
  for (const auto& [name, table] : {std::pair<std::string, PoissonTable>{"pbr", detail::pbr_table(sl3c, R3)},
                                    std::pair<std::string, PoissonTable>{"tau", detail::tau_table(sl3c, R3)}}) {
    int bad = 0, triples = 0;
    for (int i = 0; i < 9; ++i)
      for (int j = i + 1; j < 9; ++j)
        for (int l = j + 1; l < 9; ++l) {
          ++triples;
          auto jac = table.jacobiator(sl3c.g(i / 3, i % 3), sl3c.g(j / 3, j % 3), sl3c.g(l / 3, l % 3));
          for (const auto& p : pts)
            if (jac.evaluate<Q>(p) != 0) {
              ++bad;
              break;
            }
        }
    c.checks.push_back({"sl3." + name + ".sampled", bad == 0,
                        std::to_string(triples - bad) + "/" + std::to_string(triples) + " triples at " + std::to_string(points) + " points"});
  }
  return c;
}

inline std::vector<Criterion> all(std::uint64_t seed, bool deep = false) {
  std::vector<Criterion> out{gst_table(), wps_table(), brsing_table(), casimirs()};
  auto [c5, c6] = rmatrix_criteria(rank3_types());
  out.push_back(c5);
  out.push_back(c6);
  out.push_back(tangency(seed));
  out.push_back(catalog_claims(deep));
  out.push_back(longroot_claims(seed));
  out.push_back(jacobi_suites(seed));
  return out;
}

inline report::Json criterion_json(const Criterion& c) {
  return report::Json{{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"checks", report::checks(c.checks)}};
}

}  // namespace wslice::verify
