#pragma once

// Subregular pairs (e, s_e) for the simple types and the per-type slice
// constructions, with one verdict per stated claim.

#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wslice/liealg.hpp"
#include "wslice/weylslice.hpp"

namespace wslice::catalog {

enum class Recipe { Default, ReflectionLine, D2Plane, F4Plane };

inline std::string recipe_name(Recipe r) {
  switch (r) {
    case Recipe::Default: return "default";
    case Recipe::ReflectionLine: return "reflection-line";
    case Recipe::D2Plane: return "d2-plane";
    case Recipe::F4Plane: return "f4-plane";
  }
  return "?";
}

struct SubregularEntry {
  char type_label = 'A';
  int rank = 0;
  std::string e_text;  // roots of e in word syntax
  std::string s_text;  // reflection roots of s_e
  std::vector<IVec> e_roots;
  WeylWord s_e;
  Recipe recipe = Recipe::Default;
  Q theta_min;         // stated minimal angle as a fraction of a full turn
  int claimed_length = 0;
  std::string e_class, s_class;

  std::string name() const { return std::string(1, type_label) + std::to_string(rank); }
};

namespace detail {

inline std::string join_simple(int from, int to) {
  std::string s;
  for (int i = from; i <= to; ++i) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

inline std::string cat(std::string a, const std::string& b) {
  if (a.empty()) return b;
  return b.empty() ? a : a + "," + b;
}

}  // namespace detail

inline int min_rank(char t) {
  switch (t) {
    case 'A': return 2;
    case 'B': return 2;
    case 'C': return 2;
    case 'D': return 4;
    case 'E': return 6;
    case 'F': return 4;
    case 'G': return 2;
    default: return 0;
  }
}

/// Simple-root numbering used for each type, stated as a Dynkin adjacency.
inline std::string numbering(char t) {
  switch (t) {
    case 'A': return "chain 1-2-...-r";
    case 'B': return "chain 1-...-r, a_r short";
    case 'C': return "chain 1-...-r, a_r long";
    case 'D': return "chain 1-...-(r-1), node r attached to r-2";
    case 'E': return "chain 1-...-(r-1), node r attached to 3 (E6), 4 (E7), 5 (E8)";
    case 'F': return "chain 1-2-3-4, a_1 a_2 long";
    case 'G': return "chain 1-2, a_1 short";
    default: return "";
  }
}

inline SubregularEntry subregular(char t, int r) {
  if (!valid_type(t, r)) throw std::invalid_argument("invalid simple type " + std::string(1, t) + std::to_string(r));
  if (r < min_rank(t))
    throw std::invalid_argument("rank too small for the subregular pattern of type " + std::string(1, t));
  SubregularEntry en;
  en.type_label = t;
  en.rank = r;
  auto R = [](int i) { return std::to_string(i); };
  switch (t) {
    case 'A':
      en.e_text = detail::join_simple(1, r - 1);
      en.s_text = en.e_text;
      en.theta_min = make_q(1, r);
      en.claimed_length = r + 1;
      en.e_class = "subregular";
      en.s_class = "Coxeter A" + R(r - 1);
      break;
    case 'B':
      en.e_text = detail::cat(detail::join_simple(1, r - 2), R(r - 1) + "+" + R(r) + "," + R(r));
      en.s_text = detail::cat(detail::join_simple(1, r - 1), R(r - 1) + "+2*" + R(r));
      en.recipe = Recipe::ReflectionLine;
      en.theta_min = make_q(1, 2 * (r - 1));
      en.claimed_length = r + 2;
      en.e_class = "subregular";
      en.s_class = "Coxeter D" + R(r);
      break;
    case 'C':
      en.e_text = detail::cat(detail::join_simple(1, r - 2), "2*" + R(r - 1) + "+" + R(r) + "," + R(r));
      en.s_text = en.e_text;
      en.recipe = Recipe::ReflectionLine;
      en.theta_min = make_q(1, 2 * (r - 1));
      en.claimed_length = r + 2;
      en.e_class = "subregular";
      en.s_class = "Coxeter C" + R(r - 1) + "+A1";
      break;
    case 'D':
      en.e_text = detail::cat(detail::join_simple(1, r - 4), R(r - 3) + "+" + R(r - 2) + "," + R(r - 2) + "+" + R(r - 1) +
                                                                 "," + R(r - 1) + "," + R(r));
      en.s_text = detail::cat(detail::join_simple(1, r - 1), R(r - 2) + "+" + R(r - 1) + "+" + R(r));
      en.recipe = Recipe::D2Plane;
      en.theta_min = make_q(1, 2 * (r - 2));
      en.claimed_length = r + 2;
      en.e_class = "subregular";
      en.s_class = "D(a1)";
      break;
    case 'E':
      if (r == 6) {
        en.e_text = "1,2+3,4,5,3+6,6";
        en.theta_min = make_q(1, 9);
      } else if (r == 7) {
        en.e_text = "1,2,3+4,5,6,7,4+7";
        en.theta_min = make_q(1, 14);
      } else {
        en.e_text = "1,2,3,4+5,5+8,6,7,8";
        en.theta_min = make_q(1, 24);
      }
      en.s_text = en.e_text;
      en.claimed_length = r + 2;
      en.e_class = "E" + R(r) + "(a1)";
      en.s_class = "E" + R(r) + "(a1)";
      break;
    case 'F':
      en.e_text = "1,2,2+2*3,3+4";
      en.s_text = en.e_text;
      en.recipe = Recipe::F4Plane;
      en.theta_min = make_q(1, 6);
      en.claimed_length = 6;
      en.e_class = "F4(a1)";
      en.s_class = "B4";
      break;
    case 'G':
      en.e_text = "2*1+2,2";
      en.s_text = "3*1+2,2";
      en.theta_min = make_q(1, 6);
      en.claimed_length = 4;
      en.e_class = "G2(a1)";
      en.s_class = "A2";
      break;
    default: break;
  }
  auto rs = build_root_system(t, r);
  en.e_roots = parse_word(rs, en.e_text).word();
  en.s_e = parse_word(rs, en.s_text);
  return en;
}

inline std::vector<std::pair<char, int>> default_scope() {
  return {{'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'B', 4}, {'C', 2},
          {'C', 3}, {'C', 4}, {'D', 4}, {'E', 6}, {'F', 4}, {'G', 2}};
}

inline std::vector<std::pair<char, int>> deep_scope() {
  auto v = default_scope();
  for (auto p : std::vector<std::pair<char, int>>{{'D', 5}, {'D', 6}, {'E', 7}, {'E', 8}}) v.push_back(p);
  return v;
}

// ---------------------------------------------------------------------------
// Nilpotency and centralizer dimension

inline QVec element_of(const SubregularEntry& en, const RootSystemData& rs, const ChevalleyBasis& cb) {
  QVec x(cb.dim, Q(0));
  for (const auto& a : en.e_roots) x[cb.root_index(rs.find(a))] += 1;
  return x;
}

struct NilpotencyResult {
  bool nilpotent = false;
  int kernel_dim = 0;
  int nilpotency_index = 0;
};

inline NilpotencyResult nilpotency(const SubregularEntry& en, const RootSystemData& rs, const ChevalleyBasis& cb) {
  NilpotencyResult out;
  QMat ad = cb.ad(element_of(en, rs, cb));
  out.kernel_dim = static_cast<int>(nullspace(ad).size());
  QMat p = ad;
  for (int k = 1; k <= cb.dim; ++k) {
    bool zero = true;
    for (std::size_t i = 0; i < p.rows() && zero; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j)
        if (!is_zero(p(i, j))) {
          zero = false;
          break;
        }
    if (zero) {
      out.nilpotent = true;
      out.nilpotency_index = k;
      break;
    }
    p = p * ad;
  }
  return out;
}

inline std::vector<Check> verify_nilpotency_and_subregularity(const SubregularEntry& en, const RootSystemData& rs,
                                                              const ChevalleyBasis& cb) {
  auto nr = nilpotency(en, rs, cb);
  return {{"e.nilpotent", nr.nilpotent, "index " + std::to_string(nr.nilpotency_index)},
          {"e.centralizer_dim", nr.kernel_dim == en.rank + 2,
           std::to_string(nr.kernel_dim) + " vs " + std::to_string(en.rank + 2)}};
}

// ---------------------------------------------------------------------------
// F4 plane

struct PlaneSearchResult {
  std::vector<KVec> plane;
  int m = 0, j = 0;
  std::string diagnostics;
};

/// Plane in the multiplicity-2 component of angle pi/3, not orthogonal to any root.
inline PlaneSearchResult f4_plane_search(const RootSystemData& rs, const WeylWord& s) {
  if (rs.type_label != 'F' || rs.rank != 4) throw std::invalid_argument("f4_plane_search needs type F4");
  auto fac = cyclotomic_factorization(charpoly(s.matrix()), s.order());
  int mult = 0;
  for (auto [m, e] : fac)
    if (m == 6) mult = e;
  if (mult != 2)
    throw std::runtime_error("no multiplicity-2 component of angle 1/6: order " + std::to_string(s.order()) +
                             ", char. poly " + factorization_string(fac));
  KMat t = to_kmat(s.matrix() + *inverse(s.matrix()));
  for (int i = 0; i < rs.rank; ++i) t(i, i) -= cos_value(6, 1);
  auto space = nullspace(t);
  auto pl = wslice::plane_search(rs, s.matrix(), space);
  if (!pl) throw std::runtime_error("plane search exhausted in the angle 1/6 component");
  return {*pl, 6, 1, "char. poly " + factorization_string(fac)};
}

// ---------------------------------------------------------------------------
// Slice construction

struct SliceBuild {
  SliceData slice;
  std::vector<Check> recipe_checks;
};

inline SliceBuild build_subregular_slice(const SubregularEntry& en, const RootSystemData& rs) {
  SliceBuild out;
  DecompositionOptions opt;
  auto fac = cyclotomic_factorization(charpoly(en.s_e.matrix()), en.s_e.order());
  switch (en.recipe) {
    case Recipe::Default: break;
    case Recipe::ReflectionLine: {
      QVec line(rs.rank, Q(0));
      line[rs.rank - 1] = 1;
      opt.specified.push_back({"h1", {line}});
      out.recipe_checks.push_back({"recipe.h1_line", true, "R a_" + std::to_string(rs.rank) + "^v"});
      break;
    }
    case Recipe::D2Plane: {
      bool has4 = false;
      for (auto [m, e] : fac)
        if (m == 4) has4 = true;
      out.recipe_checks.push_back({"recipe.d2_plane", has4, "char. poly " + factorization_string(fac)});
      break;
    }
    case Recipe::F4Plane: {
      try {
        auto res = f4_plane_search(rs, en.s_e);
        out.recipe_checks.push_back({"recipe.f4_plane", true, res.diagnostics});
        opt.plane_search = true;
      } catch (const std::runtime_error& e) {
        out.recipe_checks.push_back({"recipe.f4_plane", false, e.what()});
        opt.plane_search = true;
      }
      break;
    }
  }
  out.slice = analyze(rs, en.s_e, opt);
  return out;
}

/// dim N_s + dim Z = r + 2.
inline Check verify_dimension(const SubregularEntry& en, const SliceData& sd) {
  return {"dimension", sd.dim_ns + sd.dim_z == en.rank + 2,
          std::to_string(sd.dim_ns) + " + " + std::to_string(sd.dim_z) + " vs " + std::to_string(en.rank + 2)};
}

inline Q minimal_angle(const SliceData& sd) {
  std::optional<Q> best;
  for (const auto& p : sd.dec.parts)
    if (!best || p.angle_fraction() < *best) best = p.angle_fraction();
  return best ? *best : Q(0);
}

namespace detail {

inline std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<int> complement(const RootSystemData& rs, const std::vector<int>& s) {
  std::vector<int> out;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (std::find(s.begin(), s.end(), a) == s.end()) out.push_back(a);
  return out;
}

inline std::string count_str(const std::vector<std::vector<int>>& strata) {
  std::string s;
  for (const auto& st : strata) s += (s.empty() ? "" : ",") + std::to_string(st.size());
  return "sizes " + s;
}

/// {+-a, +-b} with a, b orthogonal.
inline bool is_d2_block(const RootSystemData& rs, const std::vector<int>& st) {
  if (st.size() != 4) return false;
  for (int a : st)
    if (std::find(st.begin(), st.end(), rs.neg(a)) == st.end()) return false;
  for (int a : st)
    for (int b : st)
      if (b != a && b != rs.neg(a) && rs.ip(rs.roots[a], rs.roots[b]) != 0) return false;
  return true;
}

}  // namespace detail

inline std::vector<Check> stratum_claims(const SubregularEntry& en, const RootSystemData& rs, const SliceData& sd) {
  std::vector<Check> out;
  const auto& strata = sd.strata;
  const std::string sizes = detail::count_str(strata);
  const bool min_last = !sd.chosen.empty() && sd.chosen.back() == static_cast<int>(sd.dec.parts.size());
  out.push_back({"strata.min_plane_last", min_last, sizes});
  const std::vector<int> last = strata.empty() ? std::vector<int>{} : detail::sorted(strata.back());
  const int r = rs.rank;
  switch (en.type_label) {
    case 'B':
    case 'C': {
      std::vector<int> ar = detail::sorted({rs.find(rs.simple(r - 1)), rs.neg(rs.find(rs.simple(r - 1)))});
      out.push_back({"strata.min", last == detail::complement(rs, ar), sizes});
      bool h1 = false;
      for (std::size_t k = 0; k + 1 < strata.size(); ++k)
        if (detail::sorted(strata[k]) == ar) h1 = true;
      out.push_back({"strata.h1", h1, sizes});
      break;
    }
    case 'D': {
      std::optional<std::vector<int>> block;
      for (std::size_t k = 0; k + 1 < strata.size(); ++k)
        if (detail::is_d2_block(rs, strata[k])) block = detail::sorted(strata[k]);
      out.push_back({"strata.h1", block.has_value(), sizes});
      out.push_back({"strata.min", block && last == detail::complement(rs, *block), sizes});
      break;
    }
    default:
      out.push_back({"strata.min", static_cast<int>(last.size()) == rs.num_roots(), sizes});
      break;
  }
  return out;
}

inline Check h0_claim(const SubregularEntry& en, const RootSystemData& rs, const SliceData& sd) {
  if (en.type_label != 'A') return {"h0", sd.dim_h0 == 0, "dim " + std::to_string(sd.dim_h0)};
  bool ok = sd.dim_h0 == 1;
  if (ok) {
    const KVec& v = sd.dec.fixed.basis[0];
    for (int i = 0; i + 1 < rs.rank; ++i)
      if (!is_zero(pair_root(v, rs.gram.apply(to_qvec(rs.simple(i)))))) ok = false;
  }
  return {"h0", ok, "dim " + std::to_string(sd.dim_h0) + (ok ? ", R w_r" : "")};
}

struct EntryReport {
  SubregularEntry entry;
  std::optional<SliceData> slice;
  std::vector<Check> claims;
  std::vector<Check> diagnostics;
  std::string error;

  bool pass() const { return error.empty() && all_pass(claims); }
  const Check* find(const std::string& name) const {
    for (const auto& c : claims)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Product of the reflections in the roots of e, analysed without a recipe.
inline Check e_root_word_diagnostic(const SubregularEntry& en, const RootSystemData& rs) {
  WeylWord w(rs, en.e_roots);
  auto sd = analyze(rs, w);
  auto fac = cyclotomic_factorization(charpoly(w.matrix()), w.order());
  return {"diagnostic.e_root_word", sd.ok() && sd.length == en.claimed_length,
          en.e_text + ": char. poly " + factorization_string(fac) + ", length " + std::to_string(sd.length)};
}

inline EntryReport verify_entry(char t, int r) {
  EntryReport rep;
  try {
    rep.entry = subregular(t, r);
    const auto& en = rep.entry;
    auto rs = build_root_system(t, r);
    auto cb = build_chevalley(rs);
    bool roots_ok = true;
    for (const auto& a : en.e_roots) roots_ok = roots_ok && rs.is_root(a);
    for (const auto& a : en.s_e.word()) roots_ok = roots_ok && rs.is_root(a);
    rep.claims.push_back({"roots.valid", roots_ok, ""});
    for (auto& c : verify_nilpotency_and_subregularity(en, rs, cb)) rep.claims.push_back(c);
    auto build = build_subregular_slice(en, rs);
    const auto& sd = build.slice;
    for (auto& c : build.recipe_checks) rep.claims.push_back(c);
    Q th = minimal_angle(sd);
    rep.claims.push_back({"theta_min", th == en.theta_min, th.get_str() + " vs " + en.theta_min.get_str()});
    rep.claims.push_back({"length", sd.length == en.claimed_length,
                          std::to_string(sd.length) + " vs " + std::to_string(en.claimed_length)});
    for (auto& c : stratum_claims(en, rs, sd)) rep.claims.push_back(c);
    rep.claims.push_back(h0_claim(en, rs, sd));
    rep.claims.push_back({"borel", sd.delta0.empty(), "|Delta_0| = " + std::to_string(sd.delta0.size())});
    rep.claims.push_back(verify_dimension(en, sd));
    std::string failed;
    for (const auto& c : sd.checks)
      if (!c.pass) failed += (failed.empty() ? "" : ",") + c.name;
    rep.claims.push_back({"slice.internal", sd.ok(), failed});
    rep.diagnostics.push_back(
        {"diagnostic.char_poly", true,
         factorization_string(sd.dec.charpoly) + ", order " + std::to_string(sd.dec.order)});
    rep.diagnostics.push_back(e_root_word_diagnostic(en, rs));
    rep.slice = sd;
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  return rep;
}

/// Entries are independent; results are returned in scope order.
inline std::vector<EntryReport> verify_catalog(const std::vector<std::pair<char, int>>& scope, bool parallel = true) {
  std::vector<EntryReport> out;
  if (!parallel) {
    for (auto [t, r] : scope) out.push_back(verify_entry(t, r));
    return out;
  }
  std::vector<std::future<EntryReport>> jobs;
  for (auto [t, r] : scope) jobs.push_back(std::async(std::launch::async, [t = t, r = r] { return verify_entry(t, r); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/// Claims that make up the family statement: length, strata, dimension, centralizer.
inline bool family_claims_pass(const EntryReport& rep) {
  if (!rep.error.empty()) return false;
  for (const auto& c : rep.claims)
    if ((c.name == "length" || c.name.rfind("strata.", 0) == 0 || c.name == "dimension" ||
         c.name == "e.centralizer_dim") &&
        !c.pass)
      return false;
  return true;
}

}  // namespace wslice::catalog
