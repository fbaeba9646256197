#pragma once

// Invariant decomposition of h_R under a Weyl group element s, generic
// elements of the pieces, root strata, rescaling, the induced positive
// system, and the parabolic / N_s / Z data of the slice N_s Z s^-1.
//
// Vectors of h_R are stored through the form identification h_R = h_R^*,
// in simple-root coordinates; h(a) is the Gram pairing (h, a) and the
// coroot a^v corresponds to 2a/(a,a).

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wslice/cyclo.hpp"
#include "wslice/liealg.hpp"

namespace wslice {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline bool all_pass(const std::vector<Check>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Check& c) { return c.pass; });
}

/// s-invariant subspace on which s is a rotation by 2pi j/m (m = 1: fixed).
struct Subspace {
  int m = 1;
  int j = 0;
  std::vector<KVec> basis;
  std::string origin;  // fixed | eigen | specified | plane-search
  std::string label;

  int dim() const { return static_cast<int>(basis.size()); }
  Q angle_fraction() const { return m == 1 ? Q(0) : make_q(j, m); }
  std::string angle() const { return m == 1 ? "0" : std::to_string(j) + "/" + std::to_string(m); }
};

struct InvariantDecomposition {
  QMat s;
  int order = 1;
  std::vector<std::pair<int, int>> charpoly;
  Subspace fixed;
  std::vector<Subspace> parts;  // parts[k] carries index k + 1
  std::string ordering;
};

struct SpecifiedSubspace {
  std::string label;
  std::vector<QVec> basis;
};

struct DecompositionOptions {
  enum class Order { AngleDescending, Construction };
  Order order = Order::AngleDescending;
  std::vector<SpecifiedSubspace> specified;
  /// Permutation of the parts after the ordering rule is applied.
  std::vector<int> explicit_order;
  /// Pick the minimal-angle plane so that no root is orthogonal to it.
  bool plane_search = false;
};

namespace detail {

inline KElem kdot(const KVec& x, const QMat& g, const KVec& y) { return bilinear(x, g, y); }

inline KVec kapply(const QMat& m, const KVec& v) {
  KVec out(m.rows(), KElem(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) out[i] += KElem(m(i, j)) * v[j];
  return out;
}

/// Combinations of `basis` orthogonal to every vector of `against`.
inline std::vector<KVec> orth_complement_in(const std::vector<KVec>& basis, const std::vector<KVec>& against,
                                            const QMat& g) {
  if (basis.empty() || against.empty()) return basis;
  KMat a(against.size(), basis.size(), KElem(0));
  for (std::size_t p = 0; p < against.size(); ++p)
    for (std::size_t i = 0; i < basis.size(); ++i) a(p, i) = kdot(basis[i], g, against[p]);
  std::vector<KVec> out;
  for (const auto& coef : nullspace(a)) {
    KVec v(basis[0].size(), KElem(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!is_zero(coef[i]))
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += coef[i] * basis[i][k];
    out.push_back(v);
  }
  return out;
}

inline KVec combine(const std::vector<KVec>& basis, const std::vector<long>& coef) {
  KVec v(basis.at(0).size(), KElem(0));
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coef[i] != 0)
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += KElem(Q(coef[i])) * basis[i][k];
  return v;
}

/// Deterministic candidate coefficient vectors: small grid first
/// (entries ordered 0, 1, -1, 2, -2), then the moment curve (1, t, t^2, ...).
class CandidateStream {
 public:
  CandidateStream(int d, std::size_t moment_limit) : d_(d), moment_limit_(moment_limit) {}

  std::optional<std::vector<long>> next() {
    static const long vals[] = {0, 1, -1, 2, -2};
    while (grid_pos_ < grid_total()) {
      std::vector<long> v(d_);
      std::size_t x = grid_pos_++;
      for (int i = d_ - 1; i >= 0; --i) {
        v[i] = vals[x % 5];
        x /= 5;
      }
      if (std::any_of(v.begin(), v.end(), [](long e) { return e != 0; })) return v;
    }
    if (t_ > moment_limit_) return std::nullopt;
    std::vector<long> v(d_);
    long p = 1;
    for (int i = 0; i < d_; ++i) {
      v[i] = p;
      p *= static_cast<long>(t_);
    }
    ++t_;
    return v;
  }

 private:
  std::size_t grid_total() const {
    std::size_t n = 1;
    for (int i = 0; i < std::min(d_, 6); ++i) n *= 5;
    return d_ <= 6 ? n : 0;
  }
  int d_;
  std::size_t moment_limit_;
  std::size_t grid_pos_ = 0;
  std::size_t t_ = 2;
};

}  // namespace detail

/// Gram-pairing table: row vector G a for each root a.
inline std::vector<QVec> root_duals(const RootSystemData& rs) {
  std::vector<QVec> out;
  for (const auto& a : rs.roots) out.push_back(rs.gram.apply(to_qvec(a)));
  return out;
}

inline KElem pair_root(const KVec& h, const QVec& ga) {
  KElem acc(0);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!is_zero(ga[i]) && !is_zero(h[i])) acc += h[i] * KElem(ga[i]);
  return acc;
}

inline bool root_orthogonal_to(const std::vector<KVec>& basis, const QVec& ga) {
  for (const auto& b : basis)
    if (!is_zero(pair_root(b, ga))) return false;
  return true;
}

/// v in span(basis) with v(a) != 0 for every root a not orthogonal to the span.
inline KVec choose_generic(const Subspace& sub, const RootSystemData& rs) {
  if (sub.basis.empty()) return KVec(rs.rank, KElem(0));
  auto duals = root_duals(rs);
  std::vector<int> relevant;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (!root_orthogonal_to(sub.basis, duals[a])) relevant.push_back(a);
  detail::CandidateStream cs(sub.dim(), static_cast<std::size_t>(sub.dim()) * rs.roots.size() + 2);
  while (auto coef = cs.next()) {
    KVec v = detail::combine(sub.basis, *coef);
    bool ok = std::all_of(relevant.begin(), relevant.end(), [&](int a) { return !is_zero(pair_root(v, duals[a])); });
    if (ok) return v;
  }
  throw std::logic_error("generic element search exhausted");
}

/// Plane span{w, s w} inside `space` not orthogonal to any root.
inline std::optional<std::vector<KVec>> plane_search(const RootSystemData& rs, const QMat& s,
                                                     const std::vector<KVec>& space) {
  auto duals = root_duals(rs);
  detail::CandidateStream cs(static_cast<int>(space.size()), 2 * rs.roots.size() * space.size() + 2);
  while (auto coef = cs.next()) {
    KVec w = detail::combine(space, *coef);
    std::vector<KVec> plane = {w, detail::kapply(s, w)};
    bool ok = true;
    for (const auto& ga : duals)
      if (root_orthogonal_to(plane, ga)) {
        ok = false;
        break;
      }
    if (ok) return plane;
  }
  return std::nullopt;
}

inline InvariantDecomposition invariant_decomposition(const WeylWord& w, const RootSystemData& rs,
                                                      const DecompositionOptions& opt = {}) {
  InvariantDecomposition dec;
  const int r = rs.rank;
  const QMat& g = rs.gram;
  dec.s = w.matrix();
  dec.order = w.order();
  dec.charpoly = cyclotomic_factorization(charpoly(dec.s), dec.order);
  QMat sinv = *inverse(dec.s);
  QMat t = dec.s + sinv;
  QMat id = qidentity(r);

  auto fixed = nullspace(dec.s - id);
  dec.fixed.m = 1;
  dec.fixed.origin = "fixed";
  dec.fixed.label = "h0";
  for (auto& v : fixed) dec.fixed.basis.push_back(to_kvec(v));

  // User-specified pieces, each inside one eigencomponent.
  std::vector<Subspace> specified;
  for (const auto& sp : opt.specified) {
    if (sp.basis.empty() || sp.basis.size() > 2) throw std::invalid_argument("specified subspace must have dim 1 or 2");
    for (const auto& v : sp.basis)
      if (!in_span(sp.basis, dec.s.apply(v))) throw std::invalid_argument("specified subspace " + sp.label + " is not s-invariant");
    int found_m = 0;
    for (auto [m, e] : dec.charpoly) {
      QMat pm = eval_poly(cyclotomic(m), dec.s);
      if (std::all_of(sp.basis.begin(), sp.basis.end(), [&](const QVec& v) { return is_zero_vec(pm.apply(v)); })) {
        found_m = m;
        break;
      }
    }
    if (found_m == 0 || found_m == 1) throw std::invalid_argument("specified subspace " + sp.label + " is not in a rotation component");
    Subspace sub;
    sub.m = found_m;
    sub.origin = "specified";
    sub.label = sp.label;
    for (const auto& v : sp.basis) sub.basis.push_back(to_kvec(v));
    if (found_m == 2) {
      if (sp.basis.size() != 1) throw std::invalid_argument("specified reflection piece must be a line");
      sub.j = 1;
    } else {
      if (sp.basis.size() != 2) throw std::invalid_argument("specified rotation piece must be a plane");
      QVec tv = t.apply(sp.basis[0]);
      int jj = 0;
      for (int j = 1; 2 * j < found_m; ++j) {
        if (std::gcd(j, found_m) != 1) continue;
        KElem c = cos_value(found_m, j);
        if (!c.is_rational()) continue;
        QVec diff = tv;
        for (int k = 0; k < r; ++k) diff[k] -= c.rational() * sp.basis[0][k];
        if (is_zero_vec(diff)) jj = j;
      }
      if (!jj) throw std::invalid_argument("specified plane is not a rational rotation plane");
      sub.j = jj;
    }
    for (const auto& prev : specified)
      for (const auto& a : prev.basis)
        for (const auto& b : sub.basis)
          if (!is_zero(detail::kdot(a, g, b))) throw std::invalid_argument("specified subspaces are not orthogonal");
    specified.push_back(sub);
  }

  std::vector<Subspace> parts;
  auto min_angle_component = [&]() {
    std::pair<int, int> best{0, 0};
    for (auto [m, e] : dec.charpoly) {
      if (m <= 2) continue;
      for (int j = 1; 2 * j < m; ++j)
        if (std::gcd(j, m) == 1 && (best.first == 0 || make_q(j, m) < make_q(best.second, best.first))) best = {m, j};
    }
    return best;
  }();

  for (auto [m, e] : dec.charpoly) {
    if (m == 1) continue;
    std::vector<std::pair<int, KElem>> eigen;
    if (m == 2) eigen.emplace_back(1, KElem(-2));
    for (int j = 1; m > 2 && 2 * j < m; ++j)
      if (std::gcd(j, m) == 1) eigen.emplace_back(j, cos_value(m, j));
    for (auto& [j, c] : eigen) {
      KMat tk = to_kmat(t);
      for (int i = 0; i < r; ++i) tk(i, i) -= c;
      std::vector<KVec> space = nullspace(tk);
      const std::size_t expect = (m == 2 ? 1u : 2u) * static_cast<std::size_t>(e);
      if (space.size() != expect) throw std::logic_error("eigenspace dimension mismatch");
      std::vector<KVec> taken;
      for (const auto& sp : specified)
        if (sp.m == m && sp.j == j)
          for (const auto& v : sp.basis) taken.push_back(v);
      for (const auto& sp : specified)
        if (sp.m == m && sp.j == j) parts.push_back(sp);
      space = detail::orth_complement_in(space, taken, g);
      bool search_here = opt.plane_search && m == min_angle_component.first && j == min_angle_component.second;
      int piece = 0;
      while (!space.empty()) {
        Subspace sub;
        sub.m = m;
        sub.j = j;
        sub.origin = "eigen";
        if (m == 2) {
          sub.basis = {space[0]};
        } else if (search_here) {
          auto pl = plane_search(rs, dec.s, space);
          if (!pl) throw std::runtime_error("plane search exhausted");
          sub.basis = *pl;
          sub.origin = "plane-search";
          search_here = false;
        } else {
          sub.basis = {space[0], detail::kapply(dec.s, space[0])};
        }
        sub.label = "m" + std::to_string(m) + "j" + std::to_string(j) + "_" + std::to_string(piece++);
        space = detail::orth_complement_in(space, sub.basis, g);
        parts.push_back(sub);
      }
    }
  }

  std::vector<int> idx(parts.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (opt.order == DecompositionOptions::Order::AngleDescending) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return parts[a].angle_fraction() > parts[b].angle_fraction(); });
    dec.ordering = "angle-descending";
  } else {
    dec.ordering = "construction";
  }
  if (!opt.explicit_order.empty()) {
    if (opt.explicit_order.size() != idx.size()) throw std::invalid_argument("explicit order has wrong length");
    std::vector<int> perm;
    std::vector<bool> seen(idx.size(), false);
    for (int k : opt.explicit_order) {
      if (k < 0 || k >= static_cast<int>(idx.size()) || seen[k]) throw std::invalid_argument("explicit order is not a permutation");
      seen[k] = true;
      perm.push_back(idx[k]);
    }
    idx = perm;
    dec.ordering += "+explicit";
  }
  for (int k : idx) dec.parts.push_back(parts[k]);
  for (std::size_t k = 0; k < dec.parts.size(); ++k) dec.parts[k].label = std::to_string(k + 1) + ":" + dec.parts[k].label;
  return dec;
}

inline std::vector<Check> check_decomposition(const InvariantDecomposition& dec, const RootSystemData& rs) {
  std::vector<Check> out;
  const QMat& g = rs.gram;
  std::vector<const Subspace*> all = {&dec.fixed};
  for (const auto& p : dec.parts) all.push_back(&p);
  int total = 0;
  std::vector<KVec> span;
  bool orth = true, inv = true, kinds = true;
  QMat t = dec.s + *inverse(dec.s);
  for (std::size_t a = 0; a < all.size(); ++a) {
    total += all[a]->dim();
    for (const auto& v : all[a]->basis) span.push_back(v);
    for (std::size_t b = a + 1; b < all.size(); ++b)
      for (const auto& x : all[a]->basis)
        for (const auto& y : all[b]->basis)
          if (!is_zero(detail::kdot(x, g, y))) orth = false;
    for (const auto& v : all[a]->basis) {
      KVec sv = detail::kapply(dec.s, v);
      if (!in_span(all[a]->basis, sv)) inv = false;
      if (all[a]->m == 1 && !(sv == v)) kinds = false;
      if (all[a]->m == 2) {
        KVec neg = v;
        for (auto& x : neg) x = -x;
        if (!(sv == neg)) kinds = false;
      }
      if (all[a]->m > 2) {
        KVec tv = detail::kapply(t, v);
        KElem c = cos_value(all[a]->m, all[a]->j);
        for (std::size_t k = 0; k < v.size(); ++k)
          if (!(tv[k] == c * v[k])) kinds = false;
      }
    }
    if (all[a]->m > 1 && all[a]->dim() != (all[a]->m == 2 ? 1 : 2)) kinds = false;
  }
  out.push_back({"decomposition.orthogonal", orth, ""});
  out.push_back({"decomposition.invariant", inv, ""});
  out.push_back({"decomposition.rotation_kind", kinds, ""});
  bool spans = total == rs.rank && span_dim(span, rs.rank) == static_cast<std::size_t>(rs.rank);
  out.push_back({"decomposition.spans", spans, "dims sum " + std::to_string(total)});
  auto fixed = nullspace(dec.s - qidentity(rs.rank));
  out.push_back({"decomposition.fixed_is_h0", static_cast<int>(fixed.size()) == dec.fixed.dim(), ""});
  return out;
}

// ---------------------------------------------------------------------------
// Slice data

struct SliceData {
  char type_label = 'A';
  int rank = 0;
  WeylWord s;
  InvariantDecomposition dec;
  std::vector<KVec> generic;   // unscaled h_i, i = 0..K
  std::vector<int> chosen;     // indices i_k with nonempty strata (i_0 = 0 always)
  std::vector<Q> scale;        // factor applied to h_{i_k}
  Q lambda = 1;
  std::vector<std::vector<int>> strata;  // root indices of bar-Delta_{i_k}
  std::vector<std::vector<int>> chain;   // Delta_{i_k}
  std::vector<bool> positive;
  std::vector<int> gamma;
  int length = 0;
  std::vector<int> delta0, n_roots, nbar_roots, ns_roots;
  int dim_h0 = 0, dim_n = 0, dim_ns = 0, dim_z = 0, dim_slice = 0;
  std::vector<Check> checks;

  bool ok() const { return all_pass(checks); }
  const Check* find_check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Strata bar-Delta_i for the vectors hs[0..K] (hs[0] in the fixed space).
inline std::vector<std::vector<int>> root_strata_all(const std::vector<KVec>& hs, const RootSystemData& rs) {
  auto duals = root_duals(rs);
  std::vector<std::vector<int>> out(hs.size());
  for (int a = 0; a < rs.num_roots(); ++a) {
    for (int i = static_cast<int>(hs.size()) - 1; i >= 0; --i) {
      if (!is_zero(pair_root(hs[i], duals[a]))) {
        out[i].push_back(a);
        break;
      }
    }
  }
  return out;
}

/// Positive system of a regular element given as per-root sums of terms.
inline std::vector<bool> positive_system(const std::vector<std::vector<KElem>>& hbar_terms, const RootSystemData& rs) {
  std::vector<bool> pos(rs.num_roots());
  for (int a = 0; a < rs.num_roots(); ++a) {
    int sg = sign_of_sum(hbar_terms[a]);
    if (sg == 0) throw std::invalid_argument("h-bar lies on the wall of root " + root_label(rs.roots[a]));
    pos[a] = sg > 0;
  }
  return pos;
}

/// Indecomposable elements of a positive system.
inline std::vector<int> simple_system(const RootSystemData& rs, const std::vector<bool>& pos) {
  std::vector<int> gamma;
  for (int a = 0; a < rs.num_roots(); ++a) {
    if (!pos[a]) continue;
    bool decomp = false;
    for (int b = 0; b < rs.num_roots() && !decomp; ++b) {
      if (!pos[b] || b == a) continue;
      IVec d = rs.roots[a];
      for (int k = 0; k < rs.rank; ++k) d[k] -= rs.roots[b][k];
      int c = rs.find(d);
      if (c >= 0 && pos[c]) decomp = true;
    }
    if (!decomp) gamma.push_back(a);
  }
  return gamma;
}

/// Scale factors Lambda^k making condition (cond) hold; returns Lambda.
inline Q rescale_factor(const std::vector<std::vector<KElem>>& pairings, const std::vector<std::vector<int>>& strata) {
  // pairings[k][a] = h_{i_k}(a), strata[k] = bar-Delta_{i_k}.
  Q c = 0;
  for (std::size_t k = 1; k < strata.size(); ++k)
    for (int a : strata[k]) {
      Q den = pairings[k][a].enclose().abs_lo();
      if (sgn(den) <= 0) throw std::logic_error("stratum element with vanishing pairing");
      for (std::size_t j = 0; j < k; ++j) {
        Q ratio = pairings[j][a].enclose().abs_hi() / den;
        if (ratio > c) c = ratio;
      }
    }
  return Q(1) + ceil_q(c);
}

inline std::vector<Check> check_condition(const std::vector<std::vector<KElem>>& pairings,
                                          const std::vector<std::vector<int>>& strata, const RootSystemData& rs) {
  for (std::size_t k = 0; k < strata.size(); ++k)
    for (int a : strata[k]) {
      Q lhs = pairings[k][a].enclose().abs_lo();
      for (std::size_t l = 0; l < k; ++l) {
        std::vector<KElem> terms;
        for (std::size_t j = l; j < k; ++j) terms.push_back(pairings[j][a]);
        if (!(lhs > enclose_sum(terms).abs_hi()))
          return {{"cond", false, "root " + root_label(rs.roots[a]) + " stratum " + std::to_string(k)}};
      }
    }
  return {{"cond", true, ""}};
}

inline SliceData build_slice(const RootSystemData& rs, const WeylWord& s, const InvariantDecomposition& dec) {
  SliceData sd;
  sd.type_label = rs.type_label;
  sd.rank = rs.rank;
  sd.s = s;
  sd.dec = dec;
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    sd.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  for (auto& c : check_decomposition(dec, rs)) sd.checks.push_back(c);

  auto duals = root_duals(rs);
  const int nr = rs.num_roots();
  std::vector<const Subspace*> subs = {&dec.fixed};
  for (const auto& p : dec.parts) subs.push_back(&p);
  bool generic_ok = true;
  for (const auto* sub : subs) {
    KVec v = choose_generic(*sub, rs);
    for (int a = 0; a < nr; ++a)
      if (!root_orthogonal_to(sub->basis, duals[a]) && is_zero(pair_root(v, duals[a]))) generic_ok = false;
    sd.generic.push_back(v);
  }
  add("generic", generic_ok);

  auto strata_all = root_strata_all(sd.generic, rs);
  sd.chosen.push_back(0);
  sd.strata.push_back(strata_all[0]);
  for (std::size_t i = 1; i < strata_all.size(); ++i)
    if (!strata_all[i].empty()) {
      sd.chosen.push_back(static_cast<int>(i));
      sd.strata.push_back(strata_all[i]);
    }

  // Pairings of the unscaled chosen vectors, then rescale.
  std::vector<std::vector<KElem>> pr(sd.chosen.size(), std::vector<KElem>(nr));
  for (std::size_t k = 0; k < sd.chosen.size(); ++k)
    for (int a = 0; a < nr; ++a) pr[k][a] = pair_root(sd.generic[sd.chosen[k]], duals[a]);
  sd.lambda = sd.chosen.size() > 1 ? rescale_factor(pr, sd.strata) : Q(1);
  Q f = 1;
  for (std::size_t k = 0; k < sd.chosen.size(); ++k) {
    sd.scale.push_back(f);
    for (int a = 0; a < nr; ++a) pr[k][a] = KElem(f) * pr[k][a];
    f *= sd.lambda;
  }
  for (auto& c : check_condition(pr, sd.strata, rs)) sd.checks.push_back(c);

  // Disjoint union and chain.
  std::vector<int> owner(nr, -1);
  bool disjoint = true;
  for (std::size_t k = 0; k < sd.strata.size(); ++k)
    for (int a : sd.strata[k]) {
      if (owner[a] >= 0) disjoint = false;
      owner[a] = static_cast<int>(k);
    }
  bool covers = std::all_of(owner.begin(), owner.end(), [](int o) { return o >= 0; });
  add("strata.disjoint_union", disjoint && covers);
  std::vector<int> acc;
  bool strict = true;
  for (std::size_t k = 0; k < sd.strata.size(); ++k) {
    acc.insert(acc.end(), sd.strata[k].begin(), sd.strata[k].end());
    std::sort(acc.begin(), acc.end());
    if (k > 0 && sd.strata[k].empty()) strict = false;
    sd.chain.push_back(acc);
  }
  add("chain.strict", strict && static_cast<int>(sd.chain.back().size()) == nr);
  auto perm = s.root_permutation(rs);
  bool stable = true;
  for (const auto& st : sd.strata)
    for (int a : st)
      if (std::find(st.begin(), st.end(), perm[a]) == st.end()) stable = false;
  add("strata.s_invariant", stable);
  std::vector<int> fixed_roots;
  for (int a = 0; a < nr; ++a)
    if (perm[a] == a) fixed_roots.push_back(a);
  add("delta0.fixed_roots", fixed_roots == sd.strata[0]);
  sd.delta0 = sd.strata[0];

  // Positive system from h-bar.
  std::vector<std::vector<KElem>> terms(nr);
  for (int a = 0; a < nr; ++a)
    for (std::size_t k = 0; k < sd.chosen.size(); ++k) terms[a].push_back(pr[k][a]);
  bool regular = true;
  try {
    sd.positive = positive_system(terms, rs);
  } catch (const std::invalid_argument& e) {
    regular = false;
    add("hbar.regular", false, e.what());
    return sd;
  }
  add("hbar.regular", regular);
  bool rule = true;
  for (std::size_t k = 0; k < sd.strata.size(); ++k)
    for (int a : sd.strata[k])
      if ((pr[k][a].sign() > 0) != sd.positive[a]) rule = false;
  add("positivity.stratum_rule", rule);
  sd.gamma = simple_system(rs, sd.positive);
  add("gamma.size", static_cast<int>(sd.gamma.size()) == rs.rank, std::to_string(sd.gamma.size()));
  sd.length = weyl_length(s, rs, sd.positive);

  // Parabolic from h-bar_0 (chosen indices k >= 1).
  bool parabolic_ok = true;
  std::vector<bool> in_d0(nr, false);
  for (int a : sd.delta0) in_d0[a] = true;
  for (int a = 0; a < nr; ++a) {
    std::vector<KElem> t0(terms[a].begin() + 1, terms[a].end());
    int sg = sign_of_sum(t0);
    if (sg < 0) sd.n_roots.push_back(a);
    if (sg > 0) sd.nbar_roots.push_back(a);
    if ((sg == 0) != in_d0[a]) parabolic_ok = false;
    if (sg != 0 && (sg > 0) != sd.positive[a]) parabolic_ok = false;
  }
  add("parabolic.levi_is_delta0", parabolic_ok);
  std::vector<bool> in_nbar(nr, false);
  for (int a : sd.nbar_roots) in_nbar[a] = true;
  for (int a : sd.n_roots)
    if (in_nbar[perm[a]]) sd.ns_roots.push_back(a);
  sd.dim_h0 = dec.fixed.dim();
  sd.dim_n = static_cast<int>(sd.n_roots.size());
  sd.dim_ns = static_cast<int>(sd.ns_roots.size());
  sd.dim_z = static_cast<int>(sd.delta0.size()) + sd.dim_h0;
  sd.dim_slice = sd.dim_ns + sd.dim_z;
  add("ns.length", sd.dim_ns == sd.length, std::to_string(sd.dim_ns) + " vs " + std::to_string(sd.length));
  return sd;
}

inline SliceData analyze(const RootSystemData& rs, const WeylWord& s, const DecompositionOptions& opt = {}) {
  return build_slice(rs, s, invariant_decomposition(s, rs, opt));
}

}  // namespace wslice
