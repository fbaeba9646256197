#pragma once

// Reflection in a long root: the choice of beta, the short Z-grading by
// h = beta^v, the grading of the centralizer z_e, the reduced r-matrix and,
// in the SL(n) realization, the slice bracket on N Z at points and in closed
// form on the coordinates of N Z.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wslice/dual.hpp"
#include "wslice/liealg.hpp"
#include "wslice/poisson.hpp"
#include "wslice/rmatrix.hpp"
#include "wslice/weylslice.hpp"

namespace wslice::longroot {

/// Root index of beta: a_r for A and C, else the long simple root linked to the lowest root.
/// B2 is C2 with the nodes swapped and takes its long simple root a_1.
inline int select_beta(const RootSystemData& rs) {
  if (rs.type_label == 'A' || rs.type_label == 'C') return rs.find(rs.simple(rs.rank - 1));
  if (rs.type_label == 'B' && rs.rank == 2) return rs.find(rs.simple(0));
  const IVec& theta = rs.highest_root();
  std::vector<int> linked;
  for (int i = 0; i < rs.rank; ++i) {
    IVec a = rs.simple(i);
    if (rs.is_long(a) && rs.ip(a, theta) != 0) linked.push_back(rs.find(a));
  }
  if (linked.size() != 1) throw std::logic_error("no unique long simple root linked to the lowest root");
  return linked[0];
}

/// Simple roots linked to the lowest root on the extended diagram.
inline std::vector<int> extended_neighbours(const RootSystemData& rs) {
  std::vector<int> out;
  for (int i = 0; i < rs.rank; ++i)
    if (rs.ip(rs.simple(i), rs.highest_root()) != 0) out.push_back(i + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Short grading

struct ShortGrading {
  int beta = -1;
  std::vector<int> grade;                   // per basis index
  std::array<std::vector<int>, 5> comp;     // basis indices of (g)_{-2..2}
  QVec e, h, f;

  const std::vector<int>& part(int m) const { return comp.at(m + 2); }
  std::array<int, 5> dims() const {
    std::array<int, 5> d{};
    for (int k = 0; k < 5; ++k) d[k] = static_cast<int>(comp[k].size());
    return d;
  }
};

inline QVec cartan_vector(const ChevalleyBasis& cb, const IVec& coroot) {
  QVec v(cb.dim, Q(0));
  for (int i = 0; i < cb.rs.rank; ++i) v[cb.cartan_index(i)] = coroot[i];
  return v;
}

/// Grading by ad beta^v; rejects beta unless the grades lie in [-2, 2] with +-2 only on +-beta.
inline ShortGrading short_grading(int beta, const ChevalleyBasis& cb) {
  const RootSystemData& rs = cb.rs;
  ShortGrading sg;
  sg.beta = beta;
  sg.grade.assign(cb.dim, 0);
  const IVec& b = rs.roots[beta];
  for (int a = 0; a < cb.nroots; ++a) {
    int m = rs.pairing(rs.roots[a], b);
    bool extra = (m == 2 || m == -2) && a != beta && a != rs.neg(beta);
    if (m < -2 || m > 2 || extra)
      throw std::invalid_argument("root " + root_label(b) + " is not long: " + root_label(rs.roots[a]) + " has grade " +
                                  std::to_string(m));
    sg.grade[cb.root_index(a)] = m;
  }
  for (int i = 0; i < cb.dim; ++i) sg.comp[sg.grade[i] + 2].push_back(i);
  sg.h = cartan_vector(cb, rs.coroot(b));
  sg.e = cb.unit(cb.root_index(beta));
  sg.f = cb.unit(cb.root_index(rs.neg(beta)));
  // [e_b, e_-b] = coroot_scale * b^v
  for (auto& x : sg.f) x *= Q(cb.coroot_scale(beta));
  return sg;
}

namespace detail {

inline bool in_span_of(const std::vector<int>& idx, const QVec& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!is_zero(v[k]) && std::find(idx.begin(), idx.end(), static_cast<int>(k)) == idx.end()) return false;
  return true;
}

inline QMat restrict_rows(const QMat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  QMat out(rows.size(), cols.size(), Q(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

}  // namespace detail

inline std::vector<Check> grading_checks(const ShortGrading& sg, const ChevalleyBasis& cb) {
  std::vector<Check> out;
  QVec efh = cb.bracket(sg.e, sg.f);
  out.push_back({"triple.ef", efh == sg.h, ""});
  QVec he = cb.bracket(sg.h, sg.e), hf = cb.bracket(sg.h, sg.f);
  bool triple = true;
  for (int k = 0; k < cb.dim; ++k) {
    if (he[k] != Q(2) * sg.e[k]) triple = false;
    if (hf[k] != Q(-2) * sg.f[k]) triple = false;
  }
  out.push_back({"triple.h", triple, ""});

  QMat adh = cb.ad(sg.h);
  bool eig = true;
  for (int i = 0; i < cb.dim; ++i) {
    QVec col = adh.column(i);
    for (int k = 0; k < cb.dim; ++k)
      if (col[k] != (k == i ? Q(sg.grade[i]) : Q(0))) eig = false;
  }
  out.push_back({"grading.eigen", eig, ""});

  bool pm2 = sg.part(2).size() == 1 && sg.part(-2).size() == 1 && detail::in_span_of(sg.part(2), sg.e) &&
             detail::in_span_of(sg.part(-2), sg.f);
  out.push_back({"grading.pm2", pm2, ""});

  bool compat = true;
  std::string bad;
  for (int i = 0; i < cb.dim && compat; ++i)
    for (int j = 0; j < cb.dim; ++j) {
      int m = sg.grade[i] + sg.grade[j];
      QVec br = cb.bracket(cb.unit(i), cb.unit(j));
      bool ok = (m < -2 || m > 2) ? is_zero_vec(br) : detail::in_span_of(sg.part(m), br);
      if (!ok) {
        compat = false;
        bad = std::to_string(i) + "," + std::to_string(j);
        break;
      }
    }
  out.push_back({"grading.compatible", compat, bad});

  // (g)_{+-1} + (g)_{+-2}: brackets of degree-1 pieces land in degree 2, which is
  // central there, and the pairing on (g)_{+-1} is nondegenerate.
  for (int sgn : {1, -1}) {
    const auto& one = sg.part(sgn);
    const auto& two = sg.part(2 * sgn);
    const QVec& top = sgn > 0 ? sg.e : sg.f;
    int topi = two.empty() ? -1 : two[0];
    bool heis = two.size() == 1;
    QMat omega(one.size(), one.size(), Q(0));
    for (std::size_t a = 0; heis && a < one.size(); ++a)
      for (std::size_t b = 0; b < one.size(); ++b) {
        QVec br = cb.bracket(cb.unit(one[a]), cb.unit(one[b]));
        if (!detail::in_span_of(two, br)) heis = false;
        omega(a, b) = br[topi] / top[topi];
      }
    for (int x : one)
      if (!is_zero_vec(cb.bracket(top, cb.unit(x)))) heis = false;
    if (heis && !one.empty() && rank(omega) != one.size()) heis = false;
    out.push_back({sgn > 0 ? "heisenberg.plus" : "heisenberg.minus", heis, ""});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Centralizer grading

struct CentralizerGrading {
  std::vector<QVec> z0;            // (z_e)_0
  std::vector<int> z1, z2;         // (z_e)_1, (z_e)_2 as basis indices
  int dim_negative = 0;            // kernel dimension in negative degrees
  int dim_kernel = 0;              // dim ker ad e
};

inline CentralizerGrading centralizer_grading(const ShortGrading& sg, const ChevalleyBasis& cb) {
  CentralizerGrading cg;
  QMat ade = cb.ad(sg.e);
  cg.dim_kernel = static_cast<int>(nullspace(ade).size());
  auto graded_kernel = [&](int m) {
    const auto& idx = sg.part(m);
    std::vector<QVec> out;
    if (idx.empty()) return out;
    std::vector<int> all(cb.dim);
    std::iota(all.begin(), all.end(), 0);
    for (const auto& v : nullspace(detail::restrict_rows(ade, all, idx))) {
      QVec x(cb.dim, Q(0));
      for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = v[k];
      out.push_back(x);
    }
    return out;
  };
  cg.z0 = graded_kernel(0);
  if (graded_kernel(1).size() == sg.part(1).size()) cg.z1 = sg.part(1);
  if (graded_kernel(2).size() == sg.part(2).size()) cg.z2 = sg.part(2);
  cg.dim_negative = static_cast<int>(graded_kernel(-1).size() + graded_kernel(-2).size());
  return cg;
}

inline std::vector<Check> centralizer_checks(const ShortGrading& sg, const CentralizerGrading& cg,
                                             const ChevalleyBasis& cb) {
  std::vector<Check> out;
  const int d0 = static_cast<int>(sg.part(0).size());
  const int total = static_cast<int>(cg.z0.size() + cg.z1.size() + cg.z2.size());
  out.push_back({"ze.graded", total == cg.dim_kernel && cg.dim_negative == 0,
                 std::to_string(total) + " vs " + std::to_string(cg.dim_kernel)});
  out.push_back({"ze.m1", cg.z1.size() == sg.part(1).size(), ""});
  out.push_back({"ze.m2", cg.z2.size() == sg.part(2).size(), ""});
  out.push_back({"ze.codim1", static_cast<int>(cg.z0.size()) == d0 - 1,
                 std::to_string(cg.z0.size()) + " in " + std::to_string(d0)});
  bool orth = true;
  for (const auto& v : cg.z0)
    if (!is_zero(cb.form(v, sg.h))) orth = false;
  out.push_back({"ze.orthogonal_to_h", orth, ""});
  bool ideal = true;
  for (int i : sg.part(0))
    for (const auto& v : cg.z0)
      if (!in_span(cg.z0, cb.bracket(cb.unit(i), v))) ideal = false;
  out.push_back({"ze.ideal", ideal, ""});
  return out;
}

// ---------------------------------------------------------------------------
// Slice for s = s_beta and the reduced r-matrix

inline SliceData slice_for(const RootSystemData& rs, int beta) {
  DecompositionOptions opt;
  opt.specified.push_back({"h1", {to_qvec(rs.roots[beta])}});
  return analyze(rs, WeylWord(rs, {rs.roots[beta]}), opt);
}

inline std::vector<Check> slice_checks(const RootSystemData& rs, int beta, const ShortGrading& sg,
                                       const CentralizerGrading& cg, const SliceData& sd) {
  std::vector<Check> out;
  out.push_back({"slice.internal", sd.ok(), ""});
  std::vector<int> neg, zero;
  for (int a = 0; a < rs.num_roots(); ++a) {
    int m = sg.grade[a];
    if (m < 0) neg.push_back(a);
    if (m == 0) zero.push_back(a);
  }
  out.push_back({"parabolic.n", sd.n_roots == neg, ""});
  out.push_back({"parabolic.ns_equals_n", sd.ns_roots == sd.n_roots, ""});
  out.push_back({"parabolic.levi", sd.delta0 == zero, ""});
  bool highest = sd.positive.size() == rs.roots.size() && sd.positive[beta];
  for (int a = 0; highest && a < rs.num_roots(); ++a) {
    if (!sd.positive[a]) continue;
    IVec v = rs.roots[beta];
    for (int k = 0; k < rs.rank; ++k) v[k] += rs.roots[a][k];
    if (rs.is_root(v)) highest = false;
  }
  out.push_back({"beta.highest", highest, root_label(rs.roots[beta])});
  // n + z has the dimension of z_e
  out.push_back({"dimension.ns_z", sd.dim_ns + sd.dim_z == cg.dim_kernel,
                 std::to_string(sd.dim_ns) + " + " + std::to_string(sd.dim_z) + " vs " + std::to_string(cg.dim_kernel)});
  return out;
}

/// r = P_k - P_kbar with r0 = 0.
inline Check reduced_r_check(const SliceData& sd, const ChevalleyBasis& cb) {
  auto R = build_r(sd, cb);
  bool ok = R.r0.is_zero_matrix() && R.r == standard_r(cb, sd.positive);
  return {"r.reduced", ok, ""};
}

struct LieReport {
  char type_label = 'A';
  int rank = 0;
  int beta = -1;
  std::array<int, 5> dims{};
  std::vector<Check> checks;
  std::string error;
  bool pass() const { return error.empty() && all_pass(checks); }
};

inline LieReport lie_report(char t, int r) {
  LieReport rep;
  rep.type_label = t;
  rep.rank = r;
  try {
    auto rs = build_root_system(t, r);
    auto cb = build_chevalley(rs);
    rep.beta = select_beta(rs);
    auto sg = short_grading(rep.beta, cb);
    rep.dims = sg.dims();
    for (auto& c : grading_checks(sg, cb)) rep.checks.push_back(c);
    auto cg = centralizer_grading(sg, cb);
    for (auto& c : centralizer_checks(sg, cg, cb)) rep.checks.push_back(c);
    auto sd = slice_for(rs, rep.beta);
    for (auto& c : slice_checks(rs, rep.beta, sg, cg, sd)) rep.checks.push_back(c);
    rep.checks.push_back(reduced_r_check(sd, cb));
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  return rep;
}

inline std::vector<std::pair<char, int>> sweep_types(int max_rank = 4) {
  std::vector<std::pair<char, int>> out;
  for (int r = 1; r <= max_rank; ++r) out.emplace_back('A', r);
  for (int r = 2; r <= max_rank; ++r) out.emplace_back('B', r);
  for (int r = 3; r <= max_rank; ++r) out.emplace_back('C', r);
  if (max_rank >= 4) out.emplace_back('D', 4);
  if (max_rank >= 4) out.emplace_back('F', 4);
  out.emplace_back('G', 2);
  return out;
}

// ---------------------------------------------------------------------------
// SL(n) realization

namespace detail {

/// Signed permutation matrix of determinant 1 whose conjugation sends the
/// images of e_{+-a}, a in gamma, to those of e_{+-s a}.
inline std::optional<QMat> signed_permutation_rep(const MatrixGroupContext& ctx, const SliceData& sd) {
  const RootSystemData& rs = ctx.cb.rs;
  const int n = ctx.n;
  auto perm_rs = sd.s.root_permutation(rs);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (int mask = 0; mask < (1 << n); ++mask) {
      QMat m(n, n, Q(0));
      for (int i = 0; i < n; ++i) m(p[i], i) = (mask >> i) & 1 ? -1 : 1;
      // sign(p) * prod(signs)
      int parity = __builtin_popcount(static_cast<unsigned>(mask));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (p[i] > p[j]) ++parity;
      if (parity % 2) continue;
      QMat minv = m.transpose();
      bool ok = true;
      for (int g : sd.gamma) {
        for (int b : {g, rs.neg(g)}) {
          if (!(m * ctx.emb[b] * minv == ctx.emb[perm_rs[b]])) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) return m;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

/// Torus elements diag(u^k) with k an integral multiple of the diagonal of `h`.
inline QMat torus_power(const QMat& h, const Q& u) {
  const int n = static_cast<int>(h.rows());
  mpz_class l = 1;
  for (int i = 0; i < n; ++i) l = lcm(l, h(i, i).get_den());
  QMat out = qidentity(n);
  for (int i = 0; i < n; ++i) {
    Q k = h(i, i) * Q(l);
    long e = k.get_num().get_si();
    Q p = 1;
    for (long j = 0; j < (e < 0 ? -e : e); ++j) p *= u;
    out(i, i) = e < 0 ? inv(p) : p;
  }
  return out;
}

inline bool is_diagonal(const QMat& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && !is_zero(a(i, j))) return false;
  return true;
}

}  // namespace detail

struct Model {
  MatrixGroupContext ctx;
  SliceData sd;
  ShortGrading sg;
  RContext R;
  QMat s, sinv;
  std::vector<QMat> n_basis, nbar_basis;      // (g)_{<0}, (g)_{>0}
  std::vector<QMat> z_cartan, z_roots;        // (z_e)_0 split by weight
  std::vector<QMat> nz_basis, nz_dual;        // basis of n + z, trace-dual basis inside nbar + z

  struct Point {
    QMat n, z, m, g;  // m = n z, g = m s^-1
  };
  Point sample(std::mt19937_64& rng) const;
  Point point(const QMat& n, const QMat& z) const { return {n, z, n * z, n * z * sinv}; }
};

/// SL(n) with beta = a_{n-1}, s = s_beta and its signed permutation representative.
inline Model make_model(int n = 3) {
  if (n < 2) throw std::invalid_argument("SL(n) needs n >= 2");
  auto rs = build_root_system('A', n - 1);
  int beta = select_beta(rs);
  SliceData sd = slice_for(rs, beta);
  ChevalleyBasis cb = build_chevalley(rs).signed_variant(sd.positive);
  std::vector<std::pair<int, int>> diag;
  for (int i = 0; i < n; ++i) diag.emplace_back(i, i);
  Model m{make_sl_context(cb, diag), sd, short_grading(beta, cb), {}, {}, {}, {}, {}, {}, {}, {}, {}};
  m.R = make_rcontext(m.ctx, build_r(sd, m.ctx.cb));
  auto rep = detail::signed_permutation_rep(m.ctx, sd);
  if (!rep) throw std::logic_error("no signed permutation representative of s_beta");
  m.s = *rep;
  m.sinv = *inverse(m.s);
  for (int a = 0; a < rs.num_roots(); ++a) {
    if (m.sg.grade[a] < 0) m.n_basis.push_back(m.ctx.emb[a]);
    if (m.sg.grade[a] > 0) m.nbar_basis.push_back(m.ctx.emb[a]);
  }
  auto cg = centralizer_grading(m.sg, m.ctx.cb);
  for (const auto& v : cg.z0) {
    QMat x = m.ctx.matrix_of(v);
    if (detail::is_diagonal(x)) {
      m.z_cartan.push_back(x);
    } else {
      auto sup = m.ctx.cb.root_support(v);
      if (sup.size() != 1) throw std::logic_error("z basis vector is not a weight vector");
      m.z_roots.push_back(x);
    }
  }
  for (const auto& x : m.n_basis) m.nz_basis.push_back(x);
  for (const auto& x : m.z_cartan) m.nz_basis.push_back(x);
  for (const auto& x : m.z_roots) m.nz_basis.push_back(x);
  std::vector<QMat> cand = m.nbar_basis;
  for (const auto& x : m.z_cartan) cand.push_back(x);
  for (const auto& x : m.z_roots) cand.push_back(x);
  const std::size_t d = m.nz_basis.size();
  QMat gram(d, d, Q(0));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) gram(k, l) = trace(cand[k] * m.nz_basis[l]);
  auto gi = inverse(gram);
  if (!gi) throw std::logic_error("nbar + z does not pair with n + z");
  for (std::size_t l = 0; l < d; ++l) {
    QMat x(n, n, Q(0));
    for (std::size_t k = 0; k < d; ++k) x = x + (*gi)(l, k) * cand[k];
    m.nz_dual.push_back(x);
  }
  return m;
}

inline Model::Point Model::sample(std::mt19937_64& rng) const {
  QMat nn = exp_nilpotent(random_in_span(n_basis, ctx.n, rng));
  QMat z = qidentity(ctx.n);
  for (const auto& h : z_cartan) z = z * detail::torus_power(h, random_nonzero_rational(rng, 3, 2));
  for (const auto& x : z_roots) z = z * exp_nilpotent(random_rational(rng) * x);
  return point(nn, z);
}

// ---------------------------------------------------------------------------
// Gradients of functions on the group N Z, valued in nbar + z

inline QMat restrict_to_nz(const Model& md, const QMat& ambient) {
  QMat out(md.ctx.n, md.ctx.n, Q(0));
  for (std::size_t l = 0; l < md.nz_basis.size(); ++l) out = out + trace(ambient * md.nz_basis[l]) * md.nz_dual[l];
  return out;
}

struct NZGradients {
  QMat left, right;
};

/// <left, X> = d/dt f(e^{tX} m), <right, X> = d/dt f(m e^{tX}) for X in n + z.
inline NZGradients nz_gradients(const LaurentPoly& f, const Model& md, const QMat& m) {
  return {restrict_to_nz(md, grad_left_at(f, md.ctx, m)), restrict_to_nz(md, grad_right_at(f, md.ctx, m))};
}

/// d/de f(m + e v), exact.
inline Q derivative_along(const LaurentPoly& f, const QMat& m, const QMat& v) {
  std::vector<Dual> pt;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) pt.emplace_back(m(i, j), v(i, j));
  return f.evaluate<Dual>(pt).b;
}

// ---------------------------------------------------------------------------
// The N-invariant extension and its differential

/// phi*(n z s^-1 n') = phi'(n' n z).
inline Q extension_value(const LaurentPoly& f, const QMat& n, const QMat& z, const QMat& nprime) {
  return f.evaluate<Q>(vec(nprime * n * z));
}

struct Factorization {
  QMat n, z, nprime;
};

namespace detail {

/// Integer exponents of the one-parameter torus through h.
inline std::vector<int> torus_exponents(const QMat& h) {
  const int n = static_cast<int>(h.rows());
  mpz_class l = 1;
  for (int i = 0; i < n; ++i) l = lcm(l, h(i, i).get_den());
  std::vector<int> ex(n);
  for (int i = 0; i < n; ++i) ex[i] = static_cast<int>(Q(h(i, i) * Q(l)).get_num().get_si());
  return ex;
}

inline int unit_exponent_index(const std::vector<int>& ex) {
  for (std::size_t i = 0; i < ex.size(); ++i)
    if (ex[i] == 1 || ex[i] == -1) return static_cast<int>(i);
  return -1;
}

}  // namespace detail

/// g = n z s^-1 n' via the block LDU decomposition of s g along the eigenvalues of beta^v.
inline Factorization factor(const Model& md, const QMat& g) {
  if (md.z_cartan.size() != 1 || !md.z_roots.empty()) throw std::invalid_argument("factorization needs z to be a one-dimensional torus");
  const int n = md.ctx.n;
  QMat lam = md.ctx.matrix_of(md.sg.h);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lam(a, a) < lam(b, b); });
  std::vector<std::vector<int>> blocks;
  for (int i : order) {
    if (blocks.empty() || lam(blocks.back()[0], blocks.back()[0]) != lam(i, i)) blocks.emplace_back();
    blocks.back().push_back(i);
  }
  QMat a = md.s * g, lo = qidentity(n), d(n, n, Q(0)), up = qidentity(n);
  auto sub = [](const QMat& m, const std::vector<int>& r, const std::vector<int>& c) {
    QMat out(r.size(), c.size(), Q(0));
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = m(r[i], c[j]);
    return out;
  };
  auto put = [](QMat& m, const std::vector<int>& r, const std::vector<int>& c, const QMat& x) {
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) m(r[i], c[j]) = x(i, j);
  };
  const std::size_t nb = blocks.size();
  for (std::size_t k = 0; k < nb; ++k) {
    QMat dk = sub(a, blocks[k], blocks[k]);
    auto dinv = inverse(dk);
    if (!dinv) throw std::invalid_argument("point is not in N Z s^-1 N: singular block");
    put(d, blocks[k], blocks[k], dk);
    for (std::size_t i = k + 1; i < nb; ++i) {
      put(lo, blocks[i], blocks[k], sub(a, blocks[i], blocks[k]) * *dinv);
      put(up, blocks[k], blocks[i], *dinv * sub(a, blocks[k], blocks[i]));
    }
    for (std::size_t i = k + 1; i < nb; ++i)
      for (std::size_t j = k + 1; j < nb; ++j)
        put(a, blocks[i], blocks[j], sub(a, blocks[i], blocks[j]) - sub(a, blocks[i], blocks[k]) * *dinv * sub(a, blocks[k], blocks[j]));
  }
  auto ex = detail::torus_exponents(md.z_cartan[0]);
  int j0 = detail::unit_exponent_index(ex);
  if (j0 < 0) throw std::logic_error("no diagonal entry recovers the torus coordinate");
  Q u = ex[j0] == 1 ? d(j0, j0) : inv(d(j0, j0));
  if (is_zero(u) || d != detail::torus_power(md.z_cartan[0], u)) throw std::invalid_argument("point is not in N Z s^-1 N: Levi part is not in Z");
  return {md.sinv * lo * md.s, d, up};
}

/// phi* at an arbitrary point of N Z s^-1 N.
inline Q extension_at(const LaurentPoly& f, const Model& md, const QMat& g) {
  auto fz = factor(md, g);
  return extension_value(f, fz.n, fz.z, fz.nprime);
}

/// Tangent directions of N Z s^-1 N at g = m s^-1 (left trivialization): n, Ad(g^-1) n, Ad(s) z.
struct Tangent {
  std::vector<QMat> dirs;
  std::vector<QMat> curve;  // first-order variation of m' = n' n z along each direction
};

inline Tangent tangent_at(const Model& md, const Model::Point& p) {
  Tangent t;
  QMat ginv = *inverse(p.g);
  for (const auto& x : md.n_basis) {
    t.dirs.push_back(x);
    t.curve.push_back(x * p.m);
  }
  for (const auto& x : md.n_basis) {
    t.dirs.push_back(ginv * x * p.g);
    t.curve.push_back(x * p.m);
  }
  for (const auto& y : md.z_cartan) {
    t.dirs.push_back(md.s * y * md.sinv);
    t.curve.push_back(p.m * y);
  }
  for (const auto& y : md.z_roots) {
    t.dirs.push_back(md.s * y * md.sinv);
    t.curve.push_back(p.m * y);
  }
  return t;
}

/// Exact derivative of phi* along g e^{tX} for X tangent to N Z s^-1 N.
inline Q extension_derivative(const LaurentPoly& f, const Model& md, const Model::Point& p, const QMat& x) {
  Tangent t = tangent_at(md, p);
  std::vector<QVec> cols;
  for (const auto& d : t.dirs) cols.push_back(md.ctx.coords_of(d));
  QMat a = QMat::from_columns(cols, md.ctx.cb.dim, Q(0));
  auto c = solve(a, md.ctx.coords_of(x));
  if (!c) throw std::invalid_argument("direction is not tangent to N Z s^-1 N");
  QMat v(md.ctx.n, md.ctx.n, Q(0));
  for (std::size_t k = 0; k < t.dirs.size(); ++k) v = v + (*c)[k] * t.curve[k];
  return derivative_along(f, p.m, v);
}

/// P_nbar grad phi' + Ad(s_formula) grad' phi'.
inline QMat differential_formula(const LaurentPoly& f, const Model& md, const Model::Point& p,
                                 const std::optional<QMat>& s_formula = std::nullopt) {
  auto gr = nz_gradients(f, md, p.m);
  QMat pn(md.ctx.n, md.ctx.n, Q(0));
  QVec c = md.ctx.coords_of(gr.left);
  for (int a = 0; a < md.ctx.cb.nroots; ++a)
    if (md.sg.grade[a] > 0) pn = pn + c[a] * md.ctx.emb[a];
  const QMat& s = s_formula ? *s_formula : md.s;
  return pn + s * gr.right * *inverse(s);
}

struct DifferentialReport {
  bool pass = true;
  int directions = 0;
  std::string witness;
};

/// Pairs the formula with the basis directions e_i (n), f_i (z), e_i^* (nbar).
inline DifferentialReport differential_check(const LaurentPoly& f, const Model& md, const Model::Point& p,
                                             const std::optional<QMat>& s_formula = std::nullopt) {
  DifferentialReport rep;
  QMat d = differential_formula(f, md, p, s_formula);
  std::vector<QMat> dirs = md.n_basis;
  for (const auto& y : md.z_cartan) dirs.push_back(y);
  for (const auto& y : md.z_roots) dirs.push_back(y);
  for (const auto& x : md.nbar_basis) dirs.push_back(x);
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    Q lhs = trace(d * dirs[k]);
    Q rhs = extension_derivative(f, md, p, dirs[k]);
    ++rep.directions;
    if (lhs != rhs && rep.pass) {
      rep.pass = false;
      rep.witness = "direction " + std::to_string(k) + ": " + lhs.get_str() + " vs " + rhs.get_str();
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Brackets on the slice

/// The eight terms of the slice bracket at m = n z, in display order.
inline std::array<Q, 8> str_terms(const LaurentPoly& phi, const LaurentPoly& psi, const Model& md, const QMat& m) {
  auto a = nz_gradients(phi, md, m), b = nz_gradients(psi, md, m);
  auto r = [&](const QMat& op, const QMat& x) { return apply_op(op, x); };
  QMat ads_b_left = md.s * b.left * md.sinv, ads_b_right = md.s * b.right * md.sinv;
  QMat minv = *inverse(m);
  return {pair_at(r(md.R.r, a.left), b.left),
          pair_at(r(md.R.r, a.right), b.right),
          Q(-2) * pair_at(r(md.R.rminus, a.right), b.left),
          Q(-2) * pair_at(r(md.R.rplus, a.left), b.right),
          Q(-2) * pair_at(a.right, ads_b_left),
          Q(2) * pair_at(a.left, ads_b_right),
          pair_at(m * a.right * minv, b.left),
          Q(-1) * pair_at(a.left, m * b.right * minv)};
}

inline Q str_bracket(const LaurentPoly& phi, const LaurentPoly& psi, const Model& md, const QMat& m) {
  Q acc = 0;
  for (const auto& t : str_terms(phi, psi, md, m)) acc += t;
  return acc;
}

/// The tau form with the gradients of N Z in place of those of G.
inline Q tau_on_nz(const LaurentPoly& phi, const LaurentPoly& psi, const Model& md, const QMat& m) {
  auto a = nz_gradients(phi, md, m), b = nz_gradients(psi, md, m);
  return pair_at(apply_op(md.R.r, a.left), b.left) + pair_at(apply_op(md.R.r, a.right), b.right) -
         Q(2) * pair_at(apply_op(md.R.rplus, a.right), b.left) - Q(2) * pair_at(apply_op(md.R.rminus, a.left), b.right);
}

/// A covector on g representing d phi* at g (left trivialization), plus the conormal directions.
struct Covector {
  QMat xi;
  std::vector<QMat> conormal;
};

inline Covector extension_covector(const LaurentPoly& f, const Model& md, const Model::Point& p) {
  Tangent t = tangent_at(md, p);
  const int dim = md.ctx.cb.dim;
  QMat a(t.dirs.size(), dim, Q(0));
  QVec rhs;
  for (std::size_t j = 0; j < t.dirs.size(); ++j) {
    for (int b = 0; b < dim; ++b) a(j, b) = trace(md.ctx.emb[b] * t.dirs[j]);
    rhs.push_back(derivative_along(f, p.m, t.curve[j]));
  }
  auto c = solve(a, rhs);
  if (!c) throw std::logic_error("no covector extends the differential");
  Covector out{md.ctx.matrix_of(*c), {}};
  for (const auto& v : nullspace(a)) out.conormal.push_back(md.ctx.matrix_of(v));
  return out;
}

/// tau at g for covectors given by their right gradients.
inline Q tau_at(const QMat& xf, const QMat& xh, const RContext& R, const QMat& g) {
  QMat ginv = *inverse(g);
  QMat lf = g * xf * ginv, lh = g * xh * ginv;
  return pair_at(apply_op(R.r, lf), lh) + pair_at(apply_op(R.r, xf), xh) - Q(2) * pair_at(apply_op(R.rplus, xf), lh) -
         Q(2) * pair_at(apply_op(R.rminus, lf), xh);
}

/// Reduced bracket {phi, psi}(n z s^-1) through tau and representatives of d phi*, d psi*.
inline Q reduced_bracket_at(const LaurentPoly& phi, const LaurentPoly& psi, const Model& md, const Model::Point& p) {
  return tau_at(extension_covector(phi, md, p).xi, extension_covector(psi, md, p).xi, md.R, p.g);
}

/// Entries of m = n z that are not constant on N Z.
inline std::vector<LaurentPoly> coordinate_functions(const Model& md) {
  std::mt19937_64 rng(99);
  auto p = md.sample(rng), q = md.sample(rng);
  std::vector<LaurentPoly> out;
  for (int i = 0; i < md.ctx.n; ++i)
    for (int j = 0; j < md.ctx.n; ++j)
      if (p.m(i, j) != q.m(i, j)) out.push_back(md.ctx.g(i, j));
  return out;
}

/// The first four terms of the slice bracket minus the tau form on N Z.
inline Q four_term_defect(const LaurentPoly& phi, const LaurentPoly& psi, const Model& md, const QMat& m) {
  auto t = str_terms(phi, psi, md, m);
  return t[0] + t[1] + t[2] + t[3] - tau_on_nz(phi, psi, md, m);
}

// ---------------------------------------------------------------------------
// Closed form of the slice bracket in coordinates of N Z

/// m(p, u) = exp(sum p_i n_i) torus(u) and the chart inverting it, for a one-dimensional torus z.
struct SymbolicChart {
  VarsPtr vars;                    // p1..pk, u
  PMat m, minv;                    // in vars
  std::vector<LaurentPoly> chart;  // p_i and u as functions of g
};

namespace detail {

inline PMat pm_const(const VarsPtr& vars, const QMat& a) {
  PMat out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.push_back(LaurentPoly::constant(vars, a(i, j)));
  return out;
}

inline PMat pm_add(PMat a, const PMat& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

inline PMat pm_scale(const Q& c, PMat a) {
  for (auto& x : a) x = c * x;
  return a;
}

/// exp or log of a nilpotent polynomial matrix, from the truncated series.
inline PMat pm_series(const PMat& x, int n, bool log) {
  PMat out = pm_const(x[0].vars(), qidentity(n)), pw = out;
  if (log) out = pm_scale(Q(0), out);
  Q fact = 1;
  for (int k = 1; k < n; ++k) {
    pw = pm_mul(pw, x, n);
    fact *= k;
    Q c = log ? Q(k % 2 == 1 ? 1 : -1) / Q(k) : Q(1) / fact;
    out = pm_add(out, pm_scale(c, pw));
  }
  return out;
}

inline PMat pm_substitute(const PMat& a, const std::vector<LaurentPoly>& images) {
  PMat out;
  for (const auto& x : a) out.push_back(x.substitute(images));
  return out;
}

}  // namespace detail

inline SymbolicChart symbolic_chart(const Model& md) {
  if (md.z_cartan.size() != 1 || !md.z_roots.empty()) throw std::invalid_argument("closed form needs z to be a one-dimensional torus");
  const int n = md.ctx.n, k = static_cast<int>(md.n_basis.size());
  const QMat& h = md.z_cartan[0];
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("p" + std::to_string(i + 1));
  names.push_back("u");
  SymbolicChart sc;
  sc.vars = make_vars(names, {"u"});
  auto var = [&](int i) { return LaurentPoly::variable(sc.vars, i); };
  PMat x = detail::pm_const(sc.vars, QMat(n, n, Q(0)));
  for (int i = 0; i < k; ++i) {
    PMat b = detail::pm_const(sc.vars, md.n_basis[i]);
    for (auto& e : b) e = e * var(i);
    x = detail::pm_add(x, b);
  }
  auto ex = detail::torus_exponents(h);
  PMat z = detail::pm_const(sc.vars, QMat(n, n, Q(0))), zinv = z;
  for (int i = 0; i < n; ++i) {
    z[i * n + i] = var(k).pow(ex[i]);
    zinv[i * n + i] = var(k).pow(-ex[i]);
  }
  sc.m = pm_mul(detail::pm_series(x, n, false), z, n);
  sc.minv = pm_mul(zinv, detail::pm_series(detail::pm_scale(Q(-1), x), n, false), n);

  int j0 = detail::unit_exponent_index(ex);
  if (j0 < 0 || !md.ctx.vars->invertible[md.ctx.var(j0, j0)]) throw std::logic_error("no diagonal entry recovers the torus coordinate");
  LaurentPoly u = md.ctx.g(j0, j0).pow(ex[j0]);
  PMat nn = pm_zero(md.ctx);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) nn[i * n + j] = md.ctx.g(i, j) * u.pow(-ex[j]);
  PMat lg = detail::pm_series(detail::pm_add(nn, detail::pm_scale(Q(-1), pm_from(md.ctx, qidentity(n)))), n, true);
  for (int i = 0; i < k; ++i) sc.chart.push_back(pm_pair(lg, pm_from(md.ctx, md.nz_dual[i]), n));
  sc.chart.push_back(u);
  return sc;
}

/// chart(m(p, u)) = (p, u) as Laurent polynomials.
inline bool chart_round_trip(const SymbolicChart& sc) {
  for (std::size_t i = 0; i < sc.chart.size(); ++i)
    if (sc.chart[i].substitute(sc.m) != LaurentPoly::variable(sc.vars, static_cast<int>(i))) return false;
  return true;
}

/// The eight-term bracket with every gradient expanded symbolically on N Z.
inline LaurentPoly str_symbolic(const LaurentPoly& phi, const LaurentPoly& psi, const Model& md, const SymbolicChart& sc) {
  const int n = md.ctx.n;
  auto restrict = [&](const PMat& g) {
    PMat amb = detail::pm_substitute(g, sc.m);
    PMat out = detail::pm_const(sc.vars, QMat(n, n, Q(0)));
    for (std::size_t l = 0; l < md.nz_basis.size(); ++l) {
      LaurentPoly c = pm_pair(amb, detail::pm_const(sc.vars, md.nz_basis[l]), n);
      PMat d = detail::pm_const(sc.vars, md.nz_dual[l]);
      for (auto& e : d) e = e * c;
      out = detail::pm_add(out, d);
    }
    return out;
  };
  PMat al = restrict(grad_left(phi, md.ctx)), ar = restrict(grad_right(phi, md.ctx));
  PMat bl = restrict(grad_left(psi, md.ctx)), br = restrict(grad_right(psi, md.ctx));
  PMat s = detail::pm_const(sc.vars, md.s), sinv = detail::pm_const(sc.vars, md.sinv);
  auto ad = [&](const PMat& g, const PMat& x, const PMat& ginv) { return pm_mul(pm_mul(g, x, n), ginv, n); };
  LaurentPoly acc = pm_pair(pm_apply(md.R.r, al), bl, n) + pm_pair(pm_apply(md.R.r, ar), br, n);
  acc -= Q(2) * pm_pair(pm_apply(md.R.rminus, ar), bl, n);
  acc -= Q(2) * pm_pair(pm_apply(md.R.rplus, al), br, n);
  acc -= Q(2) * pm_pair(ar, ad(s, bl, sinv), n);
  acc += Q(2) * pm_pair(al, ad(s, br, sinv), n);
  acc += pm_pair(ad(sc.m, ar, sc.minv), bl, n);
  acc -= pm_pair(al, ad(sc.m, br, sc.minv), n);
  return acc;
}

/// Brackets of the chart coordinates p_i, u.
inline PoissonTable symbolic_table(const Model& md, const SymbolicChart& sc) {
  PoissonTable t(sc.vars);
  for (std::size_t a = 0; a < sc.chart.size(); ++a)
    for (std::size_t b = a + 1; b < sc.chart.size(); ++b)
      t.set(static_cast<int>(a), static_cast<int>(b), str_symbolic(sc.chart[a], sc.chart[b], md, sc));
  return t;
}

}  // namespace wslice::longroot
