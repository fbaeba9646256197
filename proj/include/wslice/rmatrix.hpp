#pragma once

// The operator r = P_k - P_kbar + r0 on g, its verification (skewness,
// modified CYBE, images and kernels of r+-), the dual bracket, the
// embedding of g* into g + g, and the subalgebra test for p = n^perp.
// Also the adjoint action of the normal representative of s.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wslice/liealg.hpp"
#include "wslice/weylslice.hpp"

namespace wslice {

using GOperator = QMat;

struct SparseVec {
  std::vector<std::pair<int, Q>> e;
};

inline SparseVec sparse(const QVec& v) {
  SparseVec s;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!is_zero(v[i])) s.e.emplace_back(i, v[i]);
  return s;
}

inline QVec bracket_sparse(const ChevalleyBasis& cb, const SparseVec& x, const SparseVec& y) {
  QVec out(cb.dim, Q(0));
  for (const auto& [i, a] : x.e)
    for (const auto& [j, b] : y.e) {
      const auto& ts = cb.bracket_basis(i, j);
      if (ts.empty()) continue;
      Q c = a * b;
      for (const auto& t : ts) out[t.idx] += c * t.coef;
    }
  return out;
}

/// s acting on h in the basis of simple coroots.
inline QMat coroot_action(const RootSystemData& rs, const QMat& s_roots) {
  const int r = rs.rank;
  QMat d(r, r, Q(0)), dinv(r, r, Q(0));
  for (int i = 0; i < r; ++i) {
    d(i, i) = Q(2) / rs.sqlen[i];
    dinv(i, i) = rs.sqlen[i] / 2;
  }
  return dinv * s_roots * d;
}

struct RMatrixData {
  GOperator r, rplus, rminus;
  QMat r0;          // on h, simple-coroot coordinates
  QMat s_h;         // s on h, simple-coroot coordinates
  std::vector<QVec> h0, h0perp;
  std::vector<bool> positive;
  std::vector<int> k, kbar;  // basis indices of negative / positive root vectors
};

/// r for the positive system `positive` and Weyl element matrix s (root coordinates).
inline RMatrixData build_r(const ChevalleyBasis& cb, const std::vector<bool>& positive, const QMat& s_roots) {
  const RootSystemData& rs = cb.rs;
  const int n = cb.nroots, r = rs.rank, dim = cb.dim;
  RMatrixData R;
  R.positive = positive;
  R.s_h = coroot_action(rs, s_roots);
  QMat hform(r, r, Q(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) hform(i, j) = cb.form()(n + i, n + j);
  R.h0 = nullspace(R.s_h - qidentity(r));
  if (R.h0.empty()) {
    for (int i = 0; i < r; ++i) {
      QVec e(r, Q(0));
      e[i] = 1;
      R.h0perp.push_back(e);
    }
  } else {
    QMat a = QMat::from_rows(R.h0, r, Q(0)) * hform;
    R.h0perp = nullspace(a);
  }
  R.r0 = QMat(r, r, Q(0));
  if (!R.h0perp.empty()) {
    const std::size_t p = R.h0perp.size();
    std::vector<QVec> cols = R.h0perp;
    for (const auto& v : R.h0) cols.push_back(v);
    QMat c = QMat::from_columns(cols, r, Q(0));
    QMat cinv = *inverse(c);
    QMat sc = cinv * R.s_h * c;  // block diagonal
    QMat a(p, p, Q(0));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) a(i, j) = sc(i, j);
    QMat id = qidentity(p);
    auto inv_part = inverse(id - a);
    if (!inv_part) throw std::logic_error("1 - s singular on the orthogonal complement of h0");
    QMat rp = (id + a) * *inv_part;
    QMat block(r, r, Q(0));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) block(i, j) = rp(i, j);
    R.r0 = c * block * cinv;
  }
  R.r = QMat(dim, dim, Q(0));
  for (int a = 0; a < n; ++a) {
    if (positive[a]) {
      R.r(a, a) = -1;
      R.kbar.push_back(a);
    } else {
      R.r(a, a) = 1;
      R.k.push_back(a);
    }
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) R.r(n + i, n + j) = R.r0(i, j);
  QMat id = qidentity(dim);
  R.rplus = make_q(1, 2) * (R.r + id);
  R.rminus = make_q(1, 2) * (R.r - id);
  return R;
}

inline RMatrixData build_r(const SliceData& sd, const ChevalleyBasis& cb) {
  return build_r(cb, sd.positive, sd.s.matrix());
}

/// The standard r-matrix P_k - P_kbar (s = -1 on h).
inline GOperator standard_r(const ChevalleyBasis& cb, const std::vector<bool>& positive) {
  GOperator r(cb.dim, cb.dim, Q(0));
  for (int a = 0; a < cb.nroots; ++a) r(a, a) = positive[a] ? -1 : 1;
  return r;
}

inline bool check_skew(const GOperator& r, const ChevalleyBasis& cb) {
  QMat lhs = r.transpose() * cb.form() + cb.form() * r;
  return lhs.is_zero_matrix();
}

/// First basis pair violating [rX,rY] - r([rX,Y] + [X,rY]) = -[X,Y].
inline std::optional<std::pair<int, int>> check_mcybe(const GOperator& r, const ChevalleyBasis& cb) {
  const int d = cb.dim;
  std::vector<SparseVec> unit(d), rcol(d);
  for (int i = 0; i < d; ++i) {
    unit[i] = sparse(cb.unit(i));
    rcol[i] = sparse(r.column(i));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      QVec a = bracket_sparse(cb, rcol[i], rcol[j]);
      QVec b = bracket_sparse(cb, rcol[i], unit[j]);
      QVec c = bracket_sparse(cb, unit[i], rcol[j]);
      for (int k = 0; k < d; ++k) b[k] += c[k];
      QVec rb = sparse(b).e.empty() ? QVec(d, Q(0)) : r.apply(b);
      QVec xy = bracket_sparse(cb, unit[i], unit[j]);
      for (int k = 0; k < d; ++k)
        if (!is_zero(a[k] - rb[k] + xy[k])) return std::make_pair(i, j);
    }
  return std::nullopt;
}

inline QVec dual_bracket(const QVec& x, const QVec& y, const GOperator& r, const ChevalleyBasis& cb) {
  QVec a = cb.bracket(r.apply(x), y), b = cb.bracket(x, r.apply(y));
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = (a[k] + b[k]) / 2;
  return a;
}

inline std::pair<QVec, QVec> gstar_embed(const QVec& x, const RMatrixData& R) {
  return {R.rplus.apply(x), R.rminus.apply(x)};
}

/// Operator identities r+ - r- = id and r+^* = -r- (adjoint for the form).
inline std::vector<Check> check_rpm_identities(const RMatrixData& R, const ChevalleyBasis& cb) {
  std::vector<Check> out;
  out.push_back({"rpm.difference_is_id", (R.rplus - R.rminus) == qidentity(cb.dim), ""});
  QMat lhs = R.rplus.transpose() * cb.form() + cb.form() * R.rminus;
  out.push_back({"rpm.adjoint", lhs.is_zero_matrix(), ""});
  return out;
}

/// Im r+ = b, Ker r+ = kbar, Im r- = bbar, Ker r- = k.
inline std::vector<Check> check_images_kernels(const RMatrixData& R, const ChevalleyBasis& cb) {
  const int n = cb.nroots, dim = cb.dim;
  auto basis_of = [&](const std::vector<int>& roots, bool with_h) {
    std::vector<QVec> v;
    for (int a : roots) v.push_back(cb.unit(a));
    if (with_h)
      for (int i = 0; i < cb.rs.rank; ++i) v.push_back(cb.unit(n + i));
    return v;
  };
  auto same_space = [&](const std::vector<QVec>& a, const std::vector<QVec>& b) {
    if (span_dim(a, dim) != span_dim(b, dim)) return false;
    for (const auto& v : a)
      if (!in_span(b, v)) return false;
    return true;
  };
  auto image = [&](const QMat& m) {
    std::vector<QVec> cols;
    for (int j = 0; j < dim; ++j) cols.push_back(m.column(j));
    return cols;
  };
  std::vector<Check> out;
  out.push_back({"bnpm.im_rplus_is_b", same_space(image(R.rplus), basis_of(R.k, true)), ""});
  out.push_back({"bnpm.ker_rplus_is_kbar", same_space(nullspace(R.rplus), basis_of(R.kbar, false)), ""});
  out.push_back({"bnpm.im_rminus_is_bbar", same_space(image(R.rminus), basis_of(R.kbar, true)), ""});
  out.push_back({"bnpm.ker_rminus_is_k", same_space(nullspace(R.rminus), basis_of(R.k, false)), ""});
  return out;
}

/// r+ = P_k + (r0 + 1)/2 P_h and r- = -P_kbar + (r0 - 1)/2 P_h.
inline bool check_gstar_description(const RMatrixData& R, const ChevalleyBasis& cb) {
  const int n = cb.nroots, r = cb.rs.rank, dim = cb.dim;
  QMat plus(dim, dim, Q(0)), minus(dim, dim, Q(0));
  for (int a : R.k) plus(a, a) = 1;
  for (int a : R.kbar) minus(a, a) = -1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Q id = i == j ? Q(1) : Q(0);
      plus(n + i, n + j) = (R.r0(i, j) + id) / 2;
      minus(n + i, n + j) = (R.r0(i, j) - id) / 2;
    }
  return plus == R.rplus && minus == R.rminus;
}

/// Basis indices of p = n + l for the slice.
inline std::vector<int> parabolic_basis(const SliceData& sd, const ChevalleyBasis& cb) {
  std::vector<int> p = sd.n_roots;
  p.insert(p.end(), sd.delta0.begin(), sd.delta0.end());
  std::sort(p.begin(), p.end());
  for (int i = 0; i < cb.rs.rank; ++i) p.push_back(cb.nroots + i);
  return p;
}

/// p = n^perp is closed under the bracket of g* embedded in g + g.
/// Returns the first failing pair of basis indices.
inline std::optional<std::pair<int, int>> check_nperp_subalgebra(const std::vector<int>& p_basis, const RMatrixData& R,
                                                                 const ChevalleyBasis& cb) {
  const int dim = cb.dim;
  std::vector<bool> in_p(dim, false);
  for (int i : p_basis) in_p[i] = true;
  auto in_p_vec = [&](const QVec& v) {
    for (int k = 0; k < dim; ++k)
      if (!in_p[k] && !is_zero(v[k])) return false;
    return true;
  };
  std::vector<SparseVec> plus(dim), minus(dim);
  for (int i : p_basis) {
    QVec e = cb.unit(i);
    plus[i] = sparse(R.rplus.apply(e));
    minus[i] = sparse(R.rminus.apply(e));
  }
  for (std::size_t a = 0; a < p_basis.size(); ++a)
    for (std::size_t b = a + 1; b < p_basis.size(); ++b) {
      int i = p_basis[a], j = p_basis[b];
      QVec A = bracket_sparse(cb, plus[i], plus[j]);
      QVec B = bracket_sparse(cb, minus[i], minus[j]);
      QVec W(dim);
      for (int k = 0; k < dim; ++k) W[k] = A[k] - B[k];
      if (!in_p_vec(W)) return std::make_pair(i, j);
      if (!(R.rplus.apply(W) == A) || !(R.rminus.apply(W) == B)) return std::make_pair(i, j);
    }
  return std::nullopt;
}

/// RMatrixData variant with a replaced operator (for mutation tests).
inline RMatrixData with_operator(RMatrixData R, const GOperator& r) {
  QMat id = qidentity(r.rows());
  R.r = r;
  R.rplus = make_q(1, 2) * (r + id);
  R.rminus = make_q(1, 2) * (r - id);
  return R;
}

// ---------------------------------------------------------------------------
// Normal representative

/// Heights of roots with respect to a simple system gamma (positives only; -1 otherwise).
inline std::vector<int> heights_in(const RootSystemData& rs, const std::vector<bool>& pos, const std::vector<int>& gamma) {
  std::vector<int> h(rs.num_roots(), -1);
  for (int g : gamma) h[g] = 1;
  for (int level = 1;; ++level) {
    bool grew = false;
    for (int a = 0; a < rs.num_roots(); ++a) {
      if (h[a] != level) continue;
      for (int g : gamma) {
        IVec v = rs.roots[a];
        for (int k = 0; k < rs.rank; ++k) v[k] += rs.roots[g][k];
        int c = rs.find(v);
        if (c >= 0 && pos[c] && h[c] < 0) {
          h[c] = level + 1;
          grew = true;
        }
      }
    }
    if (!grew) break;
  }
  return h;
}

/// Ad s for the lift of s sending e_{+-a} to e_{+-sa} for a in gamma.
/// The basis should satisfy the sign convention for gamma (a signed variant).
inline QMat normal_rep_adjoint(const ChevalleyBasis& cb, const WeylWord& s, const std::vector<bool>& pos,
                               const std::vector<int>& gamma) {
  const RootSystemData& rs = cb.rs;
  const int n = cb.nroots, r = rs.rank, dim = cb.dim;
  auto perm = s.root_permutation(rs);
  QMat ad(dim, dim, Q(0));
  std::vector<bool> done(n, false);
  for (int g : gamma) {
    ad(perm[g], g) = 1;
    ad(perm[rs.neg(g)], rs.neg(g)) = 1;
    done[g] = done[rs.neg(g)] = true;
  }
  QMat sh = coroot_action(rs, s.matrix());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) ad(n + i, n + j) = sh(i, j);
  auto h = heights_in(rs, pos, gamma);
  int maxh = 0;
  for (int x : h) maxh = std::max(maxh, x);
  for (int level = 2; level <= maxh; ++level)
    for (int c = 0; c < n; ++c) {
      if (h[c] != level) continue;
      for (int sign = 0; sign < 2; ++sign) {
        int target = sign == 0 ? c : rs.neg(c);
        bool placed = false;
        for (int g : gamma) {
          int gg = sign == 0 ? g : rs.neg(g);
          IVec rest = rs.roots[target];
          for (int k = 0; k < r; ++k) rest[k] -= rs.roots[gg][k];
          int b = rs.find(rest);
          if (b < 0 || !done[b]) continue;
          int N = cb.N(gg, b);
          if (N == 0) continue;
          // e_target = [e_gg, e_b] / N.
          QVec img = cb.bracket(ad.column(gg), ad.column(b));
          for (int k = 0; k < dim; ++k) ad(k, target) = img[k] / N;
          placed = true;
          break;
        }
        if (!placed) throw std::logic_error("normal representative propagation failed");
        done[target] = true;
      }
    }
  return ad;
}

/// Whether a matrix is a Lie algebra automorphism on all basis pairs.
inline bool is_automorphism(const QMat& a, const ChevalleyBasis& cb) {
  std::vector<SparseVec> col(cb.dim);
  for (int i = 0; i < cb.dim; ++i) col[i] = sparse(a.column(i));
  for (int i = 0; i < cb.dim; ++i)
    for (int j = i + 1; j < cb.dim; ++j) {
      QVec lhs(cb.dim, Q(0));
      for (const auto& t : cb.bracket_basis(i, j)) {
        for (const auto& [k, v] : col[t.idx].e) lhs[k] += v * t.coef;
      }
      if (!(lhs == bracket_sparse(cb, col[i], col[j]))) return false;
    }
  return true;
}

}  // namespace wslice
