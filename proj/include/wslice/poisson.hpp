#pragma once

// Function algebra on SL(n) matrix entries, gradients, the Sklyanin bracket and
// the dual bracket on G_*, Hamiltonian fields and slice checks.

#include <array>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wslice/laurent.hpp"
#include "wslice/liealg.hpp"
#include "wslice/linalg.hpp"
#include "wslice/rmatrix.hpp"

namespace wslice {

using PMat = std::vector<LaurentPoly>;  // n×n, row-major

inline QMat elementary(int n, int i, int j) {
  QMat e(n, n, Q(0));
  e(i, j) = 1;
  return e;
}

inline QMat commutator(const QMat& a, const QMat& b) { return a * b - b * a; }

inline Q trace(const QMat& a) {
  Q t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline QVec vec(const QMat& a) {
  QVec v;
  v.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
  return v;
}

inline QMat unvec(const QVec& v, int n) {
  QMat a(n, n, Q(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = v[i * n + j];
  return a;
}

// ---------------------------------------------------------------------------
// Matrix realization of sl_n

struct MatrixGroupContext {
  int n = 0;
  ChevalleyBasis cb;
  std::vector<QMat> emb;  // image of each basis element
  VarsPtr vars;           // g_ij, index i*n + j
  Q form_scale;           // tr(XY) = form_scale * B(X, Y)
  QMat from_coords;       // n² × dim
  QMat to_coords;         // dim × n², kills the scalar part

  LaurentPoly g(int i, int j) const { return LaurentPoly::variable(vars, i * n + j); }
  LaurentPoly constant(const Q& c) const { return LaurentPoly::constant(vars, c); }
  int var(int i, int j) const { return i * n + j; }

  QMat matrix_of(const QVec& x) const { return unvec(from_coords.apply(x), n); }
  QVec coords_of(const QMat& a) const { return to_coords.apply(vec(a)); }
  /// An operator on g acting on vec(X) for n×n matrices X (scalar part dropped).
  QMat lift(const GOperator& op) const { return from_coords * op * to_coords; }
};

/// Matrix images of the basis `cb` of type A_{n-1}: e_{α_i} = E_{i,i+1},
/// e_{-α_i} = c·E_{i+1,i} with c the basis' coroot scale, the rest by brackets.
inline std::vector<QMat> sl_embedding(const ChevalleyBasis& cb) {
  const RootSystemData& rs = cb.rs;
  const int n = rs.rank + 1, nr = cb.nroots;
  std::vector<QMat> emb(cb.dim);
  std::vector<bool> done(cb.dim, false);
  std::vector<int> order(nr);
  for (int a = 0; a < nr; ++a) order[a] = a;
  auto height = [&](int a) {
    int h = 0;
    for (int x : rs.roots[a]) h += std::abs(x);
    return h;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return height(a) < height(b); });
  for (int a : order) {
    const IVec& root = rs.roots[a];
    if (height(a) == 1) {
      int i = 0;
      while (root[i] == 0) ++i;
      emb[a] = root[i] > 0 ? elementary(n, i, i + 1) : Q(cb.coroot_scale(a)) * elementary(n, i + 1, i);
      done[a] = true;
      continue;
    }
    bool found = false;
    for (int i = 0; i < rs.rank && !found; ++i) {
      int sgn = root[i] > 0 ? 1 : (root[i] < 0 ? -1 : 0);
      if (sgn == 0) continue;
      IVec simple = rs.simple(i), rest = root;
      for (int k = 0; k < rs.rank; ++k) {
        simple[k] *= sgn;
        rest[k] -= simple[k];
      }
      int ai = rs.find(simple), b = rs.find(rest);
      if (b < 0 || !done[b]) continue;
      int nab = cb.N(ai, b);
      if (nab == 0) continue;
      emb[a] = make_q(1, nab) * commutator(emb[ai], emb[b]);
      done[a] = found = true;
    }
    if (!found) throw std::logic_error("cannot reach root " + root_label(root) + " from simple roots");
  }
  for (int i = 0; i < rs.rank; ++i) {
    int a = rs.find(rs.simple(i));
    emb[cb.cartan_index(i)] = make_q(1, cb.coroot_scale(a)) * commutator(emb[a], emb[rs.neg(a)]);
  }
  return emb;
}

/// True when the images satisfy the structure constants of `cb`.
inline bool embedding_respects_brackets(const ChevalleyBasis& cb, const std::vector<QMat>& emb) {
  const int n = static_cast<int>(emb[0].rows());
  for (int i = 0; i < cb.dim; ++i)
    for (int j = 0; j < cb.dim; ++j) {
      QMat want(n, n, Q(0));
      for (const auto& t : cb.bracket_basis(i, j)) want = want + Q(t.coef) * emb[t.idx];
      if (!(commutator(emb[i], emb[j]) == want)) return false;
    }
  return true;
}

/// Context for SL(n) with the basis `cb` (type A_{n-1}); entries in `invertible` are Laurent variables.
inline MatrixGroupContext make_sl_context(const ChevalleyBasis& cb, const std::vector<std::pair<int, int>>& invertible = {}) {
  if (cb.rs.type_label != 'A') throw std::invalid_argument("matrix realization is implemented for type A only");
  MatrixGroupContext ctx;
  ctx.n = cb.rs.rank + 1;
  ctx.cb = cb;
  ctx.emb = sl_embedding(cb);
  if (!embedding_respects_brackets(cb, ctx.emb)) throw std::logic_error("matrix images violate the structure constants");
  const int n = ctx.n, dim = cb.dim;
  std::vector<std::string> names, inv;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) names.push_back("g" + std::to_string(i + 1) + std::to_string(j + 1));
  for (auto [i, j] : invertible) inv.push_back(names.at(i * n + j));
  ctx.vars = make_vars(names, inv);

  std::vector<QVec> cols;
  for (const auto& m : ctx.emb) cols.push_back(vec(m));
  ctx.from_coords = QMat::from_columns(cols, n * n, Q(0));
  QMat ft = ctx.from_coords.transpose();
  auto gram_inv = inverse(ft * ctx.from_coords);
  if (!gram_inv) throw std::logic_error("matrix images are linearly dependent");
  ctx.to_coords = *gram_inv * ft;

  // tr(XY) against B on a pair with B != 0
  int a = 0, na = cb.rs.neg(0);
  Q b = cb.form()(a, na);
  ctx.form_scale = trace(ctx.emb[a] * ctx.emb[na]) / b;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (trace(ctx.emb[i] * ctx.emb[j]) != ctx.form_scale * cb.form()(i, j))
        throw std::logic_error("trace form is not proportional to the invariant form");
  return ctx;
}

// ---------------------------------------------------------------------------
// Polynomial matrices

inline PMat pm_zero(const MatrixGroupContext& ctx) { return PMat(ctx.n * ctx.n, LaurentPoly(ctx.vars)); }

inline PMat pm_coords(const MatrixGroupContext& ctx) {
  PMat g;
  for (int k = 0; k < ctx.n * ctx.n; ++k) g.push_back(LaurentPoly::variable(ctx.vars, k));
  return g;
}

inline PMat pm_from(const MatrixGroupContext& ctx, const QMat& a) {
  PMat out = pm_zero(ctx);
  for (int i = 0; i < ctx.n; ++i)
    for (int j = 0; j < ctx.n; ++j) out[i * ctx.n + j] = ctx.constant(a(i, j));
  return out;
}

inline PMat pm_mul(const PMat& a, const PMat& b, int n) {
  PMat out(n * n, LaurentPoly(a[0].vars()));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i * n + k].is_zero_poly()) continue;
      for (int j = 0; j < n; ++j)
        if (!b[k * n + j].is_zero_poly()) out[i * n + j] += a[i * n + k] * b[k * n + j];
    }
  return out;
}

inline PMat pm_traceless(PMat a, int n) {
  LaurentPoly tr(a[0].vars());
  for (int i = 0; i < n; ++i) tr += a[i * n + i];
  LaurentPoly shift = make_q(1, n) * tr;
  for (int i = 0; i < n; ++i) a[i * n + i] -= shift;
  return a;
}

/// Operator on vec(X) applied to a polynomial matrix.
inline PMat pm_apply(const QMat& m, const PMat& x) {
  PMat out(x.size(), LaurentPoly(x[0].vars()));
  for (std::size_t p = 0; p < m.rows(); ++p)
    for (std::size_t q = 0; q < m.cols(); ++q)
      if (!is_zero(m(p, q)) && !x[q].is_zero_poly()) out[p] += m(p, q) * x[q];
  return out;
}

/// Trace pairing tr(AB).
inline LaurentPoly pm_pair(const PMat& a, const PMat& b, int n) {
  LaurentPoly acc(a[0].vars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!a[i * n + j].is_zero_poly() && !b[j * n + i].is_zero_poly()) acc += a[i * n + j] * b[j * n + i];
  return acc;
}

inline QMat pm_eval(const PMat& a, const QVec& point, int n) {
  QMat out(n, n, Q(0));
  for (int k = 0; k < n * n; ++k) out(k / n, k % n) = a[k].evaluate<Q>(point);
  return out;
}

// ---------------------------------------------------------------------------
// Gradients

/// D with D_ji = ∂f/∂g_ij.
inline PMat partials_transposed(const LaurentPoly& f, const MatrixGroupContext& ctx) {
  if (f.vars() && f.vars() != ctx.vars) throw std::invalid_argument("function is not in the coordinate ring of this context");
  const int n = ctx.n;
  PMat d = pm_zero(ctx);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[j * n + i] = f.derivative(i * n + j);
  return d;
}

/// ⟨ξ, ∇f(g)⟩ = d/dt f(e^{tξ} g): ∇f = traceless(g·D).
inline PMat grad_left(const LaurentPoly& f, const MatrixGroupContext& ctx) {
  return pm_traceless(pm_mul(pm_coords(ctx), partials_transposed(f, ctx), ctx.n), ctx.n);
}

/// ⟨ξ, ∇′f(g)⟩ = d/dt f(g e^{tξ}): ∇′f = traceless(D·g).
inline PMat grad_right(const LaurentPoly& f, const MatrixGroupContext& ctx) {
  return pm_traceless(pm_mul(partials_transposed(f, ctx), pm_coords(ctx), ctx.n), ctx.n);
}

// ---------------------------------------------------------------------------
// r-matrix on matrices and the two brackets

struct RContext {
  QMat r, rplus, rminus;  // acting on vec(X)
};

inline RContext make_rcontext(const MatrixGroupContext& ctx, const GOperator& r) {
  QMat id = qidentity(ctx.cb.dim);
  return {ctx.lift(r), ctx.lift(make_q(1, 2) * (r + id)), ctx.lift(make_q(1, 2) * (r - id))};
}

inline RContext make_rcontext(const MatrixGroupContext& ctx, const RMatrixData& R) { return make_rcontext(ctx, R.r); }

/// r = P_upper - P_lower on the root vectors, zero on the diagonal.
inline RContext standard_rcontext(const MatrixGroupContext& ctx) {
  std::vector<bool> lower = standard_positive(ctx.cb.rs);
  lower.flip();
  return make_rcontext(ctx, standard_r(ctx.cb, lower));
}

/// r = P_lower - P_upper: the slice convention where k is the nilradical of the Borel of -Γ.
inline RContext lower_rcontext(const MatrixGroupContext& ctx) {
  return make_rcontext(ctx, standard_r(ctx.cb, standard_positive(ctx.cb.rs)));
}

struct Gradients {
  PMat left, right;
};

inline Gradients gradients(const LaurentPoly& f, const MatrixGroupContext& ctx) {
  return {grad_left(f, ctx), grad_right(f, ctx)};
}

/// Sklyanin bracket ½⟨r∇f, ∇h⟩ − ½⟨r∇′f, ∇′h⟩.
inline LaurentPoly bracket_pbr(const Gradients& f, const Gradients& h, const MatrixGroupContext& ctx, const RContext& R) {
  const int n = ctx.n;
  return make_q(1, 2) * (pm_pair(pm_apply(R.r, f.left), h.left, n) - pm_pair(pm_apply(R.r, f.right), h.right, n));
}

inline LaurentPoly bracket_pbr(const LaurentPoly& f, const LaurentPoly& h, const MatrixGroupContext& ctx, const RContext& R) {
  return bracket_pbr(gradients(f, ctx), gradients(h, ctx), ctx, R);
}

/// Bracket on G_*: ⟨r∇f,∇h⟩ + ⟨r∇′f,∇′h⟩ − 2⟨r₊∇′f,∇h⟩ − 2⟨r₋∇f,∇′h⟩.
inline LaurentPoly bracket_tau(const Gradients& f, const Gradients& h, const MatrixGroupContext& ctx, const RContext& R) {
  const int n = ctx.n;
  LaurentPoly out = pm_pair(pm_apply(R.r, f.left), h.left, n);
  out += pm_pair(pm_apply(R.r, f.right), h.right, n);
  out -= Q(2) * pm_pair(pm_apply(R.rplus, f.right), h.left, n);
  out -= Q(2) * pm_pair(pm_apply(R.rminus, f.left), h.right, n);
  return out;
}

inline LaurentPoly bracket_tau(const LaurentPoly& f, const LaurentPoly& h, const MatrixGroupContext& ctx, const RContext& R) {
  return bracket_tau(gradients(f, ctx), gradients(h, ctx), ctx, R);
}

/// Coordinate bracket {g_ij, g_km} from the closed formula for the standard r-matrix on SL(n) (0-based).
inline LaurentPoly gst_entry(const MatrixGroupContext& ctx, int i, int j, int k, int m) {
  auto eps = [](int a, int b) { return a > b ? 1 : (a == b ? 0 : -1); };
  auto g = [&](int a, int b) { return ctx.g(a, b); };
  LaurentPoly out = Q(eps(i, k) + eps(m, j)) * (g(i, m) * g(k, j));
  if (i == m)
    for (int l = i + 1; l < ctx.n; ++l) out += Q(2) * (g(k, l) * g(l, j));
  if (j == k)
    for (int l = j + 1; l < ctx.n; ++l) out -= Q(2) * (g(i, l) * g(l, m));
  out += Q(int(i == m) - int(j == k)) * (g(i, j) * g(k, m));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation at points

inline QVec point_of(const QMat& g) { return vec(g); }

inline QMat grad_left_at(const LaurentPoly& f, const MatrixGroupContext& ctx, const QMat& g) {
  return pm_eval(grad_left(f, ctx), point_of(g), ctx.n);
}
inline QMat grad_right_at(const LaurentPoly& f, const MatrixGroupContext& ctx, const QMat& g) {
  return pm_eval(grad_right(f, ctx), point_of(g), ctx.n);
}

inline QMat apply_op(const QMat& m, const QMat& x) { return unvec(m.apply(vec(x)), static_cast<int>(x.rows())); }

inline Q pair_at(const QMat& a, const QMat& b) { return trace(a * b); }

/// ξ_f(g) = r₊Z − Ad g (r₋Z), Z = ∇f − ∇′f, in the right trivialization.
inline QMat hamiltonian_field(const LaurentPoly& f, const MatrixGroupContext& ctx, const RContext& R, const QMat& g) {
  QMat z = grad_left_at(f, ctx, g) - grad_right_at(f, ctx, g);
  auto ginv = inverse(g);
  if (!ginv) throw std::domain_error("point is not invertible");
  return apply_op(R.rplus, z) - g * apply_op(R.rminus, z) * *ginv;
}

/// Exact exponential of a nilpotent matrix.
inline QMat exp_nilpotent(const QMat& x) {
  const std::size_t n = x.rows();
  QMat out = qidentity(n), term = qidentity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = make_q(1, static_cast<long>(k)) * (term * x);
    if (term.is_zero_matrix()) return out;
    out = out + term;
  }
  if (!(term * x).is_zero_matrix()) throw std::invalid_argument("matrix is not nilpotent");
  return out;
}

inline Q random_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> a(-num, num), b(1, den);
  return make_q(a(rng), b(rng));
}

inline Q random_nonzero_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
  Q q;
  do q = random_rational(rng, num, den);
  while (is_zero(q));
  return q;
}

/// Random rational point of SL(n) as lower-unipotent · diagonal · upper-unipotent.
inline QMat random_sl_point(int n, std::mt19937_64& rng) {
  QMat l = qidentity(n), u = qidentity(n), d = qidentity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      l(i, j) = random_rational(rng);
      u(j, i) = random_rational(rng);
    }
  Q prod = 1;
  for (int i = 0; i + 1 < n; ++i) {
    d(i, i) = random_nonzero_rational(rng, 3, 3);
    prod *= d(i, i);
  }
  d(n - 1, n - 1) = inv(prod);
  return l * d * u;
}

inline QMat random_in_span(const std::vector<QMat>& basis, int n, std::mt19937_64& rng) {
  QMat x(n, n, Q(0));
  for (const auto& b : basis) x = x + random_rational(rng) * b;
  return x;
}

// ---------------------------------------------------------------------------
// Slice model N_s Z s⁻¹ N in a matrix realization

struct SliceModel {
  const MatrixGroupContext* ctx = nullptr;
  QMat s;                        // representative; points are n_s z s⁻¹ n
  std::vector<QMat> n_basis;     // root vectors spanning n
  std::vector<QMat> ns_basis;    // root vectors spanning n_s
  std::vector<QMat> z_lie;       // Lie algebra of Z
  std::function<QMat(std::mt19937_64&)> sample_z;

  struct Point {
    QMat ns, z, n, g;
  };

  Point sample(std::mt19937_64& rng) const {
    const int dim = ctx->n;
    Point p;
    p.ns = exp_nilpotent(random_in_span(ns_basis, dim, rng));
    p.z = sample_z(rng);
    p.n = exp_nilpotent(random_in_span(n_basis, dim, rng));
    p.g = compose(p.ns, p.z, p.n);
    return p;
  }
  QMat compose(const QMat& ns, const QMat& z, const QMat& n) const { return ns * z * *inverse(s) * n; }
};

struct CheckResult {
  bool pass = true;
  std::string witness;
};

/// f(v g v⁻¹) = f(g) for random v ∈ N and random g ∈ N_s Z s⁻¹ N.
inline CheckResult check_invariance(const LaurentPoly& f, const SliceModel& model, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = model.ctx->n;
  for (int k = 0; k < samples; ++k) {
    auto p = model.sample(rng);
    QMat v = exp_nilpotent(random_in_span(model.n_basis, n, rng));
    QMat conj = v * p.g * *inverse(v);
    Q a = f.evaluate<Q>(point_of(p.g)), b = f.evaluate<Q>(point_of(conj));
    if (a != b) {
      std::ostringstream os;
      os << "sample " << k << ": f(g) = " << a << ", f(v g v^-1) = " << b;
      return {false, os.str()};
    }
  }
  return {true, ""};
}

/// ξ_f(g₀) ∈ n + z + Ad(n_s z s⁻¹) n, decided by exact linear solve.
inline CheckResult check_tangency(const LaurentPoly& f, const SliceModel& model, const RContext& R, const QMat& ns, const QMat& z,
                                  const QMat& nmat, int invariance_samples = 4, std::uint64_t seed = 1) {
  auto inv_check = check_invariance(f, model, invariance_samples, seed);
  if (!inv_check.pass) throw std::invalid_argument("tangency check needs an N-invariant function (" + inv_check.witness + ")");
  const QMat g0 = model.compose(ns, z, nmat);
  const QMat xi = hamiltonian_field(f, *model.ctx, R, g0);
  const QMat a = ns * z * *inverse(model.s);
  const QMat ainv = *inverse(a);
  std::vector<QVec> cols;
  for (const auto& b : model.n_basis) cols.push_back(vec(b));
  for (const auto& b : model.z_lie) cols.push_back(vec(b));
  for (const auto& b : model.n_basis) cols.push_back(vec(a * b * ainv));
  QMat m = QMat::from_columns(cols, vec(xi).size(), Q(0));
  if (solve(m, vec(xi))) return {true, ""};
  std::ostringstream os;
  os << "field not tangent:";
  for (const auto& q : vec(xi)) os << ' ' << q;
  return {false, os.str()};
}

/// Bracket of two extensions restricted through `param` (images of every g_ij in slice coordinates).
inline LaurentPoly reduced_bracket(const LaurentPoly& ext_f, const LaurentPoly& ext_h, const MatrixGroupContext& ctx,
                                   const RContext& R, const std::vector<LaurentPoly>& param) {
  return bracket_tau(ext_f, ext_h, ctx, R).substitute(param);
}

// ---------------------------------------------------------------------------
// Bracket tables on a polynomial ring

class PoissonTable {
 public:
  explicit PoissonTable(VarsPtr vars) : vars_(std::move(vars)) {
    const int k = vars_->size();
    table_.assign(k, std::vector<LaurentPoly>(k, LaurentPoly(vars_)));
  }

  const VarsPtr& vars() const { return vars_; }

  /// Sets {x_i, x_j} = p and {x_j, x_i} = −p.
  void set(int i, int j, const LaurentPoly& p) {
    table_[i][j] = p;
    table_[j][i] = -p;
  }
  void set(const std::string& a, const std::string& b, const LaurentPoly& p) { set(vars_->index(a), vars_->index(b), p); }
  const LaurentPoly& get(int i, int j) const { return table_[i][j]; }

  /// Biderivation extension to arbitrary elements.
  LaurentPoly bracket(const LaurentPoly& f, const LaurentPoly& h) const {
    const int k = vars_->size();
    LaurentPoly out(vars_);
    std::vector<LaurentPoly> dh(k, LaurentPoly(vars_));
    for (int j = 0; j < k; ++j) dh[j] = h.derivative(j);
    for (int i = 0; i < k; ++i) {
      LaurentPoly dfi = f.derivative(i);
      if (dfi.is_zero_poly()) continue;
      for (int j = 0; j < k; ++j)
        if (!dh[j].is_zero_poly() && !table_[i][j].is_zero_poly()) out += dfi * dh[j] * table_[i][j];
    }
    return out;
  }

  bool antisymmetric() const {
    for (std::size_t i = 0; i < table_.size(); ++i)
      for (std::size_t j = 0; j < table_.size(); ++j)
        if (table_[i][j] != -table_[j][i]) return false;
    return true;
  }

  LaurentPoly jacobiator(const LaurentPoly& a, const LaurentPoly& b, const LaurentPoly& c) const {
    return bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
  }

  /// First generator triple with a nonzero cyclic sum.
  std::optional<std::array<int, 3>> jacobi_violation() const {
    const int k = vars_->size();
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int l = j + 1; l < k; ++l) {
          auto x = LaurentPoly::variable(vars_, i), y = LaurentPoly::variable(vars_, j), z = LaurentPoly::variable(vars_, l);
          if (!jacobiator(x, y, z).is_zero_poly()) return std::array<int, 3>{i, j, l};
        }
    return std::nullopt;
  }

 private:
  VarsPtr vars_;
  std::vector<std::vector<LaurentPoly>> table_;
};

/// Coordinate table {g_a, g_b} of a bracket on the matrix entries.
template <class Bracket>
PoissonTable coordinate_table(const MatrixGroupContext& ctx, Bracket&& br) {
  PoissonTable t(ctx.vars);
  const int k = ctx.n * ctx.n;
  std::vector<Gradients> grads;
  for (int a = 0; a < k; ++a) grads.push_back(gradients(LaurentPoly::variable(ctx.vars, a), ctx));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) t.set(a, b, br(grads[a], grads[b]));
  return t;
}

}  // namespace wslice
