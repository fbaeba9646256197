#pragma once

// Root systems, Weyl words and Chevalley bases over exact rationals.
//
// Roots are integer vectors in simple-root coordinates. The invariant form is
// the Gram matrix G_ij = (a_i, a_j), normalized so that long roots have
// squared length 2. Cartan matrix convention: a_ij = <a_i, a_j^v>.

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wslice/linalg.hpp"
#include "wslice/rational.hpp"

namespace wslice {

class RootSystemData {
 public:
  char type_label = 'A';
  int rank = 0;
  std::vector<IVec> cartan;  // a_ij = <a_i, a_j^v>
  QMat gram;                 // (a_i, a_j)
  QVec sqlen;                // (a_i, a_i)
  std::vector<IVec> roots;   // positives by height, then their negatives
  int npos = 0;

  int num_roots() const { return static_cast<int>(roots.size()); }

  int find(const IVec& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
  }
  bool is_root(const IVec& v) const { return find(v) >= 0; }
  int neg(int i) const { return i < npos ? i + npos : i - npos; }
  bool positive(int i) const { return i < npos; }

  Q ip(const QVec& x, const QVec& y) const { return bilinear(x, gram, y); }
  Q ip(const IVec& x, const IVec& y) const { return ip(to_qvec(x), to_qvec(y)); }
  Q sq(const IVec& a) const { return ip(a, a); }

  /// <b, a^v> = 2(b,a)/(a,a).
  Q pairing(const QVec& b, const IVec& a) const { return Q(2) * ip(b, to_qvec(a)) / sq(a); }
  int pairing(const IVec& b, const IVec& a) const {
    Q p = pairing(to_qvec(b), a);
    if (p.get_den() != 1) throw std::logic_error("non-integral root pairing");
    return static_cast<int>(p.get_num().get_si());
  }

  /// Coroot a^v in the basis of simple coroots.
  IVec coroot(const IVec& a) const {
    IVec c(rank);
    Q aa = sq(a);
    for (int k = 0; k < rank; ++k) {
      Q x = Q(a[k]) * sqlen[k] / aa;
      if (x.get_den() != 1) throw std::logic_error("non-integral coroot");
      c[k] = static_cast<int>(x.get_num().get_si());
    }
    return c;
  }

  static int height(const IVec& a) {
    int h = 0;
    for (int x : a) h += x;
    return h;
  }
  IVec simple(int i) const {
    IVec v(rank, 0);
    v.at(i) = 1;
    return v;
  }
  const IVec& highest_root() const { return roots[npos - 1]; }
  bool is_long(const IVec& a) const { return sq(a) == 2; }

  std::string name() const { return std::string(1, type_label) + std::to_string(rank); }

  void build_index() {
    index_.clear();
    for (int i = 0; i < num_roots(); ++i) index_[roots[i]] = i;
  }

 private:
  std::map<IVec, int> index_;
};

inline bool valid_type(char t, int r) {
  switch (t) {
    case 'A': return r >= 1;
    case 'B': return r >= 2;
    case 'C': return r >= 2;
    case 'D': return r >= 4;
    case 'E': return r >= 6 && r <= 8;
    case 'F': return r == 4;
    case 'G': return r == 2;
    default: return false;
  }
}

/// Dynkin edges (0-based) with the squared root lengths. Bourbaki numbering
/// for B, C, D, F, G; for E_r a chain 1..r-1 with node r attached to node
/// 3, 4, 5 for r = 6, 7, 8.
inline void dynkin_data(char t, int r, std::vector<std::pair<int, int>>& edges, QVec& d) {
  edges.clear();
  d.assign(r, Q(2));
  auto chain = [&](int n) {
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  };
  switch (t) {
    case 'A': chain(r); break;
    case 'B': chain(r); d[r - 1] = 1; break;
    case 'C': chain(r); for (int i = 0; i + 1 < r; ++i) d[i] = 1; break;
    case 'D': chain(r - 1); edges.emplace_back(r - 3, r - 1); break;
    case 'E': chain(r - 1); edges.emplace_back(r == 6 ? 2 : r == 7 ? 3 : 4, r - 1); break;
    case 'F': chain(4); d[2] = 1; d[3] = 1; break;
    case 'G': chain(2); d[0] = make_q(2, 3); break;
    default: break;
  }
}

inline RootSystemData build_root_system(char t, int r) {
  if (!valid_type(t, r))
    throw std::invalid_argument("invalid simple type " + std::string(1, t) + std::to_string(r));
  RootSystemData rs;
  rs.type_label = t;
  rs.rank = r;
  std::vector<std::pair<int, int>> edges;
  dynkin_data(t, r, edges, rs.sqlen);
  rs.gram = QMat(r, r, Q(0));
  for (int i = 0; i < r; ++i) rs.gram(i, i) = rs.sqlen[i];
  for (auto [i, j] : edges) {
    Q v = -std::max(rs.sqlen[i], rs.sqlen[j]) / 2;
    rs.gram(i, j) = v;
    rs.gram(j, i) = v;
  }
  rs.cartan.assign(r, IVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Q a = Q(2) * rs.gram(i, j) / rs.sqlen[j];
      if (a.get_den() != 1) throw std::logic_error("non-integral Cartan entry");
      rs.cartan[i][j] = static_cast<int>(a.get_num().get_si());
    }

  // Positive roots by strings: b + a_i is a root iff q > 0 where p - q = <b, a_i^v>.
  std::vector<IVec> pos;
  std::map<IVec, bool> seen;
  std::vector<IVec> layer;
  for (int i = 0; i < r; ++i) {
    IVec s(r, 0);
    s[i] = 1;
    layer.push_back(s);
    seen[s] = true;
  }
  while (!layer.empty()) {
    for (auto& b : layer) pos.push_back(b);
    std::vector<IVec> next;
    for (auto& b : layer) {
      for (int i = 0; i < r; ++i) {
        int p = 0;
        IVec c = b;
        while (true) {
          c[i] -= 1;
          if (!seen.count(c)) break;
          ++p;
        }
        int pair = 0;
        for (int k = 0; k < r; ++k) pair += b[k] * rs.cartan[k][i];
        int q = p - pair;
        if (q > 0) {
          IVec up = b;
          up[i] += 1;
          if (!seen.count(up)) {
            seen[up] = true;
            next.push_back(up);
          }
        }
      }
    }
    std::sort(next.begin(), next.end(), std::greater<IVec>());
    layer = std::move(next);
  }
  rs.npos = static_cast<int>(pos.size());
  rs.roots = pos;
  for (auto& b : pos) {
    IVec m = b;
    for (auto& x : m) x = -x;
    rs.roots.push_back(m);
  }
  rs.build_index();
  return rs;
}

inline std::size_t expected_root_count(char t, int r) {
  switch (t) {
    case 'A': return r * (r + 1);
    case 'B':
    case 'C': return 2 * r * r;
    case 'D': return 2 * r * (r - 1);
    case 'E': return r == 6 ? 72 : r == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
    default: return 0;
  }
}

/// v - <v, a^v> a.
inline QVec reflect(const RootSystemData& rs, const QVec& v, const IVec& a) {
  if (!rs.is_root(a)) throw std::invalid_argument("reflection in a non-root");
  Q c = rs.pairing(v, a);
  QVec out = v;
  for (int k = 0; k < rs.rank; ++k) out[k] -= c * a[k];
  return out;
}

/// Matrix of s_a on simple-root coordinates (column vectors).
inline QMat reflection_matrix(const RootSystemData& rs, const IVec& a) {
  QMat m = qidentity(rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    Q c = rs.pairing(to_qvec(rs.simple(j)), a);
    for (int i = 0; i < rs.rank; ++i) m(i, j) -= c * a[i];
  }
  return m;
}

/// Product s_{w[0]} s_{w[1]} ... s_{w[k-1]}, acting right to left.
class WeylWord {
 public:
  WeylWord() = default;
  WeylWord(const RootSystemData& rs, std::vector<IVec> word) : word_(std::move(word)) {
    mat_ = qidentity(rs.rank);
    for (const auto& a : word_) {
      if (!rs.is_root(a)) throw std::invalid_argument("word entry is not a root");
      mat_ = mat_ * reflection_matrix(rs, a);
    }
  }
  static WeylWord from_simple(const RootSystemData& rs, const IVec& indices) {
    std::vector<IVec> w;
    for (int i : indices) {
      if (i < 1 || i > rs.rank) throw std::invalid_argument("simple index out of range");
      w.push_back(rs.simple(i - 1));
    }
    return WeylWord(rs, w);
  }

  const std::vector<IVec>& word() const { return word_; }
  const QMat& matrix() const { return mat_; }

  QVec apply(const QVec& v) const { return mat_.apply(v); }
  IVec apply(const IVec& a) const {
    QVec v = mat_.apply(to_qvec(a));
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<int>(v[i].get_num().get_si());
    return out;
  }
  /// Permutation of root indices.
  std::vector<int> root_permutation(const RootSystemData& rs) const {
    std::vector<int> p(rs.num_roots());
    for (int i = 0; i < rs.num_roots(); ++i) {
      p[i] = rs.find(apply(rs.roots[i]));
      if (p[i] < 0) throw std::logic_error("Weyl element does not permute roots");
    }
    return p;
  }
  int order() const {
    QMat id = qidentity(mat_.rows());
    QMat p = mat_;
    for (int k = 1; k <= 1000; ++k) {
      if (p == id) return k;
      p = p * mat_;
    }
    throw std::logic_error("Weyl element of unbounded order");
  }
  bool operator==(const WeylWord& o) const { return mat_ == o.mat_; }

 private:
  std::vector<IVec> word_;
  QMat mat_;
};

/// |{a positive : w(a) negative}| for the positive system given as a predicate on root indices.
inline int weyl_length(const WeylWord& w, const RootSystemData& rs, const std::vector<bool>& positive) {
  auto perm = w.root_permutation(rs);
  int n = 0;
  for (int i = 0; i < rs.num_roots(); ++i)
    if (positive[i] && !positive[perm[i]]) ++n;
  return n;
}

inline std::vector<bool> standard_positive(const RootSystemData& rs) {
  std::vector<bool> p(rs.num_roots());
  for (int i = 0; i < rs.num_roots(); ++i) p[i] = rs.positive(i);
  return p;
}

/// Parse "1,2,1" or root expressions such as "2+2*3" (a_2 + 2 a_3).
inline WeylWord parse_word(const RootSystemData& rs, const std::string& text) {
  std::vector<IVec> word;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    IVec root(rs.rank, 0);
    std::stringstream ts(item);
    std::string term;
    while (std::getline(ts, term, '+')) {
      int coef = 1;
      auto star = term.find('*');
      std::string idx = term;
      if (star != std::string::npos) {
        coef = std::stoi(term.substr(0, star));
        idx = term.substr(star + 1);
      }
      int i = std::stoi(idx);
      if (i < 1 || i > rs.rank) throw std::invalid_argument("simple index out of range in word: " + item);
      root[i - 1] += coef;
    }
    if (!rs.is_root(root)) throw std::invalid_argument("word entry is not a root: " + item);
    word.push_back(root);
  }
  return WeylWord(rs, word);
}

inline std::string root_label(const IVec& a) {
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    int c = a[k];
    if (!s.empty() || c < 0) s += c < 0 ? (s.empty() ? "-" : "-") : "+";
    int m = c < 0 ? -c : c;
    if (m != 1) s += std::to_string(m) + "*";
    s += "a" + std::to_string(k + 1);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Chevalley basis

struct BracketTerm {
  int idx;
  int coef;
};

class ChevalleyBasis {
 public:
  RootSystemData rs;
  int nroots = 0;
  int dim = 0;

  // Basis: root vectors e_a in rs.roots order, then simple coroots h_i.
  int root_index(int a) const { return a; }
  int cartan_index(int i) const { return nroots + i; }
  bool is_root_index(int b) const { return b < nroots; }

  const std::vector<BracketTerm>& bracket_basis(int i, int j) const { return table_[i * dim + j]; }

  QVec bracket(const QVec& x, const QVec& y) const {
    QVec out(dim, Q(0));
    for (int i = 0; i < dim; ++i) {
      if (is_zero(x[i])) continue;
      for (int j = 0; j < dim; ++j) {
        if (is_zero(y[j])) continue;
        Q c = x[i] * y[j];
        for (const auto& t : table_[i * dim + j]) out[t.idx] += c * t.coef;
      }
    }
    return out;
  }

  QMat ad(const QVec& x) const {
    QMat m(dim, dim, Q(0));
    for (int i = 0; i < dim; ++i) {
      if (is_zero(x[i])) continue;
      for (int j = 0; j < dim; ++j)
        for (const auto& t : table_[i * dim + j]) m(t.idx, j) += x[i] * t.coef;
    }
    return m;
  }
  QMat ad_basis(int i) const {
    QMat m(dim, dim, Q(0));
    for (int j = 0; j < dim; ++j)
      for (const auto& t : table_[i * dim + j]) m(t.idx, j) += t.coef;
    return m;
  }

  QVec unit(int i) const {
    QVec v(dim, Q(0));
    v.at(i) = 1;
    return v;
  }

  /// Invariant form on g extending the root-length normalization.
  const QMat& form() const { return form_; }
  Q form(const QVec& x, const QVec& y) const {
    Q acc = 0;
    for (int i = 0; i < dim; ++i) {
      if (is_zero(x[i])) continue;
      for (int j : form_support_[i]) acc += x[i] * form_(i, j) * y[j];
    }
    return acc;
  }

  /// N_{a,b} for root indices a, b with a+b a root (0 otherwise).
  int N(int a, int b) const { return n_[a * nroots + b]; }
  int sum_index(int a, int b) const { return sum_[a * nroots + b]; }

  /// Sign attached to root vector a relative to the Carter basis.
  int sign(int a) const { return sign_.empty() ? 1 : sign_[a]; }
  bool is_signed_variant() const { return !sign_.empty(); }

  /// Structure coefficient [e_a, e_{-a}] = c * a^v (c = +1 for the Carter basis).
  int coroot_scale(int a) const { return sign(a) * sign(rs.neg(a)); }

  /// Basis with root vectors of roots outside `positive` negated.
  ChevalleyBasis signed_variant(const std::vector<bool>& positive) const {
    ChevalleyBasis out = *this;
    out.sign_.assign(nroots, 1);
    for (int a = 0; a < nroots; ++a)
      if (!positive[a]) out.sign_[a] = -1;
    auto sg = [&](int idx) { return idx < nroots ? out.sign_[idx] : 1; };
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (auto& t : out.table_[i * dim + j]) t.coef *= sg(i) * sg(j) * sg(t.idx);
    for (int a = 0; a < nroots; ++a)
      for (int b = 0; b < nroots; ++b) {
        int c = sum_[a * nroots + b];
        if (c >= 0) out.n_[a * nroots + b] = n_[a * nroots + b] * sg(a) * sg(b) * sg(c);
      }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out.form_(i, j) = form_(i, j) * sg(i) * sg(j);
    return out;
  }

  /// Root-space and Cartan components of an element.
  std::vector<int> root_support(const QVec& x) const {
    std::vector<int> s;
    for (int a = 0; a < nroots; ++a)
      if (!is_zero(x[a])) s.push_back(a);
    return s;
  }

  friend ChevalleyBasis build_chevalley(const RootSystemData& rs);

 private:
  std::vector<std::vector<BracketTerm>> table_;
  std::vector<int> n_, sum_;
  std::vector<int> sign_;
  QMat form_;
  std::vector<std::vector<int>> form_support_;

  void finish_form() {
    form_support_.assign(dim, {});
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (!is_zero(form_(i, j))) form_support_[i].push_back(j);
  }
};

/// Structure constants by the extraspecial-pair algorithm: N = p+1 on
/// extraspecial pairs, the remaining constants forced by the standard
/// relations, and Jacobi verified afterwards by callers.
inline ChevalleyBasis build_chevalley(const RootSystemData& rs) {
  ChevalleyBasis cb;
  cb.rs = rs;
  const int n = rs.num_roots();
  const int r = rs.rank;
  cb.nroots = n;
  cb.dim = n + r;
  cb.sum_.assign(n * n, -1);
  cb.n_.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      IVec s(r);
      for (int k = 0; k < r; ++k) s[k] = rs.roots[a][k] + rs.roots[b][k];
      cb.sum_[a * n + b] = rs.find(s);
    }

  const int np = rs.npos;
  std::vector<int> npos_tab(np * np, 0);  // N for positive pairs
  std::vector<bool> known(np * np, false);

  auto sq = [&](int a) { return rs.sq(rs.roots[a]); };
  std::function<int(int, int)> Nfull = [&](int a, int b) -> int {
    int c = cb.sum_[a * n + b];
    if (c < 0) return 0;
    bool pa = rs.positive(a), pb = rs.positive(b);
    if (pa && pb) {
      if (!known[a * np + b]) throw std::logic_error("structure constant requested out of order");
      return npos_tab[a * np + b];
    }
    if (!pa && !pb) return -Nfull(rs.neg(a), rs.neg(b));
    // Mixed signs: a + b + c' = 0 with c' = -(a+b).
    int cp = rs.neg(c);
    Q val;
    bool b_c_same = rs.positive(b) == rs.positive(cp);
    if (b_c_same) {
      val = sq(cp) / sq(a) * Nfull(b, cp);
    } else {
      val = sq(cp) / sq(b) * Nfull(cp, a);
    }
    if (val.get_den() != 1) throw std::logic_error("non-integral structure constant");
    return static_cast<int>(val.get_num().get_si());
  };

  for (int xi = 0; xi < np; ++xi) {
    std::vector<std::pair<int, int>> special;
    for (int g = 0; g < xi; ++g)
      for (int d = g + 1; d < xi; ++d)
        if (cb.sum_[g * n + d] == xi) special.emplace_back(g, d);
    if (special.empty()) continue;
    auto [al, be] = special.front();
    int p = 0;
    {
      IVec c = rs.roots[be];
      while (true) {
        for (int k = 0; k < r; ++k) c[k] -= rs.roots[al][k];
        if (!rs.is_root(c)) break;
        ++p;
      }
    }
    npos_tab[al * np + be] = p + 1;
    npos_tab[be * np + al] = -(p + 1);
    known[al * np + be] = known[be * np + al] = true;
    for (std::size_t k = 1; k < special.size(); ++k) {
      auto [g, d] = special[k];
      int ma = rs.neg(al), mb = rs.neg(be);
      Q acc = 0;
      int dma = cb.sum_[d * n + ma];
      if (dma >= 0) acc += Q(Nfull(d, ma) * Nfull(g, mb)) / sq(dma);
      int gma = cb.sum_[g * n + ma];
      if (gma >= 0) acc += Q(Nfull(ma, g) * Nfull(d, mb)) / sq(gma);
      Q val = sq(xi) / Q(p + 1) * acc;
      if (val.get_den() != 1) throw std::logic_error("non-integral structure constant");
      int v = static_cast<int>(val.get_num().get_si());
      npos_tab[g * np + d] = v;
      npos_tab[d * np + g] = -v;
      known[g * np + d] = known[d * np + g] = true;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cb.n_[a * n + b] = Nfull(a, b);

  const int dim = cb.dim;
  cb.table_.assign(dim * dim, {});
  for (int a = 0; a < n; ++a) {
    IVec cor = rs.coroot(rs.roots[a]);
    for (int b = 0; b < n; ++b) {
      int c = cb.sum_[a * n + b];
      if (c >= 0) {
        cb.table_[a * dim + b].push_back({c, cb.n_[a * n + b]});
      } else if (b == rs.neg(a)) {
        for (int k = 0; k < r; ++k)
          if (cor[k] != 0) cb.table_[a * dim + b].push_back({n + k, cor[k]});
      }
    }
    for (int i = 0; i < r; ++i) {
      int pr = rs.pairing(rs.roots[a], rs.simple(i));
      if (pr != 0) {
        cb.table_[(n + i) * dim + a].push_back({a, pr});
        cb.table_[a * dim + (n + i)].push_back({a, -pr});
      }
    }
  }

  cb.form_ = QMat(dim, dim, Q(0));
  for (int a = 0; a < n; ++a) cb.form_(a, rs.neg(a)) = Q(2) / sq(a);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) cb.form_(n + i, n + j) = Q(4) * rs.gram(i, j) / (rs.sqlen[i] * rs.sqlen[j]);
  cb.finish_form();
  return cb;
}

/// Exhaustive Jacobi check; returns the first failing basis triple if any.
inline std::optional<std::array<int, 3>> jacobi_violation(const ChevalleyBasis& cb) {
  const int d = cb.dim;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      QVec ij(d, Q(0));
      for (const auto& t : cb.bracket_basis(i, j)) ij[t.idx] += t.coef;
      for (int k = j + 1; k < d; ++k) {
        QVec acc(d, Q(0));
        auto add = [&](int x, const QVec& yz) {
          for (int m = 0; m < d; ++m) {
            if (is_zero(yz[m])) continue;
            for (const auto& t : cb.bracket_basis(x, m)) acc[t.idx] += yz[m] * t.coef;
          }
        };
        QVec jk(d, Q(0)), ki(d, Q(0));
        for (const auto& t : cb.bracket_basis(j, k)) jk[t.idx] += t.coef;
        for (const auto& t : cb.bracket_basis(k, i)) ki[t.idx] += t.coef;
        add(i, jk);
        add(j, ki);
        add(k, ij);
        if (!is_zero_vec(acc)) return std::array<int, 3>{i, j, k};
      }
    }
  return std::nullopt;
}

/// Whether B([x,y],z) = B(x,[y,z]) on all basis triples.
inline bool form_is_invariant(const ChevalleyBasis& cb) {
  const int d = cb.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      QVec xy(d, Q(0));
      for (const auto& t : cb.bracket_basis(i, j)) xy[t.idx] += t.coef;
      for (int k = 0; k < d; ++k) {
        QVec yz(d, Q(0));
        for (const auto& t : cb.bracket_basis(j, k)) yz[t.idx] += t.coef;
        if (cb.form(xy, cb.unit(k)) != cb.form(cb.unit(i), yz)) return false;
      }
    }
  return true;
}

}  // namespace wslice
