#pragma once

// Univariate rational polynomials, cyclotomic factorization of integer
// matrices of finite order, and the real cyclotomic fields Q(2cos(2pi/m))
// with certified sign determination by rational interval arithmetic.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wslice/linalg.hpp"
#include "wslice/rational.hpp"

namespace wslice {

// ---------------------------------------------------------------------------
// QPoly: coefficients low to high, no trailing zeros.

struct QPoly {
  std::vector<Q> c;

  QPoly() = default;
  explicit QPoly(std::vector<Q> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly constant(const Q& a) { return QPoly({a}); }
  static QPoly monomial(int k, const Q& a = Q(1)) {
    std::vector<Q> v(k + 1, Q(0));
    v[k] = a;
    return QPoly(v);
  }

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
  Q coeff(int k) const { return k < static_cast<int>(c.size()) ? c[k] : Q(0); }
  Q lead() const { return c.empty() ? Q(0) : c.back(); }

  Q operator()(const Q& x) const {
    Q acc = 0;
    for (int k = degree(); k >= 0; --k) acc = acc * x + c[k];
    return acc;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Q> v(std::max(a.c.size(), b.c.size()), Q(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
    return QPoly(v);
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Q> v(std::max(a.c.size(), b.c.size()), Q(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
    return QPoly(v);
  }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.zero() || b.zero()) return QPoly();
    std::vector<Q> v(a.c.size() + b.c.size() - 1, Q(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return QPoly(v);
  }
  friend QPoly operator*(const Q& s, const QPoly& a) {
    std::vector<Q> v = a.c;
    for (auto& x : v) x *= s;
    return QPoly(v);
  }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

  std::string str(const std::string& var = "x") const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      if (is_zero(c[k])) continue;
      Q a = c[k];
      if (!first) os << (sgn(a) < 0 ? " - " : " + ");
      else if (sgn(a) < 0) os << "-";
      Q m = abs_q(a);
      if (k == 0 || m != 1) os << m.get_str();
      if (k > 0) os << var;
      if (k > 1) os << "^" << k;
      first = false;
    }
    return os.str();
  }
};

/// Quotient and remainder of a by b.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Q> q(std::max(0, a.degree() - b.degree() + 1), Q(0));
  QPoly r = a;
  while (!r.zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    Q f = r.lead() / b.lead();
    q[k] = f;
    r = r - QPoly::monomial(k, f) * b;
  }
  return {QPoly(q), r};
}

inline QPoly cyclotomic(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic index must be positive");
  QPoly p = QPoly::monomial(m) - QPoly::constant(Q(1));
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = divmod(p, cyclotomic(d)).first;
  return p;
}

inline int euler_phi(int m) {
  int n = 0;
  for (int k = 1; k <= m; ++k)
    if (std::gcd(k, m) == 1) ++n;
  return n;
}

/// Characteristic polynomial det(x - A) by Faddeev-LeVerrier.
inline QPoly charpoly(const QMat& a) {
  const std::size_t n = a.rows();
  std::vector<Q> c(n + 1, Q(0));
  c[n] = 1;
  QMat m(n, n, Q(0));
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    QMat am = a * m;
    Q tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return QPoly(c);
}

inline QMat eval_poly(const QPoly& p, const QMat& a) {
  const std::size_t n = a.rows();
  QMat acc(n, n, Q(0));
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.c[k];
  }
  return acc;
}

/// Factor p as a product of cyclotomic polynomials, returning (m, exponent)
/// pairs in increasing m; throws if p is not such a product.
inline std::vector<std::pair<int, int>> cyclotomic_factorization(QPoly p, int max_m) {
  std::vector<std::pair<int, int>> out;
  for (int m = 1; m <= max_m && p.degree() > 0; ++m) {
    QPoly phi = cyclotomic(m);
    int e = 0;
    for (;;) {
      auto [q, r] = divmod(p, phi);
      if (!r.zero()) break;
      p = q;
      ++e;
    }
    if (e) out.emplace_back(m, e);
  }
  if (p.degree() != 0 || p.c[0] != 1) throw std::logic_error("polynomial is not a product of cyclotomic factors");
  return out;
}

inline std::string factorization_string(const std::vector<std::pair<int, int>>& f) {
  std::string s;
  for (auto [m, e] : f) {
    if (!s.empty()) s += "*";
    s += "Phi" + std::to_string(m);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

/// Chebyshev-Dickson polynomial D_k with D_k(x + 1/x) = x^k + x^-k.
inline QPoly dickson(int k) {
  QPoly d0 = QPoly::constant(Q(2)), d1 = QPoly::monomial(1);
  if (k == 0) return d0;
  for (int i = 1; i < k; ++i) {
    QPoly d2 = QPoly::monomial(1) * d1 - d0;
    d0 = d1;
    d1 = d2;
  }
  return d1;
}

/// Minimal polynomial of 2cos(2pi/m).
inline QPoly psi_poly(int m) {
  if (m == 1) return QPoly({Q(-2), Q(1)});
  if (m == 2) return QPoly({Q(2), Q(1)});
  QPoly phi = cyclotomic(m);
  const int d = phi.degree() / 2;
  QPoly out = QPoly::constant(phi.coeff(d));
  for (int k = 1; k <= d; ++k) out = out + phi.coeff(d + k) * dickson(k);
  return out;
}

// ---------------------------------------------------------------------------
// Rational intervals

struct QInterval {
  Q lo, hi;

  static QInterval point(const Q& x) { return {x, x}; }
  friend QInterval operator+(const QInterval& a, const QInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend QInterval operator-(const QInterval& a, const QInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend QInterval operator*(const QInterval& a, const QInterval& b) {
    Q p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Q lo = p[0], hi = p[0];
    for (auto& x : p) {
      if (x < lo) lo = x;
      if (x > hi) hi = x;
    }
    return {lo, hi};
  }
  bool excludes_zero() const { return sgn(lo) > 0 || sgn(hi) < 0; }
  int sign() const { return sgn(lo) > 0 ? 1 : (sgn(hi) < 0 ? -1 : 0); }
  /// Bounds of |x| for x in the interval.
  Q abs_lo() const {
    if (sgn(lo) > 0) return lo;
    if (sgn(hi) < 0) return -hi;
    return Q(0);
  }
  Q abs_hi() const { return std::max(abs_q(lo), abs_q(hi)); }
  double mid() const { return Q((lo + hi) / 2).get_d(); }
};

// ---------------------------------------------------------------------------
// Real cyclotomic field K_m = Q(c), c = 2cos(2pi/m).

class CycloField {
 public:
  int m = 0;
  QPoly psi;
  QInterval gen;  // isolating interval for c, width < 2^-200

  explicit CycloField(int m_) : m(m_), psi(psi_poly(m_)) {
    if (psi.degree() == 1) {
      Q root = -psi.c[0] / psi.c[1];
      gen = QInterval::point(root);
      return;
    }
    double approx = 2.0 * std::cos(2.0 * M_PI / m);
    Q lo(approx - 1e-9), hi(approx + 1e-9);
    int slo = sgn(psi(lo)), shi = sgn(psi(hi));
    if (slo == 0 || shi == 0 || slo == shi) throw std::logic_error("failed to isolate 2cos(2pi/m)");
    for (int i = 0; i < 200; ++i) {
      Q mid = (lo + hi) / 2;
      int sm = sgn(psi(mid));
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == slo) lo = mid;
      else hi = mid;
    }
    gen = {lo, hi};
  }

  int degree() const { return psi.degree(); }

  QPoly reduce(const QPoly& p) const { return divmod(p, psi).second; }

  QInterval enclose(const QPoly& p) const {
    QInterval acc = QInterval::point(Q(0));
    for (int k = p.degree(); k >= 0; --k) acc = acc * gen + QInterval::point(p.c[k]);
    return acc;
  }

  /// Inverse of p modulo psi by the extended Euclidean algorithm.
  QPoly inverse(const QPoly& p) const {
    QPoly r0 = psi, r1 = reduce(p);
    if (r1.zero()) throw std::domain_error("division by zero in cyclotomic field");
    QPoly s0, s1 = QPoly::constant(Q(1));
    while (r1.degree() > 0) {
      auto [q, r] = divmod(r0, r1);
      QPoly s2 = s0 - q * s1;
      r0 = r1;
      r1 = r;
      s0 = s1;
      s1 = s2;
    }
    if (r1.zero()) throw std::logic_error("psi is not irreducible");
    return reduce(inv(r1.c[0]) * s1);
  }
};

/// Shared field instances; returns nullptr when the field is Q.
inline const CycloField* cyclo_field(int m) {
  if (psi_poly(m).degree() == 1) return nullptr;
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = fields[m];
  if (!slot) slot = std::make_unique<CycloField>(m);
  return slot.get();
}

/// Element of some K_m; F == nullptr means a rational number.
struct KElem {
  const CycloField* F = nullptr;
  QPoly p;

  KElem() = default;
  KElem(const Q& q) : p(QPoly::constant(q)) {}  // NOLINT(implicit)
  KElem(int q) : p(QPoly::constant(Q(q))) {}    // NOLINT(implicit)
  KElem(const CycloField* f, QPoly poly) : F(f), p(f ? f->reduce(poly) : std::move(poly)) {
    if (!F && p.degree() > 0) throw std::logic_error("rational KElem with a non-constant polynomial");
  }

  bool is_rational() const { return p.degree() <= 0; }
  Q rational() const {
    if (!is_rational()) throw std::logic_error("irrational field element");
    return p.coeff(0);
  }

  static const CycloField* join(const KElem& a, const KElem& b) {
    if (a.F && b.F && a.F != b.F) throw std::logic_error("mixed cyclotomic fields");
    return a.F ? a.F : b.F;
  }
  friend KElem operator+(const KElem& a, const KElem& b) { return KElem(join(a, b), a.p + b.p); }
  friend KElem operator-(const KElem& a, const KElem& b) { return KElem(join(a, b), a.p - b.p); }
  friend KElem operator*(const KElem& a, const KElem& b) { return KElem(join(a, b), a.p * b.p); }
  friend KElem operator/(const KElem& a, const KElem& b) { return a * inv(b); }
  KElem operator-() const { return KElem(F, Q(-1) * p); }
  KElem& operator+=(const KElem& b) { return *this = *this + b; }
  KElem& operator-=(const KElem& b) { return *this = *this - b; }
  KElem& operator*=(const KElem& b) { return *this = *this * b; }
  friend bool operator==(const KElem& a, const KElem& b) { return (a - b).p.zero(); }

  friend bool is_zero(const KElem& a) { return a.p.zero(); }
  friend KElem inv(const KElem& a) {
    if (a.p.zero()) throw std::domain_error("division by zero");
    if (a.is_rational()) return KElem(a.F, QPoly::constant(inv(a.p.c[0])));
    return KElem(a.F, a.F->inverse(a.p));
  }
  friend KElem zero_like(const KElem& a) { return KElem(a.F, QPoly()); }
  friend KElem one_like(const KElem& a) { return KElem(a.F, QPoly::constant(Q(1))); }

  QInterval enclose() const {
    if (is_rational()) return QInterval::point(p.coeff(0));
    return F->enclose(p);
  }
  /// Certified sign; the enclosure of a nonzero element never contains 0.
  int sign() const {
    if (p.zero()) return 0;
    QInterval iv = enclose();
    if (!iv.excludes_zero()) throw std::logic_error("sign undecided at working precision");
    return iv.sign();
  }
  double approx() const { return enclose().mid(); }

  std::string str() const {
    if (is_rational()) return p.coeff(0).get_str();
    return p.str("c" + std::to_string(F->m));
  }
};

using KVec = std::vector<KElem>;
using KMat = Matrix<KElem>;

inline KVec to_kvec(const QVec& v) { return KVec(v.begin(), v.end()); }

inline KMat to_kmat(const QMat& m) {
  KMat out(m.rows(), m.cols(), KElem(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = KElem(m(i, j));
  return out;
}

/// 2cos(2pi j/m) as an element of K_m.
inline KElem cos_value(int m, int j) {
  const CycloField* F = cyclo_field(m);
  if (!F) {
    double v = 2.0 * std::cos(2.0 * M_PI * j / m);
    long r = std::lround(v);
    return KElem(Q(r));
  }
  return KElem(F, dickson(j));
}

/// Certified sign of a sum of elements that may live in different fields.
inline int sign_of_sum(const std::vector<KElem>& terms) {
  bool all_zero = true;
  QInterval acc = QInterval::point(Q(0));
  for (const auto& t : terms) {
    if (!is_zero(t)) all_zero = false;
    acc = acc + t.enclose();
  }
  if (all_zero) return 0;
  if (!acc.excludes_zero()) throw std::logic_error("sign of mixed sum undecided at working precision");
  return acc.sign();
}

inline QInterval enclose_sum(const std::vector<KElem>& terms) {
  QInterval acc = QInterval::point(Q(0));
  for (const auto& t : terms) acc = acc + t.enclose();
  return acc;
}

}  // namespace wslice
