#pragma once

// Multivariate Laurent polynomials with rational coefficients.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wslice/rational.hpp"

namespace wslice {

struct VarSet {
  std::vector<std::string> names;
  std::vector<bool> invertible;

  int index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
  int size() const { return static_cast<int>(names.size()); }
};

using VarsPtr = std::shared_ptr<const VarSet>;

inline VarsPtr make_vars(std::vector<std::string> names, const std::vector<std::string>& invertible = {}) {
  auto v = std::make_shared<VarSet>();
  v->names = std::move(names);
  v->invertible.assign(v->names.size(), false);
  for (const auto& n : invertible) {
    int i = v->index(n);
    if (i < 0) throw std::invalid_argument("unknown invertible variable " + n);
    v->invertible[i] = true;
  }
  return v;
}

using Exp = std::vector<int>;

/// Graded-lex comparison: higher total degree first, then lexicographically larger.
inline bool grlex_before(const Exp& a, const Exp& b) {
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da > db;
  return a > b;
}

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(VarsPtr vars) : vars_(std::move(vars)) {}

  static LaurentPoly constant(VarsPtr vars, const Q& c) {
    LaurentPoly p(vars);
    if (!is_zero(c)) p.terms_[Exp(vars->size(), 0)] = c;
    return p;
  }
  static LaurentPoly variable(VarsPtr vars, int i) {
    LaurentPoly p(vars);
    Exp e(vars->size(), 0);
    e.at(i) = 1;
    p.terms_[e] = 1;
    return p;
  }
  static LaurentPoly variable(VarsPtr vars, const std::string& name) {
    int i = vars->index(name);
    if (i < 0) throw std::invalid_argument("unknown variable " + name);
    return variable(vars, i);
  }
  static LaurentPoly monomial(VarsPtr vars, const Exp& e, const Q& c) {
    LaurentPoly p(vars);
    for (int i = 0; i < vars->size(); ++i)
      if (e[i] < 0 && !vars->invertible[i]) throw std::invalid_argument("negative power of non-invertible variable " + vars->names[i]);
    if (!is_zero(c)) p.terms_[e] = c;
    return p;
  }

  const VarsPtr& vars() const { return vars_; }
  const std::map<Exp, Q>& terms() const { return terms_; }
  bool is_zero_poly() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int x) { return x == 0; }));
  }
  Q constant_term() const {
    if (!vars_) return Q(0);
    auto it = terms_.find(Exp(vars_->size(), 0));
    return it == terms_.end() ? Q(0) : it->second;
  }
  bool is_monomial() const { return terms_.size() == 1; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a.adopt(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a.adopt(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a.vars_ ? a.vars_ : b.vars_);
    if (a.vars_ && b.vars_ && a.vars_ != b.vars_) throw std::logic_error("mixed variable sets");
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exp e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend LaurentPoly operator*(const Q& s, LaurentPoly a) {
    if (is_zero(s)) return LaurentPoly(a.vars_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return (a - b).terms_.empty(); }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly pow(int k) const {
    if (k < 0) return inverse_monomial().pow(-k);
    LaurentPoly out = constant(vars_, Q(1)), base = *this;
    while (k) {
      if (k & 1) out *= base;
      base *= base;
      k >>= 1;
    }
    return out;
  }

  LaurentPoly inverse_monomial() const {
    if (!is_monomial()) throw std::invalid_argument("only monomials can be inverted");
    const auto& [e, c] = *terms_.begin();
    Exp ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
    return monomial(vars_, ne, inv(c));
  }

  LaurentPoly derivative(int var) const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exp ne = e;
      ne[var] -= 1;
      out.add_term(ne, c * e[var]);
    }
    return out;
  }

  /// Value at a point; `one` and `inv` come from the scalar type.
  template <class T>
  T evaluate(const std::vector<T>& vals) const {
    if (static_cast<int>(vals.size()) != vars_->size()) throw std::invalid_argument("evaluation point has wrong size");
    T acc = zero_like(vals.empty() ? T(Q(0)) : vals[0]);
    std::vector<std::map<int, T>> powers(vals.size());
    auto power = [&](int i, int k) -> T {
      auto it = powers[i].find(k);
      if (it != powers[i].end()) return it->second;
      T base = k < 0 ? inv(vals[i]) : vals[i];
      T out = one_like(vals[i]);
      for (int j = 0; j < std::abs(k); ++j) out = out * base;
      powers[i].emplace(k, out);
      return out;
    };
    for (const auto& [e, c] : terms_) {
      T t = T(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) t = t * power(static_cast<int>(i), e[i]);
      acc = acc + t;
    }
    return acc;
  }

  /// Substitute images for every variable; negative powers need monomial images.
  LaurentPoly substitute(const std::vector<LaurentPoly>& images) const {
    if (static_cast<int>(images.size()) != vars_->size()) throw std::invalid_argument("substitution has wrong size");
    VarsPtr target = images.empty() ? vars_ : images[0].vars_;
    LaurentPoly out(target);
    std::vector<std::map<int, LaurentPoly>> cache(images.size());
    for (const auto& [e, c] : terms_) {
      LaurentPoly t = constant(target, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto it = cache[i].find(e[i]);
        if (it == cache[i].end()) it = cache[i].emplace(e[i], images[i].pow(e[i])).first;
        t *= it->second;
      }
      out += t;
    }
    return out;
  }

  int min_exponent(int var) const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
    return m;
  }
  int max_exponent(int var) const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }

  std::vector<std::pair<Exp, Q>> sorted_terms() const {
    std::vector<std::pair<Exp, Q>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return grlex_before(a.first, b.first); });
    return v;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted_terms()) {
      bool neg = sgn(c) < 0;
      Q m = abs_q(c);
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      bool unit = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
      bool wrote = false;
      if (unit || m != 1) {
        os << m.get_str();
        wrote = true;
      }
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << vars_->names[i];
        if (e[i] != 1) os << "^" << e[i];
        wrote = true;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

 private:
  VarsPtr vars_;
  std::map<Exp, Q> terms_;

  void adopt(const LaurentPoly& b) {
    if (!vars_) vars_ = b.vars_;
    else if (b.vars_ && b.vars_ != vars_) throw std::logic_error("mixed variable sets");
  }
  void add_term(const Exp& e, const Q& c) {
    if (is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }
};

// ---------------------------------------------------------------------------
// Parser: sums, products, integer powers (negative on monomials), parentheses,
// rational literals a or a/b, and variable names.

class LaurentParser {
 public:
  LaurentParser(VarsPtr vars, std::string text) : vars_(std::move(vars)), s_(std::move(text)) {}

  LaurentPoly parse() {
    LaurentPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  VarsPtr vars_;
  std::string s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + msg + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  LaurentPoly expr() {
    LaurentPoly acc = term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  LaurentPoly term() {
    LaurentPoly acc = unary();
    while (eat('*')) acc *= unary();
    return acc;
  }
  LaurentPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  LaurentPoly power() {
    LaurentPoly base = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int k = std::stoi(s_.substr(start, pos_ - start));
      return base.pow(neg ? -k : k);
    }
    return base;
  }
  std::string integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  LaurentPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly p = expr();
      if (!eat(')')) fail("expected )");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = integer();
      std::string den = "1";
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        den = integer();
        if (den.empty()) fail("expected denominator");
      }
      return LaurentPoly::constant(vars_, parse_q(num + "/" + den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int i = vars_->index(name);
      if (i < 0) fail("unknown variable " + name);
      return LaurentPoly::variable(vars_, i);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

inline LaurentPoly parse_laurent(const VarsPtr& vars, const std::string& text) {
  return LaurentParser(vars, text).parse();
}

/// Exact quotient a / b if b divides a (multivariate division, grlex leading terms).
inline std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero_poly()) throw std::domain_error("division by zero polynomial");
  VarsPtr vars = a.vars() ? a.vars() : b.vars();
  auto lead = [](const LaurentPoly& p) { return p.sorted_terms().front(); };
  LaurentPoly r = a, q(vars);
  auto [eb, cb] = lead(b);
  for (int guard = 0; !r.is_zero_poly(); ++guard) {
    if (guard > 100000) throw std::runtime_error("division did not terminate");
    auto [er, cr] = lead(r);
    Exp e(er.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = er[i] - eb[i];
      if (e[i] < 0 && !vars->invertible[i]) return std::nullopt;
    }
    LaurentPoly t = LaurentPoly::monomial(vars, e, cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

}  // namespace wslice
