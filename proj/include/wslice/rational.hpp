#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wslice {

using Q = mpq_class;
using QVec = std::vector<Q>;
using IVec = std::vector<int>;

inline Q make_q(long num, long den = 1) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Q& x) { return sgn(x) == 0; }
inline Q inv(const Q& x) {
  if (is_zero(x)) throw std::domain_error("division by zero");
  return Q(1) / x;
}
inline Q zero_like(const Q&) { return Q(0); }
inline Q one_like(const Q&) { return Q(1); }

inline std::string to_string(const Q& x) { return x.get_str(); }

/// Parse "a", "-a", "a/b".
inline Q parse_q(const std::string& s) {
  Q q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

inline QVec to_qvec(const IVec& v) {
  QVec out;
  out.reserve(v.size());
  for (int x : v) out.emplace_back(x);
  return out;
}

inline Q floor_q(const Q& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Q(f);
}

inline Q ceil_q(const Q& x) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Q(c);
}

inline Q abs_q(const Q& x) { return sgn(x) < 0 ? Q(-x) : x; }

}  // namespace wslice
