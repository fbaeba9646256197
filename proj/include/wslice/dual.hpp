#pragma once

// First-order dual numbers a + b·eps over a coefficient type, for exact directional derivatives.

#include <stdexcept>

#include "wslice/rational.hpp"

namespace wslice {

template <class T>
struct DualT {
  T a{}, b{};

  DualT() = default;
  DualT(const T& x) : a(x), b(zero_like(x)) {}  // NOLINT: implicit lift of scalars
  DualT(const T& x, const T& dx) : a(x), b(dx) {}

  friend DualT operator+(const DualT& x, const DualT& y) { return {x.a + y.a, x.b + y.b}; }
  friend DualT operator-(const DualT& x, const DualT& y) { return {x.a - y.a, x.b - y.b}; }
  friend DualT operator-(const DualT& x) { return {-x.a, -x.b}; }
  friend DualT operator*(const DualT& x, const DualT& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  friend DualT operator/(const DualT& x, const DualT& y) { return x * inv(y); }
  DualT& operator+=(const DualT& y) { return *this = *this + y; }
  DualT& operator-=(const DualT& y) { return *this = *this - y; }
  DualT& operator*=(const DualT& y) { return *this = *this * y; }
  friend bool operator==(const DualT& x, const DualT& y) { return x.a == y.a && x.b == y.b; }

  friend DualT inv(const DualT& x) {
    T ia = inv(x.a);
    return {ia, -(x.b * ia * ia)};
  }
  friend bool is_zero(const DualT& x) { return is_zero(x.a) && is_zero(x.b); }
  friend DualT zero_like(const DualT& x) { return DualT(zero_like(x.a)); }
  friend DualT one_like(const DualT& x) { return DualT(one_like(x.a)); }
};

using Dual = DualT<Q>;

}  // namespace wslice
