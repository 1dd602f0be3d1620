#pragma once

#include <cmath>

namespace supint {

// Forward-mode dual number: value `a` plus derivative part `b`.
// Nesting (Dual<Dual<double>>) yields exact second derivatives, which is all
// the bracket machinery ever needs (a bracket of brackets differentiates
// twice).
template <class T>
struct Dual {
  T a{};  // value
  T b{};  // derivative

  Dual() = default;
  Dual(double v) : a(v), b(0.0) {}  // NOLINT: implicit lift of constants
  Dual(T value, T deriv) : a(std::move(value)), b(std::move(deriv)) {}
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

template <class T>
inline Dual<T> operator-(const Dual<T>& x) {
  return {-x.a, -x.b};
}

template <class T>
inline Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.a + y.a, x.b + y.b};
}
template <class T>
inline Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.a - y.a, x.b - y.b};
}
template <class T>
inline Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.a * y.a, x.b * y.a + x.a * y.b};
}
template <class T>
inline Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  const T q = x.a / y.a;
  return {q, (x.b - q * y.b) / y.a};
}

template <class T>
inline Dual<T> operator+(const Dual<T>& x, double c) {
  return {x.a + T(c), x.b};
}
template <class T>
inline Dual<T> operator+(double c, const Dual<T>& x) {
  return x + c;
}
template <class T>
inline Dual<T> operator-(const Dual<T>& x, double c) {
  return {x.a - T(c), x.b};
}
template <class T>
inline Dual<T> operator-(double c, const Dual<T>& x) {
  return {T(c) - x.a, -x.b};
}
template <class T>
inline Dual<T> operator*(const Dual<T>& x, double c) {
  return {x.a * T(c), x.b * T(c)};
}
template <class T>
inline Dual<T> operator*(double c, const Dual<T>& x) {
  return x * c;
}
template <class T>
inline Dual<T> operator/(const Dual<T>& x, double c) {
  return {x.a / T(c), x.b / T(c)};
}
template <class T>
inline Dual<T> operator/(double c, const Dual<T>& x) {
  return Dual<T>(c) / x;
}

template <class T>
inline Dual<T>& operator+=(Dual<T>& x, const Dual<T>& y) {
  x = x + y;
  return x;
}
template <class T>
inline Dual<T>& operator-=(Dual<T>& x, const Dual<T>& y) {
  x = x - y;
  return x;
}
template <class T>
inline Dual<T>& operator*=(Dual<T>& x, const Dual<T>& y) {
  x = x * y;
  return x;
}
template <class T>
inline Dual<T>& operator+=(Dual<T>& x, double c) {
  x = x + c;
  return x;
}
template <class T>
inline Dual<T>& operator-=(Dual<T>& x, double c) {
  x = x - c;
  return x;
}
template <class T>
inline Dual<T>& operator*=(Dual<T>& x, double c) {
  x = x * c;
  return x;
}

using std::cosh;
using std::exp;
using std::sinh;
using std::sqrt;

template <class T>
inline Dual<T> sqrt(const Dual<T>& x) {
  const T s = sqrt(x.a);
  return {s, x.b / (2.0 * s)};
}
template <class T>
inline Dual<T> exp(const Dual<T>& x) {
  const T e = exp(x.a);
  return {e, x.b * e};
}
template <class T>
inline Dual<T> sinh(const Dual<T>& x) {
  return {sinh(x.a), x.b * cosh(x.a)};
}
template <class T>
inline Dual<T> cosh(const Dual<T>& x) {
  return {cosh(x.a), x.b * sinh(x.a)};
}

// Plain value of a possibly nested dual.
inline double value_of(double x) { return x; }
inline long double value_of(long double x) { return static_cast<double>(x); }
template <class T>
inline double value_of(const Dual<T>& x) {
  return value_of(x.a);
}

}  // namespace supint
