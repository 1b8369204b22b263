#pragma once
// Forward-mode automatic differentiation. Dual carries one tangent and is
// used to differentiate the Gram-Schmidt frame; HyperDual carries two tangents
// plus their mixed second derivative and is used to take the 2-jet of
// analytically specified background metrics.

#include <cmath>

namespace pspin {

struct Dual {
  double v = 0.0;
  double d = 0.0;

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  Dual(double value, double tangent) : v(value), d(tangent) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
inline Dual& operator-=(Dual& a, Dual b) { return a = a - b; }
inline Dual& operator*=(Dual& a, Dual b) { return a = a * b; }
inline Dual& operator/=(Dual& a, Dual b) { return a = a / b; }
inline Dual sqrt(Dual a) {
  const double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

struct HyperDual {
  double v = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double e12 = 0.0;

  HyperDual() = default;
  HyperDual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  HyperDual(double value, double a, double b, double ab) : v(value), e1(a), e2(b), e12(ab) {}
};

// f(x) with f0 = f(v), f1 = f'(v), f2 = f''(v)
inline HyperDual chain(const HyperDual& x, double f0, double f1, double f2) {
  return {f0, f1 * x.e1, f1 * x.e2, f1 * x.e12 + f2 * x.e1 * x.e2};
}

inline HyperDual operator+(const HyperDual& a, const HyperDual& b) {
  return {a.v + b.v, a.e1 + b.e1, a.e2 + b.e2, a.e12 + b.e12};
}
inline HyperDual operator-(const HyperDual& a, const HyperDual& b) {
  return {a.v - b.v, a.e1 - b.e1, a.e2 - b.e2, a.e12 - b.e12};
}
inline HyperDual operator-(const HyperDual& a) { return {-a.v, -a.e1, -a.e2, -a.e12}; }
inline HyperDual operator*(const HyperDual& a, const HyperDual& b) {
  return {a.v * b.v, a.e1 * b.v + a.v * b.e1, a.e2 * b.v + a.v * b.e2,
          a.e12 * b.v + a.e1 * b.e2 + a.e2 * b.e1 + a.v * b.e12};
}
inline HyperDual inverse(const HyperDual& a) {
  const double r = 1.0 / a.v;
  return chain(a, r, -r * r, 2.0 * r * r * r);
}
inline HyperDual operator/(const HyperDual& a, const HyperDual& b) { return a * inverse(b); }
inline HyperDual& operator+=(HyperDual& a, const HyperDual& b) { return a = a + b; }
inline HyperDual& operator-=(HyperDual& a, const HyperDual& b) { return a = a - b; }
inline HyperDual& operator*=(HyperDual& a, const HyperDual& b) { return a = a * b; }

inline HyperDual sin(const HyperDual& x) {
  const double s = std::sin(x.v), c = std::cos(x.v);
  return chain(x, s, c, -s);
}
inline HyperDual cos(const HyperDual& x) {
  const double s = std::sin(x.v), c = std::cos(x.v);
  return chain(x, c, -s, -c);
}
inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.v);
  return chain(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) {
  return chain(x, std::log(x.v), 1.0 / x.v, -1.0 / (x.v * x.v));
}
inline HyperDual sqrt(const HyperDual& x) {
  const double s = std::sqrt(x.v);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
}
inline HyperDual pow(const HyperDual& x, double p) {
  const double f0 = std::pow(x.v, p);
  return chain(x, f0, p * std::pow(x.v, p - 1.0), p * (p - 1.0) * std::pow(x.v, p - 2.0));
}

}  // namespace pspin
