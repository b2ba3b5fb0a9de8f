#pragma once

#include <cmath>

namespace topspin {

/// Second-order forward-mode jet: a value together with its first and second
/// derivatives along one seeded direction.
///
/// Arithmetic propagates the truncated Taylor coefficients exactly, so
/// f(Jet2::variable(x)) yields {f(x), f'(x), f''(x)} to machine precision.
struct Jet2 {
  double v = 0.0;
  double d = 0.0;
  double dd = 0.0;

  constexpr Jet2() = default;
  constexpr Jet2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  constexpr Jet2(double value, double first, double second) : v(value), d(first), dd(second) {}

  static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }
  static constexpr Jet2 constant(double x) { return {x, 0.0, 0.0}; }

  constexpr bool is_constant() const { return d == 0.0 && dd == 0.0; }

  constexpr bool operator==(const Jet2&) const = default;
};

constexpr Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
constexpr Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
constexpr Jet2 operator-(Jet2 a) { return {-a.v, -a.d, -a.dd}; }

constexpr Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}

constexpr Jet2 operator/(Jet2 a, Jet2 b) {
  const double q = a.v / b.v;
  const double dq = (a.d - q * b.d) / b.v;
  const double ddq = (a.dd - 2.0 * dq * b.d - q * b.dd) / b.v;
  return {q, dq, ddq};
}

inline Jet2& operator+=(Jet2& a, Jet2 b) { return a = a + b; }
inline Jet2& operator-=(Jet2& a, Jet2 b) { return a = a - b; }
inline Jet2& operator*=(Jet2& a, Jet2 b) { return a = a * b; }
inline Jet2& operator/=(Jet2& a, Jet2 b) { return a = a / b; }

/// Outer function with known (f, f', f'') at a.v, composed by the chain rule.
constexpr Jet2 compose(Jet2 a, double f, double df, double d2f) {
  return {f, df * a.d, d2f * a.d * a.d + df * a.dd};
}

inline Jet2 sqrt(Jet2 a) {
  const double r = std::sqrt(a.v);
  const double dr = 0.5 / r;
  return compose(a, r, dr, -0.5 * dr / a.v);
}

inline Jet2 exp(Jet2 a) {
  const double e = std::exp(a.v);
  return compose(a, e, e, e);
}

inline Jet2 log(Jet2 a) { return compose(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }

/// a^p for a constant exponent. Integer exponents are valid for negative bases.
inline Jet2 pow(Jet2 a, double p) {
  if (p == 0.0) return Jet2{1.0};
  if (p == 1.0) return a;
  const double f = std::pow(a.v, p);
  const double df = p * std::pow(a.v, p - 1.0);
  const double d2f = (p == 2.0) ? 2.0 : p * (p - 1.0) * std::pow(a.v, p - 2.0);
  return compose(a, f, df, d2f);
}

}  // namespace topspin
