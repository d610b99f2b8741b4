#pragma once

/**
 * @file dual.hpp
 * @brief Single-direction forward-mode dual numbers.
 *
 * A dual number is v + d*eps with eps^2 = 0. Evaluating a smooth function on
 * y + eps*V yields f(y) + eps * df_y(V), so one pass gives one directional
 * derivative exactly up to rounding.
 *
 * Math functions are found by ADL; generic callers write
 * `using std::exp; exp(x)` so the same code runs on double and Dual.
 */

#include <cmath>

namespace coneslice::ad {

struct Dual {
  double val = 0.0;
  double der = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v) {}  // NOLINT: implicit lift of constants
  constexpr Dual(double v, double d) : val(v), der(d) {}

  constexpr Dual& operator+=(Dual o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  constexpr Dual& operator-=(Dual o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  constexpr Dual& operator*=(Dual o) {
    der = der * o.val + val * o.der;
    val *= o.val;
    return *this;
  }
  constexpr Dual& operator/=(Dual o) {
    const double q = val / o.val;
    der = (der - q * o.der) / o.val;
    val = q;
    return *this;
  }
};

constexpr Dual operator+(Dual a) { return a; }
constexpr Dual operator-(Dual a) { return {-a.val, -a.der}; }
constexpr Dual operator+(Dual a, Dual b) { return a += b; }
constexpr Dual operator-(Dual a, Dual b) { return a -= b; }
constexpr Dual operator*(Dual a, Dual b) { return a *= b; }
constexpr Dual operator/(Dual a, Dual b) { return a /= b; }

// Comparisons look at the value part only, which is what branching code needs.
constexpr bool operator<(Dual a, Dual b) { return a.val < b.val; }
constexpr bool operator>(Dual a, Dual b) { return a.val > b.val; }
constexpr bool operator<=(Dual a, Dual b) { return a.val <= b.val; }
constexpr bool operator>=(Dual a, Dual b) { return a.val >= b.val; }

inline Dual exp(Dual a) {
  const double e = std::exp(a.val);
  return {e, e * a.der};
}

inline Dual log(Dual a) { return {std::log(a.val), a.der / a.val}; }

inline Dual sqrt(Dual a) {
  const double s = std::sqrt(a.val);
  return {s, a.der / (2.0 * s)};
}

inline Dual pow(Dual a, double p) {
  const double v = std::pow(a.val, p);
  return {v, p * std::pow(a.val, p - 1.0) * a.der};
}

inline Dual sin(Dual a) { return {std::sin(a.val), std::cos(a.val) * a.der}; }
inline Dual cos(Dual a) { return {std::cos(a.val), -std::sin(a.val) * a.der}; }

inline Dual tanh(Dual a) {
  const double t = std::tanh(a.val);
  return {t, (1.0 - t * t) * a.der};
}

inline Dual atan(Dual a) { return {std::atan(a.val), a.der / (1.0 + a.val * a.val)}; }

inline Dual abs(Dual a) { return a.val < 0.0 ? -a : a; }

inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.val; }

}  // namespace coneslice::ad
