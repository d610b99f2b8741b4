#pragma once

// Shared test functions.

#include <cmath>

#include "coneslice/homogeneous.hpp"
#include "coneslice/slice.hpp"

namespace fixtures {

/// A non-trivial smooth degree-0 function defined where y^{n+1} > 0.
inline coneslice::HomogeneousFn wavy_l(int n) {
  const auto top = static_cast<std::size_t>(n + 1);
  return coneslice::HomogeneousFn::smooth(
      "wavy", n, 0.0,
      [top](auto y) {
        using std::sin;
        using std::tanh;
        const auto s = y[top];
        return 0.3 * tanh(y[0] / s) + 0.2 * sin(y[1] / s) - 0.1 * (y[top - 1] / s) * (y[top - 1] / s);
      },
      coneslice::DomainPredicate([top](std::span<const double> y) { return y[top] > 0.0; }));
}

/// A genuinely nonlinear degree-1 function: sqrt of a positive quadratic.
inline coneslice::HomogeneousFn curved_f(int n) {
  const auto top = static_cast<std::size_t>(n + 1);
  return coneslice::HomogeneousFn::smooth("curved", n, 1.0, [top](auto y) {
    using std::sqrt;
    return sqrt(y[top] * y[top] + 0.5 * y[0] * y[0] + 0.25 * y[1] * y[1]);
  });
}

inline coneslice::HomogeneousFn constant_l(int n, double c) {
  return coneslice::HomogeneousFn::smooth("const", n, 0.0, [c](auto y) {
    return typename decltype(y)::value_type(c);
  });
}

}  // namespace fixtures
