#pragma once

// Test-side oracles, independent of the library's evaluation path.

#include <cmath>
#include <complex>

#include "elltop/types.hpp"

namespace oracle {

using elltop::Cplx;
using elltop::kPi;

// Brute-force summation of the theta series over k in [-400, 400] with no
// argument reduction; term-wise derivatives in z.
inline Cplx theta_brute(Cplx z, Cplx tau, int order = 0) {
  Cplx sum{0.0, 0.0};
  for (int k = -400; k <= 400; ++k) {
    const double m = k + 0.5;
    const Cplx ipi{0.0, kPi};
    Cplx term = std::exp(ipi * tau * m * m + 2.0 * ipi * (z + 0.5) * m);
    for (int j = 0; j < order; ++j) term *= 2.0 * ipi * m;
    sum += term;
  }
  return sum;
}

inline double rel_err(Cplx got, Cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double rel_err(const elltop::Matrix& got, const elltop::Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

// Central finite difference of a callable f at x with step h.
template <typename F>
Cplx central_diff(F&& f, Cplx x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
