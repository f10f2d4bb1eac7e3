#pragma once

#include "elltop/elliptic.hpp"
#include "elltop/sine_algebra.hpp"
#include "elltop/types.hpp"

namespace elltop {

/// GL(N) elliptic top: the state is the spin matrix S alone.
struct TopState {
  EllipticParams params;
  Matrix spin;

  int size() const { return static_cast<int>(spin.rows()); }
};

/// Inverse-inertia operator in components. Relativistic:
/// J_alpha = E1(omega_alpha + eta) - E1(omega_alpha); non-relativistic:
/// J_alpha = -E2(omega_alpha). The alpha = 0 component is always zero.
ComponentMap top_j(const ComponentMap& s, const EllipticParams& p, bool relativistic = true);

/// compose(top_j(decompose(S))).
Matrix top_j_apply(const Matrix& s, const EllipticParams& p, bool relativistic = true);

/// L(z) = sum_alpha T_alpha S_alpha phi_alpha(z, eta + omega_alpha).
Matrix top_lax(const TopState& s, Cplx z);

/// M(z) = -sum_{alpha != 0} T_alpha S_alpha phi_alpha(z, omega_alpha).
Matrix top_m(const TopState& s, Cplx z);

/// Euler-Arnold right-hand side Sdot = [S, J(S)].
Matrix top_eom(const TopState& s, bool relativistic = true);

}  // namespace elltop
