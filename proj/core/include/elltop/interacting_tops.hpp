#pragma once

#include <vector>

#include "elltop/elliptic.hpp"
#include "elltop/multitop.hpp"
#include "elltop/sine_algebra.hpp"
#include "elltop/types.hpp"

namespace elltop {

/// Rank-1 data: S^{ij} = xi^i (x) rho^j, so the full NM x NM spin matrix has
/// rank one. xi are M column vectors of height N, rho are M row vectors.
struct Rank1State {
  EllipticParams params;
  Vector q;
  std::vector<Vector> xi;
  std::vector<RowVector> rho;

  int sites() const { return static_cast<int>(q.size()); }
  int block_n() const { return params.basis_n(); }
};

/// Closed system of M interacting tops: positions plus the M diagonal blocks
/// S^{ii}. This is the state the rank-1 reduced dynamics evolves.
struct InteractingTopsState {
  EllipticParams params;
  Vector q;
  std::vector<Matrix> blocks;

  int sites() const { return static_cast<int>(q.size()); }
  int block_n() const { return params.basis_n(); }
};

struct InteractingTopsDerivs {
  Vector qdot;
  std::vector<Matrix> blocks_dot;
};
using Rank1Derivs = InteractingTopsDerivs;

/// Assemble the full NM x NM state with S^{ij} = xi^i (x) rho^j.
MultiTopState rank1_embed(const Rank1State& s);

/// Keep only the diagonal blocks S^{ii} = xi^i (x) rho^i.
InteractingTopsState rank1_reduce(const Rank1State& s);

/// Coefficient table of the reduced pair operators. Relativistic
/// (dq_order = 0 only):
///   I_0 = E1(N q_ij + N eta) - E1(N q_ij),
///   I_alpha = phi_alpha(N q_ij + N eta, omega_alpha) - phi_alpha(N q_ij, omega_alpha).
/// Non-relativistic: F_0 = E1(N q_ij), F_alpha = phi_alpha(N q_ij, omega_alpha),
/// differentiated dq_order times in q_i (dq_order in {0, 1, 2}).
ComponentMap i_coeffs(Cplx q_ij, const EllipticParams& p, bool relativistic = true,
                      int dq_order = 0);

/// sum_alpha T_alpha S_alpha I_alpha^{eta,q_ij} applied to a diagonal block.
Matrix j_check_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic = true);

/// Same with I_{-alpha}.
Matrix j_tilde_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic = true);

/// Non-relativistic reduced operator: sum_alpha T_alpha S_alpha (d/dq F_alpha).
Matrix j_check_nonrel_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p);

/// Tensor form sum_alpha T_alpha x T_{-alpha} (E1(omega+q_ij+eta) - E1(omega+q_ij)).
Matrix j_eta_q_tensor(Cplx q_ij, const EllipticParams& p);

/// Tensor form sum_alpha I_alpha T_alpha x T_{-alpha}; equals
/// j_eta_q_tensor(q_ij) * permutation(N) through the Fourier identities.
Matrix i_tensor(Cplx q_ij, const EllipticParams& p, bool relativistic = true);

/// Reduced equations of motion of the interacting tops.
InteractingTopsDerivs tops_eom(const InteractingTopsState& s);

/// Reduced equations evaluated on rank-1 data; identical to the diagonal
/// blocks of nm_eom(rank1_embed(s)).
Rank1Derivs rank1_eom(const Rank1State& s);

void tops_check_positions(const InteractingTopsState& s);

}  // namespace elltop
