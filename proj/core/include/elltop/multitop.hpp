#pragma once

#include "elltop/elliptic.hpp"
#include "elltop/sine_algebra.hpp"
#include "elltop/types.hpp"

namespace elltop {

/// GL(NM) model: M particle positions and an NM x NM spin matrix viewed as an
/// M x M grid of N x N blocks S^{ij}. Velocities are derived:
/// qdot_i = tr(S^{ii}) / N on-constraint.
struct MultiTopState {
  EllipticParams params;  // params.basis_n() is the block size N
  Vector q;
  Matrix spin;  // NM x NM

  int sites() const { return static_cast<int>(q.size()); }
  int block_n() const { return params.basis_n(); }
  Matrix block(int i, int j) const {
    const int n = block_n();
    return spin.block(i * n, j * n, n, n);
  }
};

/// Which grouping of the off-diagonal block equation to evaluate; `compact`
/// keeps the k = i, j terms inside the sums, `split` writes them out.
enum class BlockForm { compact, split };

struct MultiTopDerivs {
  Vector qdot;
  Matrix spin_dot;  // NM x NM
};

/// J^{eta,q_ij} acting on one block, all modes included. Relativistic
/// coefficient E1(omega+q_ij+eta) - E1(omega+q_ij); non-relativistic
/// -E2(omega+q_ij).
ComponentMap j_eta_q(const ComponentMap& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic = true);

Matrix j_eta_q_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic = true);

/// d/dq_i of the non-relativistic operator: -sum T_alpha S_alpha E2'(omega+q_ij).
Matrix j_q_dq_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p);

/// Block Lax matrix: L^{ij}(z) = sum_alpha T_alpha S^{ij}_alpha
/// phi_alpha(z, omega_alpha + q_ij + eta); Res_{z=0} L(z) = S.
Matrix nm_lax(const MultiTopState& s, Cplx z);

/// Accompanying matrix; the diagonal blocks carry the extra
/// -(E1(z) + E1(eta)) S_0^{ii} T_0 term.
Matrix nm_m(const MultiTopState& s, Cplx z);

/// Equations of motion for all blocks plus qdot_i = tr(S^{ii})/N.
MultiTopDerivs nm_eom(const MultiTopState& s, BlockForm form = BlockForm::compact);

/// mu_0^i = qdot_i - tr(S^{ii})/N.
Vector nm_mu(const MultiTopState& s, const Vector& qdot);

/// Off-constraint correction: sum_{ij,alpha} E_ij x T_alpha (mu_0^i - mu_0^j)
/// S^{ij}_alpha f_alpha(z, omega_alpha + q_ij + eta).
Matrix nm_mu_term(const MultiTopState& s, const Vector& qdot, Cplx z);

void nm_check_positions(const MultiTopState& s);

}  // namespace elltop
