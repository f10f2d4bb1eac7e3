#pragma once

#include "elltop/elliptic.hpp"
#include "elltop/types.hpp"

namespace elltop {

/// Spin Ruijsenaars-Schneider state: M particle positions q_i and the M x M
/// spin matrix S. Velocities are not stored; on-constraint states have
/// qdot_i = S_ii, and mu_i = qdot_i - S_ii is a derived diagnostic.
struct SpinRSState {
  EllipticParams params;  // basis size is conceptually 1 for this family
  Vector q;
  Matrix spin;

  int sites() const { return static_cast<int>(q.size()); }
};

/// Which algebraic form of the off-diagonal spin equation to evaluate. Both
/// are equivalent; `grouped` factors the (S_ii - S_jj) term out of the sum.
enum class RSForm { grouped, summed };

struct RSDerivs {
  Vector qdot;
  Matrix spin_dot;
};

/// L_ij(z) = S_ij phi(z, q_ij + eta).
Matrix rs_lax(const SpinRSState& s, Cplx z);

/// M_ij(z): diagonal -(E1(z) + E1(eta)) S_ii, off-diagonal -S_ij phi(z, q_ij).
Matrix rs_m(const SpinRSState& s, Cplx z);

/// Equations of motion: qdot_i = S_ii, Sdot_ii from the pairwise E1 sum,
/// Sdot_ij from the chosen off-diagonal form.
RSDerivs rs_eom(const SpinRSState& s, RSForm form = RSForm::grouped);

/// mu_i = qdot_i - S_ii.
Vector rs_mu(const SpinRSState& s, const Vector& qdot);

/// Off-constraint correction to the Lax equation:
/// sum_ij E_ij (mu_i - mu_j) S_ij f(z, q_ij + eta).
Matrix rs_mu_term(const SpinRSState& s, const Vector& qdot, Cplx z);

/// Throws Collision(i, j) if any pairwise difference q_i - q_j sits on the
/// lattice, and PoleProximity if q_ij +- eta does.
void rs_check_positions(const SpinRSState& s);

}  // namespace elltop
