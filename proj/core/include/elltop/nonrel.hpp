#pragma once

#include <vector>

#include "elltop/elliptic.hpp"
#include "elltop/interacting_tops.hpp"
#include "elltop/multitop.hpp"
#include "elltop/spin_rs.hpp"
#include "elltop/types.hpp"

namespace elltop {

/// Tolerance on the non-relativistic constraints S_ii = 0 / tr S^{ii} = 0.
inline constexpr double kTracelessTol = 1e-10;

/// Spin Calogero-Moser state: in the eta -> 0 limit the velocities decouple
/// from the spin diagonal (which is constrained to zero), so v is part of
/// the state.
struct SpinCMState {
  EllipticParams params;
  Vector q;
  Vector v;
  Matrix spin;  // M x M, diagonal zero

  int sites() const { return static_cast<int>(q.size()); }
};

struct SpinCMDerivs {
  Vector qdot;  // = v
  Vector vdot;
  Matrix spin_dot;
};

SpinCMDerivs spin_cm_eom(const SpinCMState& s);

/// Non-relativistic GL(NM) model; diagonal blocks are trace-free.
struct NonRelMultiTopState {
  EllipticParams params;
  Vector q;
  Vector v;
  Matrix spin;  // NM x NM

  int sites() const { return static_cast<int>(q.size()); }
  int block_n() const { return params.basis_n(); }
  Matrix block(int i, int j) const {
    const int n = block_n();
    return spin.block(i * n, j * n, n, n);
  }
};

struct NonRelMultiTopDerivs {
  Vector qdot;
  Vector vdot;
  Matrix spin_dot;
};

NonRelMultiTopDerivs nonrel_nm_eom(const NonRelMultiTopState& s);

/// Non-relativistic interacting tops (rank-1 reduced): positions, velocities
/// and the M trace-free diagonal blocks.
struct NonRelTopsState {
  EllipticParams params;
  Vector q;
  Vector v;
  std::vector<Matrix> blocks;

  int sites() const { return static_cast<int>(q.size()); }
  int block_n() const { return params.basis_n(); }
};

struct NonRelTopsDerivs {
  Vector qdot;
  Vector vdot;
  std::vector<Matrix> blocks_dot;
};

NonRelTopsDerivs nonrel_tops_eom(const NonRelTopsState& s);

}  // namespace elltop
