#include "elltop/nonrel.hpp"

#include "elltop/elliptic_top.hpp"

namespace elltop {

namespace {

void require_traceless(Cplx tr, const char* what) {
  if (std::abs(tr) > kTracelessTol) {
    throw ConstraintViolated(std::string(what) + " must be trace-free in the non-relativistic model");
  }
}

}  // namespace

SpinCMDerivs spin_cm_eom(const SpinCMState& s) {
  const int m = s.sites();
  if (s.spin.rows() != m || s.spin.cols() != m || s.v.size() != m) {
    throw DimensionMismatch("spin CM: spin must be M x M and v of length M");
  }
  for (int i = 0; i < m; ++i) require_traceless(s.spin(i, i), "S_ii");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && s.params.near_lattice(s.q[i] - s.q[j])) throw Collision(i, j);
    }
  }

  SpinCMDerivs d;
  d.qdot = s.v;
  d.vdot = Vector::Zero(m);
  d.spin_dot = Matrix::Zero(m, m);
  Matrix e2q = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) e2q(i, j) = eisenstein_e2(s.q[i] - s.q[j], s.params);
    }
  }
  for (int i = 0; i < m; ++i) {
    Cplx acc{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      acc += s.spin(i, k) * s.spin(k, i) * eisenstein_e2_prime(s.q[i] - s.q[k], s.params);
    }
    d.vdot[i] = acc;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      Cplx v{0.0, 0.0};
      for (int k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        v += s.spin(i, k) * s.spin(k, j) * (e2q(i, k) - e2q(k, j));
      }
      d.spin_dot(i, j) = v;
    }
  }
  return d;
}

NonRelMultiTopDerivs nonrel_nm_eom(const NonRelMultiTopState& s) {
  const int m = s.sites();
  const int n = s.block_n();
  if (s.spin.rows() != n * m || s.spin.cols() != n * m || s.v.size() != m) {
    throw DimensionMismatch("nonrel multitop: spin must be NM x NM and v of length M");
  }
  for (int i = 0; i < m; ++i) {
    require_traceless(s.block(i, i).trace() / static_cast<double>(n), "tr S^{ii}/N");
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && s.params.near_lattice(s.q[i] - s.q[j])) throw Collision(i, j);
    }
  }

  std::vector<Matrix> blocks(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) blocks[static_cast<size_t>(i) * m + j] = s.block(i, j);
  }
  const auto blk = [&](int i, int j) -> const Matrix& {
    return blocks[static_cast<size_t>(i) * m + j];
  };

  std::vector<Matrix> jdiag(m);
  for (int i = 0; i < m; ++i) jdiag[i] = top_j_apply(blk(i, i), s.params, false);
  std::vector<Matrix> jq(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) {
        jq[static_cast<size_t>(i) * m + j] =
            j_eta_q_apply(blk(i, j), s.q[i] - s.q[j], s.params, false);
      }
    }
  }
  const auto jq_at = [&](int i, int j) -> const Matrix& {
    return jq[static_cast<size_t>(i) * m + j];
  };

  NonRelMultiTopDerivs d;
  d.qdot = s.v;
  d.vdot = Vector::Zero(m);
  d.spin_dot = Matrix::Zero(n * m, n * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Matrix v = blk(i, j) * jdiag[j] - jdiag[i] * blk(i, j);
      for (int k = 0; k < m; ++k) {
        if (k != j) v += blk(i, k) * jq_at(k, j);
      }
      for (int k = 0; k < m; ++k) {
        if (k != i) v -= jq_at(i, k) * blk(k, j);
      }
      d.spin_dot.block(i * n, j * n, n, n) = v;
    }
  }
  // qddot_i = -(1/N) sum_k d/dq_i tr(J^{q_ik}(S^{ik}) S^{ki}), with the
  // derivative taken analytically through E2'.
  for (int i = 0; i < m; ++i) {
    Cplx acc{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      acc += (j_q_dq_apply(blk(i, k), s.q[i] - s.q[k], s.params) * blk(k, i)).trace();
    }
    d.vdot[i] = -acc / static_cast<double>(n);
  }
  return d;
}

NonRelTopsDerivs nonrel_tops_eom(const NonRelTopsState& s) {
  const int m = s.sites();
  const int n = s.block_n();
  if (static_cast<int>(s.blocks.size()) != m || s.v.size() != m) {
    throw DimensionMismatch("nonrel tops: need M blocks and M velocities");
  }
  for (int i = 0; i < m; ++i) {
    require_traceless(s.blocks[i].trace() / static_cast<double>(n), "tr S^{ii}/N");
  }
  const double nd = static_cast<double>(n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Cplx qij = s.q[i] - s.q[j];
      if (s.params.near_lattice(qij)) throw Collision(i, j);
      s.params.require_off_lattice(nd * qij, "N*q_ij");
    }
  }

  NonRelTopsDerivs d;
  d.qdot = s.v;
  d.vdot = Vector::Zero(m);
  d.blocks_dot.resize(m);
  for (int i = 0; i < m; ++i) {
    const Matrix j = top_j_apply(s.blocks[i], s.params, false);
    Matrix total = j;
    for (int k = 0; k < m; ++k) {
      if (k != i) total += j_check_nonrel_apply(s.blocks[k], s.q[i] - s.q[k], s.params);
    }
    d.blocks_dot[i] = s.blocks[i] * total - total * s.blocks[i];
    // qddot_i = -(1/N) sum_k tr(S^{ii} d/dq_i Jcheck^{q_ik}(S^{kk}))
    Cplx acc{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      const ComponentMap table = i_coeffs(s.q[i] - s.q[k], s.params, false, 2);
      const ComponentMap ck = decompose(s.blocks[k]);
      Matrix dj = Matrix::Zero(n, n);
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          const ModeIndex a{a1, a2};
          dj += ck.at(a) * table.at(a) * t_basis(a, n);
        }
      }
      acc += (s.blocks[i] * dj).trace();
    }
    d.vdot[i] = -acc / nd;
  }
  return d;
}

}  // namespace elltop
