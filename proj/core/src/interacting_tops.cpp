#include "elltop/interacting_tops.hpp"

#include "elltop/elliptic_top.hpp"

namespace elltop {

namespace {

void check_rank1(const Rank1State& s) {
  const int m = s.sites();
  const int n = s.block_n();
  if (static_cast<int>(s.xi.size()) != m || static_cast<int>(s.rho.size()) != m) {
    throw DimensionMismatch("rank1: need M xi vectors and M rho vectors");
  }
  for (int i = 0; i < m; ++i) {
    if (s.xi[i].size() != n || s.rho[i].size() != n) {
      throw DimensionMismatch("rank1: xi/rho vectors must have length N");
    }
  }
}

void check_tops(const InteractingTopsState& s) {
  const int m = s.sites();
  const int n = s.block_n();
  if (static_cast<int>(s.blocks.size()) != m) {
    throw DimensionMismatch("interacting tops: need M diagonal blocks");
  }
  for (const Matrix& b : s.blocks) {
    if (b.rows() != n || b.cols() != n) {
      throw DimensionMismatch("interacting tops: blocks must be N x N");
    }
  }
}

}  // namespace

MultiTopState rank1_embed(const Rank1State& s) {
  check_rank1(s);
  const int m = s.sites();
  const int n = s.block_n();
  Matrix spin(n * m, n * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      spin.block(i * n, j * n, n, n) = s.xi[i] * s.rho[j];
    }
  }
  return MultiTopState{s.params, s.q, std::move(spin)};
}

InteractingTopsState rank1_reduce(const Rank1State& s) {
  check_rank1(s);
  const int m = s.sites();
  std::vector<Matrix> blocks(m);
  for (int i = 0; i < m; ++i) blocks[i] = s.xi[i] * s.rho[i];
  return InteractingTopsState{s.params, s.q, std::move(blocks)};
}

void tops_check_positions(const InteractingTopsState& s) {
  const int m = s.sites();
  const int n = s.block_n();
  const double nd = static_cast<double>(n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Cplx qij = s.q[i] - s.q[j];
      if (s.params.near_lattice(qij)) throw Collision(i, j);
      s.params.require_off_lattice(nd * qij, "N*q_ij");
      s.params.require_off_lattice(nd * (qij + s.params.eta()), "N*q_ij+N*eta");
    }
  }
}

ComponentMap i_coeffs(Cplx q_ij, const EllipticParams& p, bool relativistic, int dq_order) {
  const int n = p.basis_n();
  const double nd = static_cast<double>(n);
  const Cplx znq = nd * q_ij;
  ComponentMap out(n);
  if (relativistic) {
    if (dq_order != 0) {
      throw std::invalid_argument("i_coeffs: derivative tables exist only for the non-relativistic coefficients");
    }
    const Cplx zne = nd * (q_ij + p.eta());
    out.at({0, 0}) = eisenstein_e1(zne, p) - eisenstein_e1(znq, p);
    for (int a1 = 0; a1 < n; ++a1) {
      for (int a2 = 0; a2 < n; ++a2) {
        const ModeIndex a{a1, a2};
        if (a.is_zero()) continue;
        const Cplx w = mode_omega(a, p);
        out.at(a) = phi_mode(zne, w, a, p) - phi_mode(znq, w, a, p);
      }
    }
    return out;
  }
  switch (dq_order) {
    case 0:
      out.at({0, 0}) = eisenstein_e1(znq, p);
      break;
    case 1:
      out.at({0, 0}) = -nd * eisenstein_e2(znq, p);
      break;
    case 2:
      out.at({0, 0}) = -nd * nd * eisenstein_e2_prime(znq, p);
      break;
    default:
      throw std::invalid_argument("i_coeffs: dq_order must be in {0, 1, 2}");
  }
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const ModeIndex a{a1, a2};
      if (a.is_zero()) continue;
      const Cplx w = mode_omega(a, p);
      switch (dq_order) {
        case 0:
          out.at(a) = phi_mode(znq, w, a, p);
          break;
        case 1:
          out.at(a) = nd * phi_mode_dz(znq, w, a, p);
          break;
        case 2:
          out.at(a) = nd * nd * phi_mode_dz2(znq, w, a, p);
          break;
      }
    }
  }
  return out;
}

namespace {

Matrix apply_table(const Matrix& block, const ComponentMap& table, bool negate_index) {
  const int n = table.n;
  const ComponentMap c = decompose(block);
  Matrix out = Matrix::Zero(n, n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const ModeIndex a{a1, a2};
      const ModeIndex idx = negate_index ? mode_neg(a, n) : a;
      out += c.at(a) * table.at(idx) * t_basis(a, n);
    }
  }
  return out;
}

}  // namespace

Matrix j_check_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic) {
  return apply_table(block, i_coeffs(q_ij, p, relativistic, 0), false);
}

Matrix j_tilde_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic) {
  return apply_table(block, i_coeffs(q_ij, p, relativistic, 0), true);
}

Matrix j_check_nonrel_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p) {
  return apply_table(block, i_coeffs(q_ij, p, false, 1), false);
}

Matrix j_eta_q_tensor(Cplx q_ij, const EllipticParams& p) {
  const int n = p.basis_n();
  Matrix out = Matrix::Zero(n * n, n * n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const Cplx w = mode_omega({a1, a2}, p);
      const Cplx coef =
          eisenstein_e1(w + q_ij + p.eta(), p) - eisenstein_e1(w + q_ij, p);
      out += coef * kron(t_basis_at(a1, a2, n), t_basis_at(-a1, -a2, n));
    }
  }
  return out;
}

Matrix i_tensor(Cplx q_ij, const EllipticParams& p, bool relativistic) {
  const int n = p.basis_n();
  const ComponentMap table = i_coeffs(q_ij, p, relativistic, 0);
  Matrix out = Matrix::Zero(n * n, n * n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      out += table.at({a1, a2}) * kron(t_basis_at(a1, a2, n), t_basis_at(-a1, -a2, n));
    }
  }
  return out;
}

InteractingTopsDerivs tops_eom(const InteractingTopsState& s) {
  check_tops(s);
  tops_check_positions(s);
  const int m = s.sites();
  const int n = s.block_n();

  InteractingTopsDerivs d;
  d.qdot = Vector(m);
  d.blocks_dot.resize(m);
  for (int i = 0; i < m; ++i) {
    d.qdot[i] = s.blocks[i].trace() / static_cast<double>(n);
    const Matrix j = top_j_apply(s.blocks[i], s.params, true);
    Matrix v = s.blocks[i] * j - j * s.blocks[i];
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      v += s.blocks[i] * j_tilde_apply(s.blocks[k], s.q[k] - s.q[i], s.params, true);
      v -= j_check_apply(s.blocks[k], s.q[i] - s.q[k], s.params, true) * s.blocks[i];
    }
    d.blocks_dot[i] = v;
  }
  return d;
}

Rank1Derivs rank1_eom(const Rank1State& s) { return tops_eom(rank1_reduce(s)); }

}  // namespace elltop
