#include "elltop/multitop.hpp"

#include "elltop/elliptic_top.hpp"

namespace elltop {

namespace {

void check_state(const MultiTopState& s) {
  const int nm = s.block_n() * s.sites();
  if (s.spin.rows() != nm || s.spin.cols() != nm) {
    throw DimensionMismatch("multitop: spin matrix must be NM x NM");
  }
}

}  // namespace

void nm_check_positions(const MultiTopState& s) {
  const int m = s.sites();
  const int n = s.block_n();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Cplx qij = s.q[i] - s.q[j];
      if (s.params.near_lattice(qij)) throw Collision(i, j);
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          const Cplx w = mode_omega({a1, a2}, s.params);
          s.params.require_off_lattice(w + qij, "omega_alpha+q_ij");
          s.params.require_off_lattice(w + qij + s.params.eta(), "omega_alpha+q_ij+eta");
        }
      }
    }
  }
}

ComponentMap j_eta_q(const ComponentMap& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic) {
  if (block.n != p.basis_n()) throw DimensionMismatch("j_eta_q: component size mismatch");
  const int n = block.n;
  ComponentMap out(n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const ModeIndex a{a1, a2};
      const Cplx w = mode_omega(a, p);
      const Cplx coef = relativistic
                            ? eisenstein_e1(w + q_ij + p.eta(), p) - eisenstein_e1(w + q_ij, p)
                            : -eisenstein_e2(w + q_ij, p);
      out.at(a) = coef * block.at(a);
    }
  }
  return out;
}

Matrix j_eta_q_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p,
                     bool relativistic) {
  return compose(j_eta_q(decompose(block), q_ij, p, relativistic));
}

Matrix j_q_dq_apply(const Matrix& block, Cplx q_ij, const EllipticParams& p) {
  const ComponentMap c = decompose(block);
  const int n = c.n;
  ComponentMap out(n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const ModeIndex a{a1, a2};
      const Cplx w = mode_omega(a, p);
      out.at(a) = -eisenstein_e2_prime(w + q_ij, p) * c.at(a);
    }
  }
  return compose(out);
}

Matrix nm_lax(const MultiTopState& s, Cplx z) {
  check_state(s);
  nm_check_positions(s);
  const int m = s.sites();
  const int n = s.block_n();
  Matrix l = Matrix::Zero(n * m, n * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const ComponentMap c = decompose(s.block(i, j));
      const Cplx qij = s.q[i] - s.q[j];
      Matrix b = Matrix::Zero(n, n);
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          const ModeIndex a{a1, a2};
          const Cplx w = mode_omega(a, s.params);
          b += c.at(a) * phi_mode(z, w + qij + s.params.eta(), a, s.params) * t_basis(a, n);
        }
      }
      l.block(i * n, j * n, n, n) = b;
    }
  }
  return l;
}

Matrix nm_m(const MultiTopState& s, Cplx z) {
  check_state(s);
  nm_check_positions(s);
  const int m = s.sites();
  const int n = s.block_n();
  const Cplx e1z = eisenstein_e1(z, s.params);
  const Cplx e1eta = eisenstein_e1(s.params.eta(), s.params);
  Matrix out = Matrix::Zero(n * m, n * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const ComponentMap c = decompose(s.block(i, j));
      Matrix b = Matrix::Zero(n, n);
      if (i == j) {
        b -= c.at({0, 0}) * (e1z + e1eta) * Matrix::Identity(n, n);
        for (int a1 = 0; a1 < n; ++a1) {
          for (int a2 = 0; a2 < n; ++a2) {
            const ModeIndex a{a1, a2};
            if (a.is_zero()) continue;
            const Cplx w = mode_omega(a, s.params);
            b -= c.at(a) * phi_mode(z, w, a, s.params) * t_basis(a, n);
          }
        }
      } else {
        const Cplx qij = s.q[i] - s.q[j];
        for (int a1 = 0; a1 < n; ++a1) {
          for (int a2 = 0; a2 < n; ++a2) {
            const ModeIndex a{a1, a2};
            const Cplx w = mode_omega(a, s.params);
            b -= c.at(a) * phi_mode(z, w + qij, a, s.params) * t_basis(a, n);
          }
        }
      }
      out.block(i * n, j * n, n, n) = b;
    }
  }
  return out;
}

MultiTopDerivs nm_eom(const MultiTopState& s, BlockForm form) {
  check_state(s);
  nm_check_positions(s);
  const int m = s.sites();
  const int n = s.block_n();

  std::vector<Matrix> blocks(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) blocks[static_cast<size_t>(i) * m + j] = s.block(i, j);
  }
  const auto blk = [&](int i, int j) -> const Matrix& {
    return blocks[static_cast<size_t>(i) * m + j];
  };

  // J^eta of every diagonal block, and J^{eta,q_ij} of every off-site pairing
  // that the sums need: jq(i,j) = J^{eta,q_ij}(S^{ij}) for i != j.
  std::vector<Matrix> jdiag(m);
  for (int i = 0; i < m; ++i) jdiag[i] = top_j_apply(blk(i, i), s.params, true);
  std::vector<Matrix> jq(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      jq[static_cast<size_t>(i) * m + j] =
          j_eta_q_apply(blk(i, j), s.q[i] - s.q[j], s.params, true);
    }
  }
  const auto jq_at = [&](int i, int j) -> const Matrix& {
    return jq[static_cast<size_t>(i) * m + j];
  };

  MultiTopDerivs d;
  d.qdot = Vector(m);
  for (int i = 0; i < m; ++i) d.qdot[i] = blk(i, i).trace() / static_cast<double>(n);
  d.spin_dot = Matrix::Zero(n * m, n * m);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Matrix v = Matrix::Zero(n, n);
      if (form == BlockForm::compact || i == j) {
        v += blk(i, j) * jdiag[j] - jdiag[i] * blk(i, j);
        for (int k = 0; k < m; ++k) {
          if (k != j) v += blk(i, k) * jq_at(k, j);
        }
        for (int k = 0; k < m; ++k) {
          if (k != i) v -= jq_at(i, k) * blk(k, j);
        }
      } else {
        const Matrix jij = jq_at(i, j);
        v += blk(i, j) * jdiag[j] - jdiag[i] * blk(i, j);
        v += blk(i, i) * jij - jij * blk(j, j);
        for (int k = 0; k < m; ++k) {
          if (k == i || k == j) continue;
          v += blk(i, k) * jq_at(k, j) - jq_at(i, k) * blk(k, j);
        }
      }
      d.spin_dot.block(i * n, j * n, n, n) = v;
    }
  }
  return d;
}

Vector nm_mu(const MultiTopState& s, const Vector& qdot) {
  check_state(s);
  if (qdot.size() != s.q.size()) throw DimensionMismatch("nm_mu: qdot size mismatch");
  const int m = s.sites();
  Vector mu(m);
  for (int i = 0; i < m; ++i) {
    mu[i] = qdot[i] - s.block(i, i).trace() / static_cast<double>(s.block_n());
  }
  return mu;
}

Matrix nm_mu_term(const MultiTopState& s, const Vector& qdot, Cplx z) {
  const Vector mu = nm_mu(s, qdot);
  const int m = s.sites();
  const int n = s.block_n();
  Matrix out = Matrix::Zero(n * m, n * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;  // mu difference vanishes
      const ComponentMap c = decompose(s.block(i, j));
      const Cplx qij = s.q[i] - s.q[j];
      Matrix b = Matrix::Zero(n, n);
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          const ModeIndex a{a1, a2};
          const Cplx w = mode_omega(a, s.params);
          b += (mu[i] - mu[j]) * c.at(a) *
               f_mode(z, w + qij + s.params.eta(), a, s.params) * t_basis(a, n);
        }
      }
      out.block(i * n, j * n, n, n) = b;
    }
  }
  return out;
}

}  // namespace elltop
