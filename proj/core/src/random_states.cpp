#include "elltop/random_states.hpp"

namespace elltop {

namespace {

bool positions_admissible(const Vector& q, const EllipticParams& p, double margin) {
  const int m = static_cast<int>(q.size());
  const int n = p.basis_n();
  const double nd = static_cast<double>(n);
  const Cplx eta = p.eta();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Cplx qij = q[i] - q[j];
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          const Cplx w = mode_omega({a1, a2}, p);
          if (lattice_distance(w + qij, p.tau()) < margin) return false;
          if (lattice_distance(w + qij + eta, p.tau()) < margin) return false;
          if (lattice_distance(w + qij - eta, p.tau()) < margin) return false;
        }
      }
      if (lattice_distance(nd * qij, p.tau()) < margin) return false;
      if (lattice_distance(nd * (qij + eta), p.tau()) < margin) return false;
      if (lattice_distance(nd * (qij - eta), p.tau()) < margin) return false;
    }
  }
  return true;
}

Matrix random_matrix(Rng& rng, int rows, int cols, double scale) {
  Matrix s(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) s(i, j) = scale * rng.cnormal();
  }
  return s;
}

}  // namespace

Vector random_positions(Rng& rng, int m, const EllipticParams& p,
                        const RandomStateOptions& opt) {
  const double imtau = p.tau().imag();
  for (int attempt = 0; attempt < opt.max_tries; ++attempt) {
    Vector q(m);
    for (int i = 0; i < m; ++i) {
      q[i] = Cplx{rng.uniform(-0.5, 0.5), rng.uniform(-imtau / 2.0, imtau / 2.0)};
    }
    if (positions_admissible(q, p, opt.margin)) return q;
  }
  throw Error("random_positions: no admissible configuration found; margin too large?");
}

SpinRSState random_rs_state(Rng& rng, const EllipticParams& p, int m,
                            const RandomStateOptions& opt) {
  Vector q = random_positions(rng, m, p, opt);
  Matrix s = random_matrix(rng, m, m, opt.spin_scale);
  return SpinRSState{p, std::move(q), std::move(s)};
}

TopState random_top_state(Rng& rng, const EllipticParams& p, const RandomStateOptions& opt) {
  const int n = p.basis_n();
  return TopState{p, random_matrix(rng, n, n, opt.spin_scale)};
}

MultiTopState random_multitop_state(Rng& rng, const EllipticParams& p, int m,
                                    const RandomStateOptions& opt) {
  Vector q = random_positions(rng, m, p, opt);
  const int nm = p.basis_n() * m;
  Matrix s = random_matrix(rng, nm, nm, opt.spin_scale);
  return MultiTopState{p, std::move(q), std::move(s)};
}

Rank1State random_rank1_state(Rng& rng, const EllipticParams& p, int m,
                              const RandomStateOptions& opt) {
  Vector q = random_positions(rng, m, p, opt);
  const int n = p.basis_n();
  std::vector<Vector> xi(m);
  std::vector<RowVector> rho(m);
  for (int i = 0; i < m; ++i) {
    xi[i] = random_matrix(rng, n, 1, opt.spin_scale).col(0);
    rho[i] = random_matrix(rng, 1, n, opt.spin_scale).row(0);
  }
  return Rank1State{p, std::move(q), std::move(xi), std::move(rho)};
}

SpinCMState random_cm_state(Rng& rng, const EllipticParams& p, int m,
                            const RandomStateOptions& opt) {
  Vector q = random_positions(rng, m, p, opt);
  Matrix s = random_matrix(rng, m, m, opt.spin_scale);
  s.diagonal().setZero();
  Vector v(m);
  for (int i = 0; i < m; ++i) v[i] = opt.spin_scale * rng.cnormal();
  return SpinCMState{p, std::move(q), std::move(v), std::move(s)};
}

NonRelMultiTopState random_nonrel_mt_state(Rng& rng, const EllipticParams& p, int m,
                                           const RandomStateOptions& opt) {
  Vector q = random_positions(rng, m, p, opt);
  const int n = p.basis_n();
  Matrix s = random_matrix(rng, n * m, n * m, opt.spin_scale);
  for (int i = 0; i < m; ++i) {
    const Cplx tr = s.block(i * n, i * n, n, n).trace() / static_cast<double>(n);
    s.block(i * n, i * n, n, n) -= tr * Matrix::Identity(n, n);
  }
  Vector v(m);
  for (int i = 0; i < m; ++i) v[i] = opt.spin_scale * rng.cnormal();
  return NonRelMultiTopState{p, std::move(q), std::move(v), std::move(s)};
}

NonRelTopsState random_nonrel_tops_state(Rng& rng, const EllipticParams& p, int m,
                                         const RandomStateOptions& opt) {
  Vector q = random_positions(rng, m, p, opt);
  const int n = p.basis_n();
  std::vector<Matrix> blocks(m);
  for (int i = 0; i < m; ++i) {
    Vector xi = random_matrix(rng, n, 1, opt.spin_scale).col(0);
    RowVector rho = random_matrix(rng, 1, n, opt.spin_scale).row(0);
    const Cplx overlap = rho * xi;
    rho -= (overlap / xi.squaredNorm()) * xi.adjoint();
    blocks[i] = xi * rho;
  }
  Vector v(m);
  for (int i = 0; i < m; ++i) v[i] = opt.spin_scale * rng.cnormal();
  return NonRelTopsState{p, std::move(q), std::move(v), std::move(blocks)};
}

}  // namespace elltop
