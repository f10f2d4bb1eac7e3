#include "elltop/spin_rs.hpp"

namespace elltop {

namespace {

void check_state(const SpinRSState& s) {
  if (s.spin.rows() != s.sites() || s.spin.cols() != s.sites()) {
    throw DimensionMismatch("spin RS: spin matrix must be M x M");
  }
}

}  // namespace

void rs_check_positions(const SpinRSState& s) {
  const int m = s.sites();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Cplx qij = s.q[i] - s.q[j];
      if (s.params.near_lattice(qij)) throw Collision(i, j);
      s.params.require_off_lattice(qij + s.params.eta(), "q_ij+eta");
      s.params.require_off_lattice(qij - s.params.eta(), "q_ij-eta");
    }
  }
}

Matrix rs_lax(const SpinRSState& s, Cplx z) {
  check_state(s);
  rs_check_positions(s);
  const int m = s.sites();
  Matrix l(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      l(i, j) = s.spin(i, j) * kronecker_phi(z, s.q[i] - s.q[j] + s.params.eta(), s.params);
    }
  }
  return l;
}

Matrix rs_m(const SpinRSState& s, Cplx z) {
  check_state(s);
  rs_check_positions(s);
  const int m = s.sites();
  const Cplx e1z = eisenstein_e1(z, s.params);
  const Cplx e1eta = eisenstein_e1(s.params.eta(), s.params);
  Matrix out(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) {
        out(i, i) = -(e1z + e1eta) * s.spin(i, i);
      } else {
        out(i, j) = -s.spin(i, j) * kronecker_phi(z, s.q[i] - s.q[j], s.params);
      }
    }
  }
  return out;
}

RSDerivs rs_eom(const SpinRSState& s, RSForm form) {
  check_state(s);
  rs_check_positions(s);
  const int m = s.sites();
  const Cplx eta = s.params.eta();

  // Cache E1(q_ij) and E1(q_ij + eta) for all ordered pairs.
  Matrix e1q = Matrix::Zero(m, m), e1qe = Matrix::Zero(m, m), e1qme = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Cplx qij = s.q[i] - s.q[j];
      e1q(i, j) = eisenstein_e1(qij, s.params);
      e1qe(i, j) = eisenstein_e1(qij + eta, s.params);
      e1qme(i, j) = eisenstein_e1(qij - eta, s.params);
    }
  }

  RSDerivs d;
  d.qdot = s.spin.diagonal();
  d.spin_dot = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    Cplx acc{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      acc += s.spin(i, k) * s.spin(k, i) * (e1qe(i, k) + e1qme(i, k) - 2.0 * e1q(i, k));
    }
    d.spin_dot(i, i) = -acc;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      Cplx v{0.0, 0.0};
      if (form == RSForm::grouped) {
        v = s.spin(i, j) * (s.spin(i, i) - s.spin(j, j)) * (e1qe(i, j) - e1q(i, j));
        for (int k = 0; k < m; ++k) {
          if (k == i || k == j) continue;
          v += s.spin(i, k) * s.spin(k, j) *
               (e1qe(k, j) - e1q(k, j) - e1qe(i, k) + e1q(i, k));
        }
      } else {
        for (int k = 0; k < m; ++k) {
          if (k != j) v += s.spin(i, k) * s.spin(k, j) * (e1qe(k, j) - e1q(k, j));
        }
        for (int k = 0; k < m; ++k) {
          if (k != i) v -= s.spin(i, k) * s.spin(k, j) * (e1qe(i, k) - e1q(i, k));
        }
      }
      d.spin_dot(i, j) = v;
    }
  }
  return d;
}

Vector rs_mu(const SpinRSState& s, const Vector& qdot) {
  check_state(s);
  if (qdot.size() != s.q.size()) throw DimensionMismatch("rs_mu: qdot size mismatch");
  return qdot - s.spin.diagonal();
}

Matrix rs_mu_term(const SpinRSState& s, const Vector& qdot, Cplx z) {
  const Vector mu = rs_mu(s, qdot);
  const int m = s.sites();
  Matrix out = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      out(i, j) = (mu[i] - mu[j]) * s.spin(i, j) *
                  kronecker_f(z, s.q[i] - s.q[j] + s.params.eta(), s.params);
    }
  }
  return out;
}

}  // namespace elltop
