#include "elltop/elliptic_top.hpp"

namespace elltop {

namespace {

void check_state(const TopState& s) {
  if (s.spin.rows() != s.spin.cols() || s.spin.rows() != s.params.basis_n()) {
    throw DimensionMismatch("top: spin matrix must be N x N with N = params.basis_n()");
  }
}

}  // namespace

ComponentMap top_j(const ComponentMap& s, const EllipticParams& p, bool relativistic) {
  if (s.n != p.basis_n()) throw DimensionMismatch("top_j: component size mismatch");
  const int n = s.n;
  ComponentMap out(n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const ModeIndex a{a1, a2};
      if (a.is_zero()) continue;
      const Cplx w = mode_omega(a, p);
      const Cplx j = relativistic
                         ? eisenstein_e1(w + p.eta(), p) - eisenstein_e1(w, p)
                         : -eisenstein_e2(w, p);
      out.at(a) = j * s.at(a);
    }
  }
  return out;
}

Matrix top_j_apply(const Matrix& s, const EllipticParams& p, bool relativistic) {
  return compose(top_j(decompose(s), p, relativistic));
}

Matrix top_lax(const TopState& s, Cplx z) {
  check_state(s);
  const int n = s.params.basis_n();
  const ComponentMap c = decompose(s.spin);
  Matrix l = Matrix::Zero(n, n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const ModeIndex a{a1, a2};
      const Cplx w = mode_omega(a, s.params);
      l += c.at(a) * phi_mode(z, s.params.eta() + w, a, s.params) * t_basis(a, n);
    }
  }
  return l;
}

Matrix top_m(const TopState& s, Cplx z) {
  check_state(s);
  const int n = s.params.basis_n();
  const ComponentMap c = decompose(s.spin);
  Matrix out = Matrix::Zero(n, n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const ModeIndex a{a1, a2};
      if (a.is_zero()) continue;
      const Cplx w = mode_omega(a, s.params);
      out -= c.at(a) * phi_mode(z, w, a, s.params) * t_basis(a, n);
    }
  }
  return out;
}

Matrix top_eom(const TopState& s, bool relativistic) {
  check_state(s);
  const Matrix j = top_j_apply(s.spin, s.params, relativistic);
  return s.spin * j - j * s.spin;
}

}  // namespace elltop
