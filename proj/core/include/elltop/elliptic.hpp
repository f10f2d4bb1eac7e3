#pragma once

#include "elltop/mode_index.hpp"
#include "elltop/types.hpp"

namespace elltop {

/// Distance below which an argument counts as a lattice point of Z + tau*Z,
/// measured after reduction to the fundamental cell.
struct PoleTolerance {
  double eps_pole = 1e-9;
};

/// Ambient analytic data shared by every model: the modulus tau of the
/// elliptic curve, the sine-algebra basis size N and the relativistic
/// deformation parameter eta. Immutable after construction; the values
/// theta'(0) and theta'''(0) are cached here.
class EllipticParams {
 public:
  EllipticParams(Cplx tau, int basis_n, Cplx eta, PoleTolerance tol = {});

  Cplx tau() const { return tau_; }
  int basis_n() const { return basis_n_; }
  Cplx eta() const { return eta_; }
  double eps_pole() const { return tol_.eps_pole; }

  Cplx theta_prime0() const { return theta_prime0_; }
  Cplx theta_triple0() const { return theta_triple0_; }

  /// Same tau/tolerance, different eta (used by the eta -> 0 limit checks).
  EllipticParams with_eta(Cplx eta) const { return {tau_, basis_n_, eta, tol_}; }
  /// Same tau/eta/tolerance, different basis size.
  EllipticParams with_basis_n(int n) const { return {tau_, n, eta_, tol_}; }

  bool near_lattice(Cplx z) const;
  /// Throws PoleProximity naming `what` if z is within eps_pole of the lattice.
  void require_off_lattice(Cplx z, const char* what) const;

 private:
  Cplx tau_;
  int basis_n_;
  Cplx eta_;
  PoleTolerance tol_;
  Cplx theta_prime0_;
  Cplx theta_triple0_;
};

/// order-th z-derivative of the odd theta function
///   theta(z) = sum_k exp(pi i tau (k+1/2)^2 + 2 pi i (z+1/2)(k+1/2)),
/// computed by term-wise differentiation with argument reduction to the
/// fundamental cell. order in {0,1,2,3}.
Cplx theta(Cplx z, Cplx tau, int order = 0);

/// All derivatives 0..max_order in one series pass (shared exponentials).
void theta_all(Cplx z, Cplx tau, int max_order, Cplx out[4]);

/// Distance from z to the nearest point of Z + tau*Z.
double lattice_distance(Cplx z, Cplx tau);

/// omega_alpha = (a1 + a2*tau)/N for a canonical index.
Cplx mode_omega(ModeIndex alpha, const EllipticParams& p);

/// E1(z) = theta'(z)/theta(z). Simple pole at the lattice, residue 1.
Cplx eisenstein_e1(Cplx z, const EllipticParams& p);

/// E2(z) = -E1'(z); double-periodic, second-order pole at the lattice.
Cplx eisenstein_e2(Cplx z, const EllipticParams& p);

/// E2'(z) = d/dz E2(z).
Cplx eisenstein_e2_prime(Cplx z, const EllipticParams& p);

/// Kronecker function phi(z, q) = theta'(0) theta(z+q) / (theta(z) theta(q)).
Cplx kronecker_phi(Cplx z, Cplx q, const EllipticParams& p);

/// f(z, q) = d/dq phi(z, q) = phi(z, q) (E1(z+q) - E1(q)).
Cplx kronecker_f(Cplx z, Cplx q, const EllipticParams& p);

/// d/dz phi(z, q) = phi(z, q) (E1(z+q) - E1(z)).
Cplx kronecker_phi_dz(Cplx z, Cplx q, const EllipticParams& p);

/// phi_alpha(z, u) = exp(2 pi i a2 z / N) phi(z, u); the caller passes
/// u = omega_alpha + q + eta already summed. The combination is independent
/// of the index representative as long as u is shifted consistently.
Cplx phi_mode(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p);

/// f_alpha(z, u) = exp(2 pi i a2 z / N) f(z, u).
Cplx f_mode(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p);

/// d/dz phi_alpha(z, u) = phi_alpha(z, u) (2 pi i a2/N + E1(z+u) - E1(z)).
Cplx phi_mode_dz(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p);

/// d^2/dz^2 phi_alpha(z, u).
Cplx phi_mode_dz2(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p);

}  // namespace elltop
