#include "elltop/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace elltop {

namespace {

constexpr double kStopFactor = 1e-17;
constexpr int kMaxTermsPerSide = 200;

struct Reduction {
  Cplx z0;        // reduced argument, |Re| <= 1/2, Im in [-Im(tau)/2, Im(tau)/2]
  long long a;    // integer shift along 1
  long long b;    // integer shift along tau
};

Reduction reduce_argument(Cplx z, Cplx tau) {
  const long long b = std::llround(z.imag() / tau.imag());
  Cplx z1 = z - static_cast<double>(b) * tau;
  const long long a = std::llround(z1.real());
  return {z1 - static_cast<double>(a), a, b};
}

// Series for theta and its first max_order derivatives at a reduced argument.
void theta_series(Cplx z0, Cplx tau, int max_order, Cplx out[4]) {
  for (int j = 0; j <= max_order; ++j) out[j] = Cplx{0.0, 0.0};
  const Cplx ipitau = kI * kPi * tau;
  const Cplx zhalf = kTwoPiI * (z0 + 0.5);
  int consecutive_small = 0;
  for (int k = 0; k <= kMaxTermsPerSide; ++k) {
    const double mp = k + 0.5;
    const double mm = -mp;
    const Cplx tp = std::exp(ipitau * (mp * mp) + zhalf * mp);
    const Cplx tm = std::exp(ipitau * (mm * mm) + zhalf * mm);
    Cplx wp{1.0, 0.0}, wm{1.0, 0.0};
    bool small = true;
    for (int j = 0; j <= max_order; ++j) {
      out[j] += wp * tp + wm * tm;
      const double thr = kStopFactor * (std::abs(out[j]) + 1.0);
      if (std::abs(wp * tp) >= thr || std::abs(wm * tm) >= thr) small = false;
      wp *= kTwoPiI * mp;
      wm *= kTwoPiI * mm;
    }
    consecutive_small = small ? consecutive_small + 1 : 0;
    if (consecutive_small >= 2) return;
  }
  throw NonConvergent("theta series did not converge within the term cap");
}

}  // namespace

void theta_all(Cplx z, Cplx tau, int max_order, Cplx out[4]) {
  if (!(tau.imag() > 0.0)) throw BadModulus("theta requires Im(tau) > 0");
  const Reduction r = reduce_argument(z, tau);
  Cplx s[4];
  theta_series(r.z0, tau, max_order, s);
  if (r.a == 0 && r.b == 0) {
    for (int j = 0; j <= max_order; ++j) out[j] = s[j];
    return;
  }
  // theta(z0 + a + b*tau) = (-1)^{a+b} exp(-pi i b^2 tau - 2 pi i b z0) theta(z0);
  // derivatives mix by the Leibniz rule with c = -2 pi i b.
  const double bd = static_cast<double>(r.b);
  const double sign = ((r.a + r.b) % 2 == 0) ? 1.0 : -1.0;
  const Cplx c = -kTwoPiI * bd;
  const Cplx pref = sign * std::exp(-kI * kPi * bd * bd * tau - kTwoPiI * bd * r.z0);
  static constexpr double binom[4][4] = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (int n = max_order; n >= 0; --n) {
    Cplx acc{0.0, 0.0};
    Cplx cpow{1.0, 0.0};
    for (int j = n; j >= 0; --j) {
      acc += binom[n][j] * cpow * s[j];
      cpow *= c;
    }
    out[n] = pref * acc;
  }
}

Cplx theta(Cplx z, Cplx tau, int order) {
  if (order < 0 || order > 3) throw std::invalid_argument("theta: order must be in 0..3");
  Cplx out[4];
  theta_all(z, tau, order, out);
  return out[order];
}

double lattice_distance(Cplx z, Cplx tau) {
  const Reduction r = reduce_argument(z, tau);
  double best = std::abs(r.z0);
  for (int da = -1; da <= 1; ++da) {
    for (int db = -1; db <= 1; ++db) {
      if (da == 0 && db == 0) continue;
      best = std::min(best, std::abs(r.z0 - static_cast<double>(da) - static_cast<double>(db) * tau));
    }
  }
  return best;
}

EllipticParams::EllipticParams(Cplx tau, int basis_n, Cplx eta, PoleTolerance tol)
    : tau_(tau), basis_n_(basis_n), eta_(eta), tol_(tol) {
  if (!(tau.imag() >= 0.05)) {
    throw BadModulus("EllipticParams: Im(tau) must be >= 0.05 for a well-conditioned series");
  }
  if (basis_n < 1) throw DimensionMismatch("EllipticParams: N must be >= 1");
  if (!(tol.eps_pole > 0.0) || !(tol.eps_pole < 0.1 * std::min(1.0, tau.imag()))) {
    throw std::invalid_argument("PoleTolerance: eps_pole must lie in (0, 0.1*min(1, Im tau))");
  }
  if (lattice_distance(eta, tau) < tol.eps_pole) throw PoleProximity("eta", eta);
  Cplx out[4];
  theta_all(Cplx{0.0, 0.0}, tau, 3, out);
  theta_prime0_ = out[1];
  theta_triple0_ = out[3];
}

bool EllipticParams::near_lattice(Cplx z) const {
  return lattice_distance(z, tau_) < tol_.eps_pole;
}

void EllipticParams::require_off_lattice(Cplx z, const char* what) const {
  if (near_lattice(z)) throw PoleProximity(what, z);
}

Cplx mode_omega(ModeIndex alpha, const EllipticParams& p) {
  return (static_cast<double>(alpha.a1) + static_cast<double>(alpha.a2) * p.tau()) /
         static_cast<double>(p.basis_n());
}

Cplx eisenstein_e1(Cplx z, const EllipticParams& p) {
  p.require_off_lattice(z, "z");
  Cplx t[4];
  theta_all(z, p.tau(), 1, t);
  return t[1] / t[0];
}

Cplx eisenstein_e2(Cplx z, const EllipticParams& p) {
  p.require_off_lattice(z, "z");
  Cplx t[4];
  theta_all(z, p.tau(), 2, t);
  const Cplx u = t[1] / t[0];
  return u * u - t[2] / t[0];
}

Cplx eisenstein_e2_prime(Cplx z, const EllipticParams& p) {
  p.require_off_lattice(z, "z");
  Cplx t[4];
  theta_all(z, p.tau(), 3, t);
  const Cplx u = t[1] / t[0];
  return 3.0 * u * (t[2] / t[0]) - 2.0 * u * u * u - t[3] / t[0];
}

Cplx kronecker_phi(Cplx z, Cplx q, const EllipticParams& p) {
  p.require_off_lattice(z, "z");
  p.require_off_lattice(q, "q");
  Cplx tz[4], tq[4], tzq[4];
  theta_all(z, p.tau(), 0, tz);
  theta_all(q, p.tau(), 0, tq);
  theta_all(z + q, p.tau(), 0, tzq);
  return p.theta_prime0() * tzq[0] / (tz[0] * tq[0]);
}

Cplx kronecker_f(Cplx z, Cplx q, const EllipticParams& p) {
  p.require_off_lattice(z, "z");
  p.require_off_lattice(q, "q");
  p.require_off_lattice(z + q, "z+q");
  Cplx tz[4], tq[4], tzq[4];
  theta_all(z, p.tau(), 0, tz);
  theta_all(q, p.tau(), 1, tq);
  theta_all(z + q, p.tau(), 1, tzq);
  const Cplx phi = p.theta_prime0() * tzq[0] / (tz[0] * tq[0]);
  return phi * (tzq[1] / tzq[0] - tq[1] / tq[0]);
}

Cplx kronecker_phi_dz(Cplx z, Cplx q, const EllipticParams& p) {
  p.require_off_lattice(z, "z");
  p.require_off_lattice(q, "q");
  p.require_off_lattice(z + q, "z+q");
  Cplx tz[4], tq[4], tzq[4];
  theta_all(z, p.tau(), 1, tz);
  theta_all(q, p.tau(), 0, tq);
  theta_all(z + q, p.tau(), 1, tzq);
  const Cplx phi = p.theta_prime0() * tzq[0] / (tz[0] * tq[0]);
  return phi * (tzq[1] / tzq[0] - tz[1] / tz[0]);
}

namespace {

Cplx mode_exponent(Cplx z, ModeIndex alpha, const EllipticParams& p) {
  return std::exp(kTwoPiI * static_cast<double>(alpha.a2) * z / static_cast<double>(p.basis_n()));
}

}  // namespace

Cplx phi_mode(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p) {
  return mode_exponent(z, alpha, p) * kronecker_phi(z, u, p);
}

Cplx f_mode(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p) {
  return mode_exponent(z, alpha, p) * kronecker_f(z, u, p);
}

Cplx phi_mode_dz(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p) {
  const Cplx c = kTwoPiI * static_cast<double>(alpha.a2) / static_cast<double>(p.basis_n());
  return phi_mode(z, u, alpha, p) * (c + eisenstein_e1(z + u, p) - eisenstein_e1(z, p));
}

Cplx phi_mode_dz2(Cplx z, Cplx u, ModeIndex alpha, const EllipticParams& p) {
  const Cplx c = kTwoPiI * static_cast<double>(alpha.a2) / static_cast<double>(p.basis_n());
  const Cplx d = c + eisenstein_e1(z + u, p) - eisenstein_e1(z, p);
  const Cplx dprime = -eisenstein_e2(z + u, p) + eisenstein_e2(z, p);
  return phi_mode(z, u, alpha, p) * (d * d + dprime);
}

}  // namespace elltop
