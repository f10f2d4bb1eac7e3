#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "elltop/dynamics.hpp"
#include "elltop/elliptic_top.hpp"
#include "elltop/multitop.hpp"
#include "elltop/random_states.hpp"
#include "elltop/spin_rs.hpp"
#include "oracle_utils.hpp"

using namespace elltop;
using oracle::rel_err;

namespace {
const Cplx kTauI{0.0, 1.0};
const Cplx kEta{0.21, 0.07};
const Cplx kZ{0.17, 0.13};
}  // namespace

TEST_CASE("N=1 blocks reproduce the spin Ruijsenaars-Schneider model") {
  const EllipticParams p1{kTauI, 1, kEta};
  Rng rng(21);
  const SpinRSState rs = random_rs_state(rng, p1, 3);
  const MultiTopState mt{p1, rs.q, rs.spin};
  CHECK((rs_lax(rs, kZ) - nm_lax(mt, kZ)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((rs_m(rs, kZ) - nm_m(mt, kZ)).cwiseAbs().maxCoeff() < 1e-14);
  const RSDerivs dr = rs_eom(rs);
  const MultiTopDerivs dm = nm_eom(mt);
  CHECK((dr.qdot - dm.qdot).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((dr.spin_dot - dm.spin_dot).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("M=1 reproduces the relativistic top up to a scalar in M(z)") {
  const EllipticParams p{kTauI, 3, kEta};
  Rng rng(22);
  const TopState top = random_top_state(rng, p);
  const MultiTopState mt{p, Vector::Zero(1), top.spin};
  CHECK((top_lax(top, kZ) - nm_lax(mt, kZ)).cwiseAbs().maxCoeff() < 1e-13);
  Matrix d = nm_m(mt, kZ) - top_m(top, kZ);
  const Cplx scalar = d.trace() / 3.0;
  d -= scalar * Matrix::Identity(3, 3);
  CHECK(d.cwiseAbs().maxCoeff() < 1e-13);
  // The scalar is the expected -(E1(z) + E1(eta)) S_0.
  const Cplx s0 = top.spin.trace() / 3.0;
  CHECK(rel_err(scalar, -(eisenstein_e1(kZ, p) + eisenstein_e1(kEta, p)) * s0) < 1e-12);
  const MultiTopDerivs dm = nm_eom(mt);
  CHECK(rel_err(dm.spin_dot, top_eom(top)) < 1e-13);
}

TEST_CASE("residue normalization of the block Lax matrix") {
  const EllipticParams p{kTauI, 2, kEta};
  Rng rng(23);
  const MultiTopState s = random_multitop_state(rng, p, 2);
  const Cplx ztiny{1e-6, 0.0};
  CHECK(rel_err(ztiny * nm_lax(s, ztiny), s.spin) < 1e-4);
}

TEST_CASE("block pair operator: N=1 form and periodicity in q") {
  const EllipticParams p1{kTauI, 1, kEta};
  ComponentMap c(1);
  c.at({0, 0}) = Cplx{0.8, 0.3};
  const Cplx q{0.27, -0.13};
  const ComponentMap out = j_eta_q(c, q, p1, true);
  CHECK(rel_err(out.at({0, 0}),
                (eisenstein_e1(q + kEta, p1) - eisenstein_e1(q, p1)) * c.at({0, 0})) < 1e-14);

  const EllipticParams p2{kTauI, 2, kEta};
  Rng rng(24);
  Matrix block(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) block(i, j) = rng.cnormal();
  }
  CHECK(rel_err(j_eta_q_apply(block, q + 1.0, p2, true), j_eta_q_apply(block, q, p2, true)) <
        1e-12);
}

TEST_CASE("third-order expansion of the pair operator in eta") {
  const EllipticParams p{kTauI, 2, kEta};
  Rng rng(25);
  Matrix block(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) block(i, j) = rng.cnormal();
  }
  const Cplx q{0.29, -0.17};
  const double fd_h = 1e-5;
  const auto resid = [&](double eta) {
    const EllipticParams pe = p.with_eta(Cplx{eta, 0.0});
    const Matrix rel = j_eta_q_apply(block, q, pe, true);
    const Matrix nr = j_eta_q_apply(block, q, pe, false);
    const Matrix dq = (j_eta_q_apply(block, q + fd_h, pe, false) -
                       j_eta_q_apply(block, q - fd_h, pe, false)) /
                      (2.0 * fd_h);
    return (rel - eta * nr - 0.5 * eta * eta * dq).norm();
  };
  const double r1 = resid(1e-2), r2 = resid(5e-3), r3 = resid(2.5e-3);
  const double slope = 0.5 * (std::log2(r1 / r2) + std::log2(r2 / r3));
  CHECK(slope == doctest::Approx(3.0).epsilon(0.2 / 3.0));
}

TEST_CASE("the two groupings of the off-diagonal block equation agree") {
  Rng rng(26);
  for (const auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const EllipticParams p{kTauI, n, kEta};
    const MultiTopState s = random_multitop_state(rng, p, m);
    const MultiTopDerivs a = nm_eom(s, BlockForm::compact);
    const MultiTopDerivs b = nm_eom(s, BlockForm::split);
    CHECK(rel_err(a.spin_dot, b.spin_dot) < 1e-12);
  }
}

TEST_CASE("trace law ties the diagonal-block derivative to the interaction sums") {
  const EllipticParams p{kTauI, 2, kEta};
  Rng rng(27);
  const MultiTopState s = random_multitop_state(rng, p, 3);
  const MultiTopDerivs d = nm_eom(s);
  const int n = 2;
  for (int i = 0; i < 3; ++i) {
    Cplx sum{0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
      if (k == i) continue;
      sum += (s.block(i, k) * j_eta_q_apply(s.block(k, i), s.q[k] - s.q[i], p, true) -
              j_eta_q_apply(s.block(i, k), s.q[i] - s.q[k], p, true) * s.block(k, i))
                 .trace();
    }
    CHECK(std::abs(d.spin_dot.block(i * n, i * n, n, n).trace() - sum) < 1e-12);
  }
}

TEST_CASE("the scalar mode of the diagonal derivative comes from opposite-mode pairs") {
  const EllipticParams p{kTauI, 2, kEta};
  Rng rng(28);
  const MultiTopState s = random_multitop_state(rng, p, 2);
  const int n = 2, i = 0, k = 1;
  const Matrix x = s.block(i, k) * j_eta_q_apply(s.block(k, i), s.q[k] - s.q[i], p, true);
  const Cplx full_scalar = x.trace() / static_cast<double>(n);
  // Restrict the double mode sum to gamma = -beta.
  const ComponentMap cik = decompose(s.block(i, k));
  const ComponentMap cki = decompose(s.block(k, i));
  Cplx restricted{0.0, 0.0};
  for (int b1 = 0; b1 < n; ++b1) {
    for (int b2 = 0; b2 < n; ++b2) {
      const ModeIndex b{b1, b2};
      const ModeIndex nb = mode_neg(b, n);
      const Cplx w = mode_omega(nb, p);
      const Cplx coef = eisenstein_e1(w + (s.q[k] - s.q[i]) + kEta, p) -
                        eisenstein_e1(w + (s.q[k] - s.q[i]), p);
      const Cplx pair_trace = (t_basis(b, n) * t_basis_at(-b1, -b2, n)).trace();
      restricted += cik.at(b) * cki.at(nb) * coef * pair_trace / static_cast<double>(n);
    }
  }
  CHECK(std::abs(full_scalar - restricted) < 1e-12);
}

TEST_CASE("Lax equation with and without the constraint correction") {
  Rng rng(29);
  const EllipticParams p{kTauI, 2, kEta};
  const MultiTopState s = random_multitop_state(rng, p, 2);
  const ModelState ms = pack_state(s, Family::multitop);
  CHECK(lax_residual(ms, nullptr, kZ) < 1e-8);

  Vector qdot(2);
  qdot[0] = s.block(0, 0).trace() / 2.0 + Cplx{0.2, -0.3};
  qdot[1] = s.block(1, 1).trace() / 2.0 + Cplx{-0.15, 0.1};
  CHECK(lax_residual(ms, &qdot, kZ) < 1e-8);
}

TEST_CASE("collisions in block states are rejected") {
  const EllipticParams p{kTauI, 2, kEta};
  MultiTopState s{p, Vector(2), Matrix::Identity(4, 4)};
  s.q << Cplx{0.2, 0.1}, Cplx{0.2, 0.1};
  CHECK_THROWS_AS(nm_eom(s), Collision);
}
