#include "elltop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "elltop/dynamics.hpp"
#include "elltop/models.hpp"
#include "elltop/random_states.hpp"

namespace elltop {

namespace {

constexpr double kExclusion = 0.02;

double rel_residual(Cplx lhs, Cplx rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double rel_residual(const Matrix& lhs, const Matrix& rhs) {
  return (lhs - rhs).norm() / std::max(1.0, lhs.norm());
}

// Uniform draw in the fundamental rectangle such that every combination
// returned by `combos` stays out of the pole-exclusion zone.
template <typename Combos>
std::vector<Cplx> draw_away_from_poles(Rng& rng, const EllipticParams& p, int count,
                                       Combos&& combos) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Cplx> pts(count);
    for (Cplx& z : pts) {
      z = Cplx{rng.uniform(-0.5, 0.5), rng.uniform(-p.tau().imag() / 2.0, p.tau().imag() / 2.0)};
    }
    bool ok = true;
    for (const Cplx c : combos(pts)) {
      if (lattice_distance(c, p.tau()) < kExclusion) {
        ok = false;
        break;
      }
    }
    if (ok) return pts;
  }
  throw Error("verify: could not draw points away from the pole-exclusion zone");
}

VerifyCase make_case(std::string name, double measured, double tol) {
  return VerifyCase{std::move(name), measured, tol, measured < tol};
}

}  // namespace

std::string report_table(const VerifyReport& r) {
  std::ostringstream out;
  out << "suite " << r.suite << " (seed " << r.seed << ", tau = " << r.tau.real() << "+"
      << r.tau.imag() << "i, eta = " << r.eta.real() << "+" << r.eta.imag() << "i)\n";
  for (const auto& c : r.cases) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  [%s] %-58s measured %.3e  tol %.3e\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.tolerance);
    out << buf;
  }
  out << (r.passed() ? "  => PASS" : "  => FAIL") << "\n";
  return out.str();
}

static nlohmann::json report_to_json(const VerifyReport& r) {
  nlohmann::json doc;
  doc["suite"] = r.suite;
  doc["seed"] = r.seed;
  doc["tau"] = {r.tau.real(), r.tau.imag()};
  doc["eta"] = {r.eta.real(), r.eta.imag()};
  doc["pass"] = r.passed();
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"name", c.name},
                     {"measured", c.measured},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
  }
  doc["cases"] = cases;
  return doc;
}

std::string report_json(const VerifyReport& r) { return report_to_json(r).dump(2); }

std::string reports_json(const std::vector<VerifyReport>& rs) {
  nlohmann::json doc = nlohmann::json::array();
  bool all = true;
  for (const auto& r : rs) {
    doc.push_back(report_to_json(r));
    all = all && r.passed();
  }
  return nlohmann::json{{"pass", all}, {"reports", doc}}.dump(2);
}

VerifyReport identity_suite(const EllipticParams& p, std::uint64_t seed, int n_cases) {
  Rng rng(seed);
  VerifyReport rep{"identity", seed, p.tau(), p.eta(), {}};

  // Fay identity.
  double worst = 0.0;
  for (int c = 0; c < n_cases; ++c) {
    const auto pts = draw_away_from_poles(rng, p, 4, [](const std::vector<Cplx>& v) {
      const Cplx z1 = v[0], z2 = v[1], q1 = v[2], q2 = v[3];
      return std::vector<Cplx>{z1,      z2,      q1,      q2,      z1 - z2, q1 + q2,
                               z1 + q1, z2 + q2, z2 + q1 + q2, z1 + q1 + q2};
    });
    const Cplx z1 = pts[0], z2 = pts[1], q1 = pts[2], q2 = pts[3];
    const Cplx lhs = kronecker_phi(z1, q1, p) * kronecker_phi(z2, q2, p);
    const Cplx rhs = kronecker_phi(z1 - z2, q1, p) * kronecker_phi(z2, q1 + q2, p) +
                     kronecker_phi(z2 - z1, q2, p) * kronecker_phi(z1, q1 + q2, p);
    worst = std::max(worst, rel_residual(lhs, rhs));
  }
  rep.cases.push_back(make_case("Fay identity, " + std::to_string(n_cases) + " cases", worst, 1e-12));

  // Degeneration of the Fay identity.
  worst = 0.0;
  for (int c = 0; c < n_cases; ++c) {
    const auto pts = draw_away_from_poles(rng, p, 3, [](const std::vector<Cplx>& v) {
      const Cplx z = v[0], q1 = v[1], q2 = v[2];
      return std::vector<Cplx>{z, q1, q2, q1 + q2, z + q1, z + q2, z + q1 + q2};
    });
    const Cplx z = pts[0], q1 = pts[1], q2 = pts[2];
    const Cplx lhs = kronecker_phi(z, q1, p) * kronecker_phi(z, q2, p);
    const Cplx rhs = kronecker_phi(z, q1 + q2, p) *
                     (eisenstein_e1(z, p) + eisenstein_e1(q1, p) + eisenstein_e1(q2, p) -
                      eisenstein_e1(q1 + q2 + z, p));
    worst = std::max(worst, rel_residual(lhs, rhs));
  }
  rep.cases.push_back(make_case("Fay degeneration, " + std::to_string(n_cases) + " cases", worst, 1e-12));

  // Quasi-periodicity of E1 and phi.
  worst = 0.0;
  for (int c = 0; c < n_cases; ++c) {
    const auto pts = draw_away_from_poles(rng, p, 2, [](const std::vector<Cplx>& v) {
      return std::vector<Cplx>{v[0], v[1], v[0] + v[1]};
    });
    const Cplx z = pts[0], q = pts[1];
    const Cplx e1 = eisenstein_e1(z, p);
    worst = std::max(worst, rel_residual(eisenstein_e1(z + 1.0, p), e1));
    worst = std::max(worst, rel_residual(eisenstein_e1(z + p.tau(), p), e1 - kTwoPiI));
    const Cplx ph = kronecker_phi(z, q, p);
    worst = std::max(worst, rel_residual(kronecker_phi(z + 1.0, q, p), ph));
    worst = std::max(worst,
                     rel_residual(kronecker_phi(z + p.tau(), q, p), std::exp(-kTwoPiI * q) * ph));
  }
  rep.cases.push_back(
      make_case("quasi-periodicity of E1 and phi, " + std::to_string(n_cases) + " cases", worst, 1e-12));

  // Indexed product rule; the last E1 uses the unreduced omega_a + omega_b.
  for (const int n : {2, 3}) {
    const EllipticParams pn = p.with_basis_n(n);
    worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      const auto pts = draw_away_from_poles(rng, pn, 3, [&](const std::vector<Cplx>& v) {
        std::vector<Cplx> combos{v[0], v[1], v[2], v[1] + v[2]};
        for (int a1 = 0; a1 < n; ++a1) {
          for (int a2 = 0; a2 < n; ++a2) {
            const Cplx w = mode_omega({a1, a2}, pn);
            combos.push_back(w + v[1]);
            combos.push_back(w + v[2]);
            combos.push_back(w + v[1] + v[2]);
            combos.push_back(v[0] + w + v[1] + v[2]);
            for (int b1 = 0; b1 < n; ++b1) {
              for (int b2 = 0; b2 < n; ++b2) {
                const Cplx wsum = w + mode_omega({b1, b2}, pn);
                combos.push_back(v[0] + wsum + v[1] + v[2]);
              }
            }
          }
        }
        return combos;
      });
      const Cplx z = pts[0], q1 = pts[1], q2 = pts[2];
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          for (int b1 = 0; b1 < n; ++b1) {
            for (int b2 = 0; b2 < n; ++b2) {
              const ModeIndex a{a1, a2}, b{b1, b2};
              const ModeIndex g = mode_add(a, b, n);
              const Cplx wa = mode_omega(a, pn), wb = mode_omega(b, pn);
              const Cplx wg = mode_omega(g, pn);
              const Cplx lhs = phi_mode(z, wa + q1, a, pn) * phi_mode(z, wb + q2, b, pn);
              const Cplx rhs = phi_mode(z, wg + q1 + q2, g, pn) *
                               (eisenstein_e1(z, pn) + eisenstein_e1(wa + q1, pn) +
                                eisenstein_e1(wb + q2, pn) -
                                eisenstein_e1(z + wa + wb + q1 + q2, pn));
              worst = std::max(worst, rel_residual(lhs, rhs));
            }
          }
        }
      }
    }
    rep.cases.push_back(
        make_case("indexed product rule, N=" + std::to_string(n) + ", all pairs, 20 cases", worst, 1e-11));
  }

  // Argument reduction invisibility: shifting by the lattice and unwinding the
  // known quasi-periodicity factors reproduces the direct evaluation.
  worst = 0.0;
  for (int c = 0; c < n_cases; ++c) {
    const auto pts = draw_away_from_poles(rng, p, 1, [](const std::vector<Cplx>& v) {
      return std::vector<Cplx>{v[0]};
    });
    const Cplx z = pts[0];
    const int a = static_cast<int>(rng.uniform(0.0, 7.0)) - 3;
    const int b = static_cast<int>(rng.uniform(0.0, 7.0)) - 3;
    const Cplx shift = static_cast<double>(a) + static_cast<double>(b) * p.tau();
    const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
    const Cplx factor =
        sign * std::exp(-kI * kPi * static_cast<double>(b) * static_cast<double>(b) * p.tau() -
                        kTwoPiI * static_cast<double>(b) * z);
    worst = std::max(worst, rel_residual(theta(z + shift, p.tau()), factor * theta(z, p.tau())));
    worst = std::max(worst, rel_residual(eisenstein_e1(z + shift, p),
                                         eisenstein_e1(z, p) - kTwoPiI * static_cast<double>(b)));
  }
  rep.cases.push_back(
      make_case("argument reduction invisibility, " + std::to_string(n_cases) + " cases", worst, 1e-12));

  return rep;
}

VerifyReport fourier_suite(const EllipticParams& p, const std::vector<int>& ns,
                           std::uint64_t seed) {
  Rng rng(seed);
  VerifyReport rep{"fourier", seed, p.tau(), p.eta(), {}};

  for (const int n : ns) {
    const EllipticParams pn = p.with_basis_n(n);
    const double nd = static_cast<double>(n);
    double worst_scalar = 0.0, worst_mode = 0.0, worst_icoef = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto pts = draw_away_from_poles(rng, pn, 1, [&](const std::vector<Cplx>& v) {
        std::vector<Cplx> combos{v[0], nd * v[0]};
        for (int a1 = 0; a1 < n; ++a1) {
          for (int a2 = 0; a2 < n; ++a2) {
            combos.push_back(mode_omega({a1, a2}, pn) + v[0]);
          }
        }
        return combos;
      });
      const Cplx eta = pts[0];
      // sum_alpha (E1(omega_alpha + eta) + 2 pi i a2 / N) / N over the mode grid
      Cplx acc{0.0, 0.0};
      for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
          acc += eisenstein_e1(mode_omega({a1, a2}, pn) + eta, pn) +
                 kTwoPiI * static_cast<double>(a2) / nd;
        }
      }
      worst_scalar = std::max(worst_scalar, rel_residual(acc / nd, eisenstein_e1(nd * eta, pn)));
      for (int g1 = 0; g1 < n; ++g1) {
        for (int g2 = 0; g2 < n; ++g2) {
          if (g1 == 0 && g2 == 0) continue;
          const ModeIndex g{g1, g2};
          Cplx accg{0.0, 0.0};
          for (int a1 = 0; a1 < n; ++a1) {
            for (int a2 = 0; a2 < n; ++a2) {
              const Cplx kap2 = std::exp(kTwoPiI * static_cast<double>(g1 * a2 - g2 * a1) / nd);
              accg += kap2 * (eisenstein_e1(mode_omega({a1, a2}, pn) + eta, pn) +
                              kTwoPiI * static_cast<double>(a2) / nd);
            }
          }
          const Cplx closed = phi_mode(nd * eta, mode_omega(g, pn), g, pn);
          worst_mode = std::max(worst_mode, rel_residual(accg / nd, closed));
        }
      }
    }
    if (n == 1) {
      rep.cases.push_back(make_case("mode-sum identity, N=1 (tautology)", worst_scalar, 1e-10));
      continue;
    }
    rep.cases.push_back(make_case("scalar mode-sum identity, N=" + std::to_string(n), worst_scalar, 1e-10));
    rep.cases.push_back(make_case("indexed mode-sum identity, N=" + std::to_string(n), worst_mode, 1e-10));

    // Closed-form pair coefficients against the direct transform of the
    // block-operator kernel.
    for (int trial = 0; trial < 10; ++trial) {
      const auto pts = draw_away_from_poles(rng, pn, 1, [&](const std::vector<Cplx>& v) {
        std::vector<Cplx> combos{v[0], nd * v[0], nd * (v[0] + pn.eta())};
        for (int a1 = 0; a1 < n; ++a1) {
          for (int a2 = 0; a2 < n; ++a2) {
            const Cplx w = mode_omega({a1, a2}, pn);
            combos.push_back(w + v[0]);
            combos.push_back(w + v[0] + pn.eta());
          }
        }
        return combos;
      });
      const Cplx qij = pts[0];
      const ComponentMap table = i_coeffs(qij, pn, true, 0);
      for (int g1 = 0; g1 < n; ++g1) {
        for (int g2 = 0; g2 < n; ++g2) {
          Cplx accg{0.0, 0.0};
          for (int a1 = 0; a1 < n; ++a1) {
            for (int a2 = 0; a2 < n; ++a2) {
              const Cplx kap2 = std::exp(kTwoPiI * static_cast<double>(g1 * a2 - g2 * a1) / nd);
              const Cplx w = mode_omega({a1, a2}, pn);
              accg += kap2 * (eisenstein_e1(w + qij + pn.eta(), pn) -
                              eisenstein_e1(w + qij, pn));
            }
          }
          worst_icoef = std::max(worst_icoef, rel_residual(accg / nd, table.at({g1, g2})));
        }
      }
    }
    rep.cases.push_back(
        make_case("pair coefficients vs direct transform, N=" + std::to_string(n), worst_icoef, 1e-10));
  }
  return rep;
}

VerifyReport reduction_suite(const EllipticParams& p, std::uint64_t seed) {
  Rng rng(seed);
  VerifyReport rep{"reduction", seed, p.tau(), p.eta(), {}};
  const std::vector<Cplx> zs = default_spectral_samples(p);

  // (a) N=1 blocks reproduce the spin RS model, M = 3.
  {
    const EllipticParams p1 = p.with_basis_n(1);
    const SpinRSState rs = random_rs_state(rng, p1, 3);
    const MultiTopState mt{p1, rs.q, rs.spin};
    double worst = 0.0;
    for (const Cplx z : zs) {
      worst = std::max(worst, (rs_lax(rs, z) - nm_lax(mt, z)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (rs_m(rs, z) - nm_m(mt, z)).cwiseAbs().maxCoeff());
    }
    const RSDerivs dr = rs_eom(rs);
    const MultiTopDerivs dm = nm_eom(mt);
    worst = std::max(worst, (dr.qdot - dm.qdot).cwiseAbs().maxCoeff());
    worst = std::max(worst, (dr.spin_dot - dm.spin_dot).cwiseAbs().maxCoeff());
    rep.cases.push_back(make_case("N=1 blocks equal spin RS (Lax, M, EOM), M=3", worst, 1e-13));
  }

  // (b) M=1 reproduces the relativistic top up to a scalar in the M-matrix, N = 3.
  {
    const EllipticParams p3 = p.with_basis_n(3);
    const TopState top = random_top_state(rng, p3);
    const MultiTopState mt{p3, Vector::Zero(1), top.spin};
    double worst = 0.0;
    for (const Cplx z : zs) {
      worst = std::max(worst, (top_lax(top, z) - nm_lax(mt, z)).cwiseAbs().maxCoeff());
      Matrix d = nm_m(mt, z) - top_m(top, z);
      d -= (d.trace() / 3.0) * Matrix::Identity(3, 3);
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    const Matrix dtop = top_eom(top, true);
    const MultiTopDerivs dm = nm_eom(mt);
    worst = std::max(worst, (dtop - dm.spin_dot).cwiseAbs().maxCoeff());
    rep.cases.push_back(
        make_case("M=1 equals relativistic top (M-matrix modulo scalar), N=3", worst, 1e-13));
  }

  // (c) rank-1 reduced equations against diagonal blocks of the full flow.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const EllipticParams p2 = p.with_basis_n(2);
      const Rank1State r1 = random_rank1_state(rng, p2, 3);
      const MultiTopDerivs full = nm_eom(rank1_embed(r1));
      const Rank1Derivs red = rank1_eom(r1);
      for (int i = 0; i < 3; ++i) {
        const Matrix fb = full.spin_dot.block(2 * i, 2 * i, 2, 2);
        worst = std::max(worst, rel_residual(fb, red.blocks_dot[i]));
      }
      worst = std::max(worst, (full.qdot - red.qdot).cwiseAbs().maxCoeff());
    }
    rep.cases.push_back(
        make_case("rank-1 reduced EOM vs full diagonal blocks, N=2 M=3, 20 draws", worst, 1e-10));
  }
  return rep;
}

VerifyReport limit_suite(const EllipticParams& p, std::uint64_t seed) {
  Rng rng(seed);
  VerifyReport rep{"limit", seed, p.tau(), p.eta(), {}};

  // Third-order expansion of the block pair operator in eta, Richardson slope.
  {
    const EllipticParams p2 = p.with_basis_n(2);
    const Matrix s = [&] {
      Matrix m(2, 2);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) m(r, c) = rng.cnormal();
      }
      return m;
    }();
    const auto pts = draw_away_from_poles(rng, p2, 1, [&](const std::vector<Cplx>& v) {
      std::vector<Cplx> combos;
      for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
          combos.push_back(mode_omega({a1, a2}, p2) + v[0]);
        }
      }
      return combos;
    });
    const Cplx qij = pts[0];
    const double fd_h = 1e-5;
    const auto residual = [&](double eta) {
      const EllipticParams pe = p2.with_eta(Cplx{eta, 0.0});
      const Matrix rel = j_eta_q_apply(s, qij, pe, true);
      const Matrix nr = j_eta_q_apply(s, qij, pe, false);
      const Matrix dq = (j_eta_q_apply(s, qij + fd_h, pe, false) -
                         j_eta_q_apply(s, qij - fd_h, pe, false)) /
                        (2.0 * fd_h);
      return (rel - eta * nr - 0.5 * eta * eta * dq).norm();
    };
    const double r1 = residual(1e-2), r2 = residual(5e-3), r3 = residual(2.5e-3);
    const double slope = 0.5 * (std::log2(r1 / r2) + std::log2(r2 / r3));
    rep.cases.push_back(make_case("pair operator expansion order (expect 3)", std::abs(slope - 3.0), 0.2));
  }

  // First-order convergence of the rescaled relativistic equations to the
  // non-relativistic ones, per family.
  const auto slope_case = [&](const std::string& name, double e1, double e2, double h1, double h2) {
    const double slope = std::log(e1 / e2) / std::log(h1 / h2);
    rep.cases.push_back(make_case(name + " limit order (expect 1)", std::abs(slope - 1.0), 0.1));
  };
  const double etas[2] = {1e-2, 1e-3};

  {  // spin RS -> spin CM on trace-free data
    const SpinCMState cm = random_cm_state(rng, p.with_basis_n(1), 3);
    const SpinCMDerivs dcm = spin_cm_eom(cm);
    double errs[2];
    for (int i = 0; i < 2; ++i) {
      const EllipticParams pe = cm.params.with_eta(Cplx{etas[i], 0.0});
      Matrix spin = cm.spin;
      spin.diagonal() = etas[i] * cm.v;
      const SpinRSState rs{pe, cm.q, spin};
      const RSDerivs dr = rs_eom(rs);
      errs[i] = (dr.spin_dot / etas[i] - dcm.spin_dot).cwiseAbs().maxCoeff();
    }
    slope_case("spin RS -> spin CM", errs[0], errs[1], etas[0], etas[1]);
  }
  {  // relativistic top -> non-relativistic top
    const TopState top = random_top_state(rng, p.with_basis_n(3));
    const Matrix dnr = top_eom(top, false);
    double errs[2];
    for (int i = 0; i < 2; ++i) {
      const TopState te{top.params.with_eta(Cplx{etas[i], 0.0}), top.spin};
      errs[i] = (top_eom(te, true) / etas[i] - dnr).cwiseAbs().maxCoeff();
    }
    slope_case("relativistic top -> top", errs[0], errs[1], etas[0], etas[1]);
  }
  {  // multitop
    const NonRelMultiTopState nr = random_nonrel_mt_state(rng, p.with_basis_n(2), 2);
    const NonRelMultiTopDerivs dnr = nonrel_nm_eom(nr);
    const int n = 2;
    double errs[2];
    for (int i = 0; i < 2; ++i) {
      const EllipticParams pe = nr.params.with_eta(Cplx{etas[i], 0.0});
      Matrix spin = nr.spin;
      for (int b = 0; b < nr.sites(); ++b) {
        spin.block(b * n, b * n, n, n) += etas[i] * nr.v[b] * Matrix::Identity(n, n);
      }
      const MultiTopState mt{pe, nr.q, spin};
      const MultiTopDerivs dr = nm_eom(mt);
      errs[i] = (dr.spin_dot / etas[i] - dnr.spin_dot).cwiseAbs().maxCoeff();
    }
    slope_case("multitop -> non-relativistic multitop", errs[0], errs[1], etas[0], etas[1]);
  }
  {  // interacting tops (rank-1 reduced)
    const NonRelTopsState nr = random_nonrel_tops_state(rng, p.with_basis_n(2), 2);
    const NonRelTopsDerivs dnr = nonrel_tops_eom(nr);
    const int n = 2;
    double errs[2];
    for (int i = 0; i < 2; ++i) {
      const EllipticParams pe = nr.params.with_eta(Cplx{etas[i], 0.0});
      std::vector<Matrix> blocks = nr.blocks;
      for (int b = 0; b < nr.sites(); ++b) {
        blocks[b] += etas[i] * nr.v[b] * Matrix::Identity(n, n);
      }
      const InteractingTopsState tops{pe, nr.q, blocks};
      const InteractingTopsDerivs dr = tops_eom(tops);
      double err = 0.0;
      for (int b = 0; b < nr.sites(); ++b) {
        err = std::max(err,
                       (dr.blocks_dot[b] / etas[i] - dnr.blocks_dot[b]).cwiseAbs().maxCoeff());
      }
      errs[i] = err;
    }
    slope_case("interacting tops -> non-relativistic tops", errs[0], errs[1], etas[0], etas[1]);
  }

  // Evenness of the pair operators at eta = 0: d/deta Jcheck^{eta,q} equals
  // d/deta Jtilde^{eta,-q}.
  {
    const EllipticParams p2 = p.with_basis_n(2);
    Matrix s(2, 2);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) s(r, c) = rng.cnormal();
    }
    const auto pts = draw_away_from_poles(rng, p2, 1, [&](const std::vector<Cplx>& v) {
      return std::vector<Cplx>{v[0], 2.0 * v[0], -2.0 * v[0]};
    });
    const Cplx q = pts[0];
    const double h = 1e-4;
    const EllipticParams pp = p2.with_eta(Cplx{h, 0.0});
    const EllipticParams pm = p2.with_eta(Cplx{-h, 0.0});
    const Matrix dcheck =
        (j_check_apply(s, q, pp, true) - j_check_apply(s, q, pm, true)) / (2.0 * h);
    const Matrix dtilde =
        (j_tilde_apply(s, -q, pp, true) - j_tilde_apply(s, -q, pm, true)) / (2.0 * h);
    rep.cases.push_back(make_case("pair operator evenness at eta=0", (dcheck - dtilde).norm(), 1e-7));
  }

  return rep;
}

}  // namespace elltop
