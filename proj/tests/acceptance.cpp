// Acceptance battery: one pass/fail line per criterion, exit code equals the
// number of failed criteria. The first argument, when present, is the path to
// the command-line binary (used by the determinism criterion).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "elltop/dynamics.hpp"
#include "elltop/random_states.hpp"
#include "elltop/run_config.hpp"
#include "elltop/trajectory_io.hpp"
#include "elltop/verify.hpp"

using namespace elltop;

namespace {

int g_failures = 0;

void criterion(int k, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", k, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const Cplx kTauI{0.0, 1.0};
const Cplx kTau2{0.3, 0.8};
const Cplx kEta{0.21, 0.07};

RandomStateOptions residual_opts() {
  RandomStateOptions opt;
  opt.spin_scale = 1.0;
  opt.margin = 0.15;
  return opt;
}

RandomStateOptions trajectory_opts() {
  RandomStateOptions opt;
  opt.spin_scale = 0.25;
  opt.margin = 0.2;
  return opt;
}

// --- criterion 1: elliptic identity battery -------------------------------

void criterion_identities() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  double worst = 0.0;
  for (const Cplx tau : {kTauI, kTau2}) {
    const EllipticParams p{tau, 3, kEta};
    const VerifyReport r = identity_suite(p, 42, 200);
    pass = pass && r.passed();
    for (const auto& c : r.cases) worst = std::max(worst, c.measured / c.tolerance);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && secs < 5.0;
  criterion(1, "elliptic identity battery at two moduli",
            pass, "worst residual at " + fmt(worst) + "x tolerance, " + fmt(secs) + " s");
}

// --- criterion 2: Fourier formulas -----------------------------------------

void criterion_fourier() {
  const EllipticParams p{kTauI, 3, kEta};
  const VerifyReport r = fourier_suite(p, {2, 3, 4, 5}, 42);
  double worst = 0.0;
  for (const auto& c : r.cases) worst = std::max(worst, c.measured);
  criterion(2, "finite Fourier formulas and pair coefficients (1e-10)", r.passed(),
            "worst residual " + fmt(worst));
}

// --- criteria 3-5: Lax residual certifications -----------------------------

void criterion_rs() {
  bool pass = true;
  double worst_on = 0.0, worst_off = 0.0, worst_ablate = 1e99;
  for (const int m : {2, 3}) {
    const EllipticParams p{kTauI, 1, kEta};
    const Cplx z = default_spectral_samples(p)[0];
    for (int seed = 1; seed <= 20; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed) * 100 + m);
      const SpinRSState s = random_rs_state(rng, p, m, residual_opts());
      const ModelState ms = pack_state(s);
      const double on = lax_residual(ms, nullptr, z);
      worst_on = std::max(worst_on, on);

      Vector qdot = s.spin.diagonal();
      for (int i = 0; i < m; ++i) qdot[i] += 0.4 * rng.cnormal();
      const double off = lax_residual(ms, &qdot, z);
      worst_off = std::max(worst_off, off);

      // Residual with the correction omitted.
      const Vector dy = model_rhs(ms, &qdot);
      ModelState plus = ms, minus = ms;
      const double h = 1e-6;
      plus.y = ms.y + h * dy;
      minus.y = ms.y - h * dy;
      const Matrix fd = (model_lax(plus, z) - model_lax(minus, z)) / (2.0 * h);
      const Matrix l = model_lax(ms, z), mm = model_m(ms, z);
      worst_ablate = std::min(worst_ablate, (fd - (l * mm - mm * l)).norm());
    }
  }
  pass = worst_on < 1e-8 && worst_off < 1e-8 && worst_ablate > 1e-3;
  criterion(3, "spin RS Lax equation on/off constraint, M in {2,3}, 20 seeds", pass,
            "on " + fmt(worst_on) + ", off " + fmt(worst_off) + ", ablated " +
                fmt(worst_ablate));
}

void criterion_top() {
  bool pass = true;
  double worst_res = 0.0, worst_tr = 0.0;
  for (const int n : {2, 3}) {
    const EllipticParams p{kTauI, n, kEta};
    const Cplx z = default_spectral_samples(p)[0];
    for (int seed = 1; seed <= 20; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed) * 200 + n);
      const TopState s = random_top_state(rng, p, residual_opts());
      worst_res = std::max(worst_res, lax_residual(pack_state(s, true), nullptr, z));
    }
    Rng rng(300 + static_cast<std::uint64_t>(n));
    const TopState s = random_top_state(rng, p, trajectory_opts());
    const Trajectory t = integrate(pack_state(s, true), IntegratorConfig{1e-3, 1000, 100});
    pass = pass && t.completed;
    Cplx tr0{0.0, 0.0};
    for (int a = 0; a < n; ++a) tr0 += t.states.front()[a * n + a];
    for (const Vector& y : t.states) {
      Cplx tr{0.0, 0.0};
      for (int a = 0; a < n; ++a) tr += y[a * n + a];
      worst_tr = std::max(worst_tr, std::abs(tr - tr0));
    }
  }
  pass = pass && worst_res < 1e-8 && worst_tr < 1e-13;
  criterion(4, "relativistic top Lax equation and trace conservation, N in {2,3}", pass,
            "residual " + fmt(worst_res) + ", trace drift " + fmt(worst_tr));
}

void criterion_multitop() {
  bool pass = true;
  double worst_on = 0.0, worst_off = 0.0, worst_forms = 0.0;
  for (const auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const EllipticParams p{kTauI, n, kEta};
    const Cplx z = default_spectral_samples(p)[0];
    for (int seed = 1; seed <= 20; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed) * 400 + n * 10 + m);
      const MultiTopState s = random_multitop_state(rng, p, m, residual_opts());
      const ModelState ms = pack_state(s, Family::multitop);
      worst_on = std::max(worst_on, lax_residual(ms, nullptr, z));
      Vector qdot(m);
      for (int i = 0; i < m; ++i) {
        qdot[i] = s.block(i, i).trace() / static_cast<double>(n) + 0.4 * rng.cnormal();
      }
      worst_off = std::max(worst_off, lax_residual(ms, &qdot, z));
      const MultiTopDerivs a = nm_eom(s, BlockForm::compact);
      const MultiTopDerivs b = nm_eom(s, BlockForm::split);
      worst_forms = std::max(
          worst_forms, (a.spin_dot - b.spin_dot).norm() / std::max(1.0, a.spin_dot.norm()));
    }
  }
  pass = worst_on < 1e-8 && worst_off < 1e-8 && worst_forms < 1e-12;
  criterion(5, "block Lax equation with constraint correction, (N,M) grid, 20 seeds", pass,
            "on " + fmt(worst_on) + ", off " + fmt(worst_off) + ", form gap " +
                fmt(worst_forms));
}

// --- criterion 6: degenerations --------------------------------------------

void criterion_degenerations() {
  bool pass = true;
  double worst_eom = 0.0, worst_traj = 0.0;

  {  // N=1 blocks against spin RS, equations and full trajectory
    const EllipticParams p{kTauI, 1, kEta};
    Rng rng(61);
    const SpinRSState rs = random_rs_state(rng, p, 3, trajectory_opts());
    const MultiTopState mt{p, rs.q, rs.spin};
    const Cplx z = default_spectral_samples(p)[0];
    worst_eom = std::max(worst_eom, (rs_lax(rs, z) - nm_lax(mt, z)).cwiseAbs().maxCoeff());
    worst_eom = std::max(worst_eom, (rs_m(rs, z) - nm_m(mt, z)).cwiseAbs().maxCoeff());
    const RSDerivs dr = rs_eom(rs);
    const MultiTopDerivs dm = nm_eom(mt);
    worst_eom = std::max(worst_eom, (dr.spin_dot - dm.spin_dot).cwiseAbs().maxCoeff());

    const IntegratorConfig cfg{1e-3, 1000, 100};
    const Trajectory ta = integrate(pack_state(rs), cfg);
    const Trajectory tb = integrate(pack_state(mt, Family::multitop), cfg);
    pass = pass && ta.completed && tb.completed;
    for (size_t r = 0; r < ta.states.size() && pass; ++r) {
      worst_traj =
          std::max(worst_traj, (ta.states[r] - tb.states[r]).cwiseAbs().maxCoeff());
    }
  }
  {  // M=1 block against the relativistic top
    const EllipticParams p{kTauI, 3, kEta};
    Rng rng(62);
    const TopState top = random_top_state(rng, p, trajectory_opts());
    const MultiTopState mt{p, Vector::Zero(1), top.spin};
    const Cplx z = default_spectral_samples(p)[0];
    worst_eom = std::max(worst_eom, (top_lax(top, z) - nm_lax(mt, z)).cwiseAbs().maxCoeff());
    Matrix d = nm_m(mt, z) - top_m(top, z);
    d -= (d.trace() / 3.0) * Matrix::Identity(3, 3);
    worst_eom = std::max(worst_eom, d.cwiseAbs().maxCoeff());
    const MultiTopDerivs dm = nm_eom(mt);
    worst_eom = std::max(worst_eom, (dm.spin_dot - top_eom(top)).cwiseAbs().maxCoeff());

    const IntegratorConfig cfg{1e-3, 1000, 100};
    const Trajectory ta = integrate(pack_state(top, true), cfg);
    const Trajectory tb = integrate(pack_state(mt, Family::multitop), cfg);
    pass = pass && ta.completed && tb.completed;
    for (size_t r = 0; r < ta.states.size() && pass; ++r) {
      // the block state carries q1 in front; compare the spin parts
      worst_traj = std::max(
          worst_traj,
          (ta.states[r] - tb.states[r].segment(1, ta.states[r].size())).cwiseAbs().maxCoeff());
    }
  }
  pass = pass && worst_eom < 1e-13 && worst_traj < 1e-12;
  criterion(6, "degenerations N=1 (spin RS) and M=1 (top), EOM and trajectories", pass,
            "EOM gap " + fmt(worst_eom) + ", trajectory gap " + fmt(worst_traj));
}

// --- criterion 7: rank-1 reduction ------------------------------------------

void criterion_rank1() {
  bool pass = true;
  double worst_eom = 0.0, worst_gap = 0.0;
  for (const auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}}) {
    const EllipticParams p{kTauI, n, kEta};
    for (int seed = 1; seed <= 20; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed) * 700 + m);
      const Rank1State r1 = random_rank1_state(rng, p, m, residual_opts());
      const MultiTopDerivs full = nm_eom(rank1_embed(r1));
      const Rank1Derivs red = rank1_eom(r1);
      for (int i = 0; i < m; ++i) {
        const Matrix fb = full.spin_dot.block(i * n, i * n, n, n);
        worst_eom = std::max(worst_eom,
                             (fb - red.blocks_dot[i]).norm() / std::max(1.0, fb.norm()));
      }
    }
  }
  {
    const EllipticParams p{kTauI, 2, kEta};
    Rng rng(71);
    const Rank1State r1 = random_rank1_state(rng, p, 2, trajectory_opts());
    const Trajectory t = integrate(pack_state(r1), IntegratorConfig{1e-3, 100, 10});
    pass = pass && t.completed;
    for (const auto& d : t.diagnostics) worst_gap = std::max(worst_gap, d.rank_gap);
  }
  pass = pass && worst_eom < 1e-10 && worst_gap < 1e-8;
  criterion(7, "rank-1 reduced equations and rank preservation", pass,
            "EOM gap " + fmt(worst_eom) + ", rank gap " + fmt(worst_gap));
}

// --- criterion 8: limits ----------------------------------------------------

void criterion_limits() {
  const EllipticParams p{kTauI, 3, kEta};
  const VerifyReport r = limit_suite(p, 42);
  std::string detail;
  for (const auto& c : r.cases) {
    if (!detail.empty()) detail += ", ";
    detail += fmt(c.measured);
  }
  criterion(8, "expansion order 3, limit order 1 (all families), evenness", r.passed(),
            "deviations " + detail);
}

// --- criterion 9: conservation ----------------------------------------------

void criterion_conservation() {
  bool pass = true;
  double worst_drift = 0.0;
  const IntegratorConfig cfg{1e-3, 1000, 50};
  const auto check_traj = [&](const ModelState& ms) {
    const Trajectory t = integrate(ms, cfg);
    if (!t.completed) {
      pass = false;
      return;
    }
    const auto& base = t.diagnostics.front().invariants;
    for (const auto& rec : t.diagnostics) {
      for (size_t i = 0; i < base.size(); ++i) {
        worst_drift = std::max(worst_drift, std::abs(rec.invariants[i] - base[i]) /
                                                std::max(1.0, std::abs(base[i])));
      }
    }
  };

  for (const int m : {2, 3}) {
    Rng rng(900 + static_cast<std::uint64_t>(m));
    check_traj(pack_state(random_rs_state(rng, EllipticParams{kTauI, 1, kEta}, m,
                                          trajectory_opts())));
  }
  for (const int n : {2, 3}) {
    Rng rng(910 + static_cast<std::uint64_t>(n));
    check_traj(pack_state(random_top_state(rng, EllipticParams{kTauI, n, kEta},
                                           trajectory_opts()), true));
  }
  for (const auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    Rng rng(920 + static_cast<std::uint64_t>(n * 10 + m));
    check_traj(pack_state(random_multitop_state(rng, EllipticParams{kTauI, n, kEta}, m,
                                                trajectory_opts()),
                          Family::multitop));
  }
  for (const auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}}) {
    Rng rng(930 + static_cast<std::uint64_t>(n * 10 + m));
    check_traj(pack_state(random_rank1_state(rng, EllipticParams{kTauI, n, kEta}, m,
                                             trajectory_opts())));
  }
  pass = pass && worst_drift < 1e-6;

  // RK4 order through step halving.
  double ratio = 0.0;
  {
    Rng rng(941);
    RandomStateOptions opt;
    opt.spin_scale = 0.4;
    opt.margin = 0.2;
    const SpinRSState s = random_rs_state(rng, EllipticParams{kTauI, 1, kEta}, 2, opt);
    const ModelState ms = pack_state(s);
    DiagnosticsOptions no_diag;
    no_diag.invariants = false;
    const auto run = [&](double dt) {
      const long long steps = std::llround(0.4 / dt);
      return integrate(ms, IntegratorConfig{dt, steps, steps}, no_diag).states.back();
    };
    const Vector ref = run(0.02 / 16.0);
    const double e1 = (run(0.02) - ref).cwiseAbs().maxCoeff();
    const double e2 = (run(0.01) - ref).cwiseAbs().maxCoeff();
    ratio = e1 / e2;
    pass = pass && std::abs(ratio - 16.0) <= 2.0;
  }
  criterion(9, "spectral invariants conserved over t in [0,1]; RK4 order", pass,
            "worst drift " + fmt(worst_drift) + ", halving ratio " + fmt(ratio));
}

// --- criterion 10: CLI determinism ------------------------------------------

int run_cmd(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_determinism(const std::string& cli) {
  if (cli.empty()) {
    criterion(10, "CLI determinism", false, "no CLI path given on the command line");
    return;
  }
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "elltop_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string common = " verify --all --seed 42 --tau 0,1 --eta 0.21,0.07 --out ";
  const int rc1 = run_cmd(cli + common + (base / "a").string() + " >/dev/null 2>&1");
  const int rc2 = run_cmd(cli + common + (base / "b").string() + " >/dev/null 2>&1");
  const bool identical =
      slurp(base / "a" / "verify_report.json") == slurp(base / "b" / "verify_report.json");
  const int rc_bad = run_cmd(cli + " verify --all --tau 1,0 >/dev/null 2>&1");
  const bool pass = rc1 == 0 && rc2 == 0 && identical && rc_bad == 2;
  criterion(10, "verify --all exits 0 and repeats bit-identically; bad tau exits 2", pass,
            "exits " + std::to_string(rc1) + "/" + std::to_string(rc2) +
                (identical ? ", identical reports" : ", DIFFERENT reports") + ", bad-tau exit " +
                std::to_string(rc_bad));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion_identities();
  criterion_fourier();
  criterion_rs();
  criterion_top();
  criterion_multitop();
  criterion_degenerations();
  criterion_rank1();
  criterion_limits();
  criterion_conservation();
  criterion_determinism(cli);
  if (g_failures == 0) {
    std::printf("acceptance: all criteria PASS\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
