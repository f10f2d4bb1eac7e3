#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "elltop/dynamics.hpp"
#include "elltop/random_states.hpp"
#include "elltop/trajectory_io.hpp"
#include "oracle_utils.hpp"

using namespace elltop;

namespace {
const Cplx kTauI{0.0, 1.0};
const Cplx kEta{0.21, 0.07};
}  // namespace

TEST_CASE("free motion integrates exactly up to roundoff") {
  const EllipticParams p{kTauI, 1, kEta};
  SpinRSState s{p, Vector(2), Matrix::Zero(2, 2)};
  s.q << Cplx{0.1, 0.05}, Cplx{-0.25, -0.1};
  s.spin(0, 0) = Cplx{0.05, 0.02};
  s.spin(1, 1) = Cplx{-0.04, 0.01};
  IntegratorConfig cfg{1e-3, 1000, 100};
  const Trajectory t = integrate(pack_state(s), cfg);
  REQUIRE(t.completed);
  const Vector& last = t.states.back();
  CHECK(std::abs(last[0] - (s.q[0] + s.spin(0, 0))) < 1e-12);
  CHECK(std::abs(last[1] - (s.q[1] + s.spin(1, 1))) < 1e-12);
}

TEST_CASE("step halving shows fourth-order convergence") {
  Rng rng(51);
  const EllipticParams p{kTauI, 1, kEta};
  RandomStateOptions opt;
  opt.spin_scale = 0.4;
  opt.margin = 0.2;
  const SpinRSState s = random_rs_state(rng, p, 2, opt);
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
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(2.0 / 16.0));
}

TEST_CASE("top trajectories conserve the trace to near machine precision") {
  Rng rng(52);
  const EllipticParams p{kTauI, 2, kEta};
  const TopState s = random_top_state(rng, p);
  const Trajectory t = integrate(pack_state(s, true), IntegratorConfig{1e-3, 1000, 100});
  REQUIRE(t.completed);
  const Cplx tr0 = t.states.front()[0] + t.states.front()[3];
  for (const Vector& y : t.states) {
    CHECK(std::abs((y[0] + y[3]) - tr0) < 1e-13);
  }
}

TEST_CASE("identical configurations integrate to bit-identical trajectories") {
  Rng rng1(53), rng2(53);
  const EllipticParams p{kTauI, 2, kEta};
  const MultiTopState a = random_multitop_state(rng1, p, 2);
  const MultiTopState b = random_multitop_state(rng2, p, 2);
  const IntegratorConfig cfg{1e-3, 200, 50};
  const Trajectory ta = integrate(pack_state(a, Family::multitop), cfg);
  const Trajectory tb = integrate(pack_state(b, Family::multitop), cfg);
  REQUIRE(ta.states.size() == tb.states.size());
  for (size_t r = 0; r < ta.states.size(); ++r) {
    for (Eigen::Index i = 0; i < ta.states[r].size(); ++i) {
      CHECK(ta.states[r][i] == tb.states[r][i]);
    }
  }
  CHECK(trajectory_csv(ta) == trajectory_csv(tb));
}

TEST_CASE("diagnostics do not mutate recorded states") {
  Rng rng(54);
  const EllipticParams p{kTauI, 1, kEta};
  const SpinRSState s = random_rs_state(rng, p, 2);
  const Trajectory t = integrate(pack_state(s), IntegratorConfig{1e-3, 50, 10});
  const std::vector<Vector> copy = t.states;
  for (size_t r = 0; r < t.states.size(); ++r) {
    ModelState ms{t.initial.family, t.initial.params, t.initial.sites, t.states[r]};
    (void)spectral_invariants(ms, t.z_samples_used, 3);
    (void)model_constraint_gap(ms);
  }
  for (size_t r = 0; r < t.states.size(); ++r) {
    for (Eigen::Index i = 0; i < copy[r].size(); ++i) CHECK(copy[r][i] == t.states[r][i]);
  }
}

TEST_CASE("constraint gap stays at zero along on-constraint trajectories") {
  Rng rng(55);
  const EllipticParams p{kTauI, 2, kEta};
  RandomStateOptions opt;
  opt.spin_scale = 0.3;
  opt.margin = 0.15;
  const MultiTopState s = random_multitop_state(rng, p, 2, opt);
  const Trajectory t = integrate(pack_state(s, Family::multitop), IntegratorConfig{1e-3, 500, 100});
  REQUIRE(t.completed);
  for (const auto& d : t.diagnostics) CHECK(d.constraint_gap < 1e-9);
}

TEST_CASE("spectral invariants drift at roundoff level on short horizons") {
  Rng rng(56);
  const EllipticParams p{kTauI, 2, kEta};
  RandomStateOptions opt;
  opt.spin_scale = 0.4;
  opt.margin = 0.15;
  const MultiTopState s = random_multitop_state(rng, p, 2, opt);
  const Trajectory t = integrate(pack_state(s, Family::multitop), IntegratorConfig{1e-3, 300, 100});
  REQUIRE(t.completed);
  const auto& first = t.diagnostics.front().invariants;
  const auto& last = t.diagnostics.back().invariants;
  REQUIRE(first.size() == 9);  // 3 sample points, k <= 3
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(std::abs(last[i] - first[i]) / std::max(1.0, std::abs(first[i])) < 1e-8);
  }
}

TEST_CASE("a collision stops the run and keeps the prefix") {
  // Two particles heading straight at each other with a wide pole tolerance.
  const EllipticParams p{kTauI, 1, kEta, PoleTolerance{0.05}};
  SpinRSState s{p, Vector(2), Matrix::Zero(2, 2)};
  s.q << Cplx{-0.15, 0.0}, Cplx{0.15, 0.0};
  s.spin(0, 0) = Cplx{0.5, 0.0};
  s.spin(1, 1) = Cplx{-0.5, 0.0};
  const Trajectory t = integrate(pack_state(s), IntegratorConfig{1e-3, 1000, 50});
  CHECK_FALSE(t.completed);
  CHECK(t.abort_time > 0.0);
  CHECK(!t.times.empty());
  CHECK(t.abort_reason.find("collision") != std::string::npos);
}

TEST_CASE("non-relativistic families refuse off-constraint initial data") {
  Rng rng(57);
  const EllipticParams p{kTauI, 1, kEta};
  SpinCMState s = random_cm_state(rng, p, 2);
  s.spin(0, 0) = Cplx{0.2, 0.0};
  CHECK_THROWS_AS(integrate(pack_state(s), IntegratorConfig{}), ConstraintViolated);
}

TEST_CASE("csv and json exports carry the documented columns") {
  Rng rng(58);
  const EllipticParams p{kTauI, 2, kEta};
  const Rank1State s = random_rank1_state(rng, p, 2);
  const Trajectory t = integrate(pack_state(s), IntegratorConfig{1e-3, 20, 10});
  const auto cols = trajectory_columns(t);
  CHECK(cols.front() == "time");
  CHECK(std::find(cols.begin(), cols.end(), "q1_re") != cols.end());
  CHECK(std::find(cols.begin(), cols.end(), "S_1_2_2_1_im") != cols.end());
  CHECK(std::find(cols.begin(), cols.end(), "rank_gap") != cols.end());
  CHECK(std::find(cols.begin(), cols.end(), "inv_z3_k3_drift") != cols.end());
  const std::string csv = trajectory_csv(t);
  // one header plus one line per record
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(t.times.size()));
  const std::string json = trajectory_json(t);
  CHECK(json.find("\"family\": \"rank1\"") != std::string::npos);
}

TEST_CASE("pack and unpack round-trip every family") {
  Rng rng(59);
  const EllipticParams p2{kTauI, 2, kEta};
  const EllipticParams p1{kTauI, 1, kEta};
  {
    const SpinRSState s = random_rs_state(rng, p1, 3);
    const SpinRSState u = unpack_rs(pack_state(s));
    CHECK((u.q - s.q).cwiseAbs().maxCoeff() == 0.0);
    CHECK((u.spin - s.spin).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    const MultiTopState s = random_multitop_state(rng, p2, 2);
    const MultiTopState u = unpack_multitop(pack_state(s, Family::multitop));
    CHECK((u.spin - s.spin).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    const NonRelTopsState s = random_nonrel_tops_state(rng, p2, 2);
    const NonRelTopsState u = unpack_nonrel_tops(pack_state(s));
    CHECK((u.v - s.v).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 2; ++i) {
      CHECK((u.blocks[i] - s.blocks[i]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}
