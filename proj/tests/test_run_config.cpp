#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "elltop/run_config.hpp"

using namespace elltop;

TEST_CASE("a minimal config parses with defaults") {
  const RunConfig c = parse_run_config(R"({"family": "top", "N": 3})");
  CHECK(c.family == Family::top);
  CHECK(c.n == 3);
  CHECK(c.m == 1);
  CHECK(c.tau == Cplx{0.0, 1.0});
  CHECK(c.integrator.dt == 1e-3);
}

TEST_CASE("parse errors identify the offending field") {
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"N": 2})"), doctest::Contains("family"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"family": "bogus"})"), doctest::Contains("family"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"family": "top", "tau": [1.0]})"),
                       doctest::Contains("tau"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"family": "top", "integrator": {"dt": -1}})"),
                       doctest::Contains("dt"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("not json at all"), ConfigError);
}

TEST_CASE("family-specific dimension constraints") {
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"family": "spin-rs", "N": 2})"),
                       doctest::Contains("must be 1"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"family": "top", "M": 2})"),
                       doctest::Contains("must be 1"), ConfigError);
  // spin-rs accepts N omitted or N = 1
  CHECK(parse_run_config(R"({"family": "spin-rs", "M": 3})").n == 1);
}

TEST_CASE("seeded state, resolved echo, and bit-identical rebuild") {
  const RunConfig c = parse_run_config(
      R"({"family": "multitop", "N": 2, "M": 2, "seed": 9, "spin_scale": 0.5})");
  const ModelState s0 = initial_state(c);
  const RunConfig echo = resolved_config(c, s0);
  CHECK(echo.has_initial);
  const std::string text = run_config_json(echo);
  const RunConfig reparsed = parse_run_config(text);
  const ModelState s1 = initial_state(reparsed);
  REQUIRE(s0.y.size() == s1.y.size());
  for (Eigen::Index i = 0; i < s0.y.size(); ++i) CHECK(s0.y[i] == s1.y[i]);
}

TEST_CASE("explicit rank-1 data embeds to the full block matrix") {
  const std::string text = R"({
    "family": "rank1", "N": 2, "M": 2,
    "initial": {
      "q": [[0.1, 0.05], [-0.2, -0.1]],
      "xi": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
      "rho": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
    }
  })";
  const RunConfig c = parse_run_config(text);
  REQUIRE(c.has_xi_rho);
  const ModelState s0 = initial_state(c);
  // blocks: S^{ij} = xi^i rho^j; xi^1 = e1, xi^2 = e2, etc.
  // Block (1,1) entry (1,1) equals 1.
  CHECK(s0.y[2] == Cplx{1.0, 0.0});  // q(2) then first block entry
  CHECK(s0.y.size() == 2 + 16);
}

TEST_CASE("coincident positions in explicit data are rejected") {
  const std::string text = R"({
    "family": "spin-rs", "M": 2,
    "initial": {
      "q": [[0.1, 0.0], [0.1, 0.0]],
      "spin": [[0.1,0],[0.2,0],[0.3,0],[0.4,0]]
    }
  })";
  const RunConfig c = parse_run_config(text);
  CHECK_THROWS_AS(initial_state(c), Collision);
}

TEST_CASE("initial spin length is validated") {
  const std::string text = R"({
    "family": "top", "N": 2,
    "initial": {"spin": [[0.1,0],[0.2,0],[0.3,0]]}
  })";
  CHECK_THROWS_WITH_AS(initial_state(parse_run_config(text)), doctest::Contains("expected 4"),
                       ConfigError);
}
