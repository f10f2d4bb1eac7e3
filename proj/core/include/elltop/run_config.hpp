#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elltop/dynamics.hpp"

namespace elltop {

/// Fully parsed simulation configuration. Initial data is either explicit
/// (q/v/spin in the packed layout, or xi/rho for the rank1 family) or drawn
/// from the seed. Complex numbers appear as [re, im] pairs in the JSON form.
struct RunConfig {
  Family family = Family::spin_rs;
  int n = 1;
  int m = 2;
  Cplx tau{0.0, 1.0};
  Cplx eta{0.21, 0.07};
  std::uint64_t seed = 1;

  bool has_initial = false;
  Vector q0;
  Vector v0;
  Vector spin_flat;  // spin part of the packed state

  bool has_xi_rho = false;
  std::vector<Vector> xi0;
  std::vector<RowVector> rho0;

  double spin_scale = 1.0;
  double margin = 0.12;

  IntegratorConfig integrator;
  DiagnosticsOptions diagnostics;

  std::string out_dir = ".";
  std::string csv_name = "trajectory.csv";
  std::string json_name = "trajectory.json";
};

/// Parse a JSON document; throws ConfigError naming the offending field.
RunConfig parse_run_config(const std::string& json_text);

RunConfig load_run_config(const std::string& path);

std::string run_config_json(const RunConfig& c);

/// Build the initial packed state (explicit data or seeded draw); validates
/// family-specific dimension constraints.
ModelState initial_state(const RunConfig& c);

/// Copy of the config with the initial data made explicit, so a rerun from
/// the echo reproduces the trajectory bit-identically.
RunConfig resolved_config(const RunConfig& c, const ModelState& s0);

}  // namespace elltop
