#pragma once

#include <string>
#include <vector>

#include "elltop/dynamics.hpp"

namespace elltop {

/// Column names of the flattened trajectory table, in order: time, positions,
/// velocities (when independent), spin entries (block row-major, entries
/// row-major, every complex value as adjacent _re/_im), then diagnostics.
std::vector<std::string> trajectory_columns(const Trajectory& t);

/// CSV with a header row; numbers formatted to round-trip (%.17g).
std::string trajectory_csv(const Trajectory& t);

/// JSON document mirroring the CSV table plus run metadata.
std::string trajectory_json(const Trajectory& t);

}  // namespace elltop
