#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "elltop/models.hpp"

namespace elltop {

/// The eight model families the integrator and the CLI know about. The
/// relativistic rank1 family evolves the full embedded NM x NM matrix (its
/// Lax pair and rank diagnostics live there); the reduced interacting-tops
/// equations are exposed through tops_eom and checked against it.
enum class Family {
  spin_rs,
  top,
  multitop,
  rank1,
  spin_cm,
  nonrel_top,
  nonrel_multitop,
  nonrel_rank1,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

bool family_has_positions(Family f);
bool family_has_velocities(Family f);  // independent velocity variables
bool family_has_lax(Family f);
bool family_has_rank_gap(Family f);

/// Uniform packed state: positions, then independent velocities (when the
/// family has them), then spin entries. Block matrices are packed in row-major
/// block order with row-major entries inside each block, matching the CSV
/// flattening exactly.
struct ModelState {
  Family family;
  EllipticParams params;
  int sites = 1;  // M
  Vector y;

  int block_n() const { return params.basis_n(); }
};

// Packing and unpacking between the typed model states and the flat layout.
ModelState pack_state(const SpinRSState& s);
ModelState pack_state(const TopState& s, bool relativistic = true);
ModelState pack_state(const MultiTopState& s, Family family = Family::multitop);
ModelState pack_state(const SpinCMState& s);
ModelState pack_state(const NonRelMultiTopState& s);
ModelState pack_state(const NonRelTopsState& s);
/// rank1 states integrate as the embedded full system.
ModelState pack_state(const Rank1State& s);

SpinRSState unpack_rs(const ModelState& s);
TopState unpack_top(const ModelState& s);
MultiTopState unpack_multitop(const ModelState& s);
SpinCMState unpack_cm(const ModelState& s);
NonRelMultiTopState unpack_nonrel_mt(const ModelState& s);
NonRelTopsState unpack_nonrel_tops(const ModelState& s);

/// Time derivative of the packed state. For the relativistic families the
/// position derivatives are the constrained velocities; qdot_override
/// replaces them for off-constraint studies (spin derivatives are unchanged).
Vector model_rhs(const ModelState& s, const Vector* qdot_override = nullptr);

Matrix model_lax(const ModelState& s, Cplx z);
Matrix model_m(const ModelState& s, Cplx z);
/// Off-constraint correction term of the Lax equation for the given qdot.
Matrix model_mu_term(const ModelState& s, const Vector& qdot, Cplx z);

/// Constraint diagnostic: |mu|_inf for the relativistic families (zero by
/// construction with derived velocities), max |tr S^{ii}|/N for the
/// non-relativistic ones.
double model_constraint_gap(const ModelState& s);

/// sigma_2 / sigma_1 of the spin matrix (full matrix for multitop/rank1,
/// worst diagonal block for nonrel_rank1); NaN when not applicable.
double model_rank_gap(const ModelState& s);

/// || (L(y + h rhs) - L(y - h rhs)) / 2h - [L, M] - mu-term ||_F at z.
/// On-constraint (no qdot) the mu-term is absent.
double lax_residual(const ModelState& s, const Vector* qdot, Cplx z, double h = 1e-6);

/// tr L^k(z) for k = 1..kmax at each sample point; out[zi][k-1].
std::vector<std::vector<Cplx>> spectral_invariants(const ModelState& s,
                                                   const std::vector<Cplx>& z_samples,
                                                   int kmax);

/// Three fixed spectral sample points, nudged deterministically off any
/// lattice proximity.
std::vector<Cplx> default_spectral_samples(const EllipticParams& p);

struct IntegratorConfig {
  double dt = 1e-3;
  long long steps = 1000;
  long long record_every = 10;
};

struct DiagnosticsOptions {
  bool invariants = true;
  std::vector<Cplx> z_samples;  // default_spectral_samples when empty
  int kmax = 3;
  bool lax_residuals = false;
  double fd_h = 1e-6;
};

struct DiagnosticsRecord {
  double constraint_gap = 0.0;
  double rank_gap = std::numeric_limits<double>::quiet_NaN();
  double lax_residual = std::numeric_limits<double>::quiet_NaN();
  std::vector<Cplx> invariants;  // [zi * kmax + (k-1)]
};

/// Time-stamped records of a fixed-step RK4 run. A singular configuration
/// (pole, collision, non-finite state) stops the run; the records collected
/// so far are kept and `completed` is false.
struct Trajectory {
  ModelState initial;
  IntegratorConfig config;
  DiagnosticsOptions diag_options;
  std::vector<Cplx> z_samples_used;

  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<DiagnosticsRecord> diagnostics;

  bool completed = true;
  double abort_time = 0.0;
  std::string abort_reason;
};

Trajectory integrate(const ModelState& initial, const IntegratorConfig& cfg,
                     const DiagnosticsOptions& diag = {});

}  // namespace elltop
