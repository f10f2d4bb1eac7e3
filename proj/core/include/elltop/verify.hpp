#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elltop/elliptic.hpp"

namespace elltop {

struct VerifyCase {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  Cplx tau;
  Cplx eta;
  std::vector<VerifyCase> cases;

  bool passed() const {
    for (const auto& c : cases) {
      if (!c.pass) return false;
    }
    return true;
  }
};

std::string report_table(const VerifyReport& r);
std::string report_json(const VerifyReport& r);
std::string reports_json(const std::vector<VerifyReport>& rs);

/// Residual battery for the function identities: Fay, its degeneration,
/// quasi-periodicity, the indexed product rule and argument-reduction
/// invisibility, at n_cases random points each.
VerifyReport identity_suite(const EllipticParams& p, std::uint64_t seed, int n_cases = 200);

/// Finite Fourier-transform formulas over the mode grid for each N in `ns`,
/// plus consistency of the closed-form pair coefficients with the direct
/// transform of the block-operator kernel.
VerifyReport fourier_suite(const EllipticParams& p, const std::vector<int>& ns,
                           std::uint64_t seed);

/// Degenerations: N=1 blocks against the spin RS model, M=1 against the
/// relativistic top (accompanying matrices modulo scalars), and the rank-1
/// reduced equations against diagonal blocks of the full flow.
VerifyReport reduction_suite(const EllipticParams& p, std::uint64_t seed);

/// eta -> 0 behaviour: third-order operator expansion, first-order convergence
/// of the rescaled equations of motion for all four families, and the
/// evenness relation between the two reduced pair operators.
VerifyReport limit_suite(const EllipticParams& p, std::uint64_t seed);

}  // namespace elltop
