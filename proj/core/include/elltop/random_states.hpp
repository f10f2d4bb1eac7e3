#pragma once

#include <cstdint>
#include <random>

#include "elltop/models.hpp"

namespace elltop {

/// Deterministic random source. The uniform and normal transforms are spelled
/// out here so that identical seeds give bit-identical draws on any standard
/// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Cplx cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Options for random state generation. Positions are drawn uniformly in the
/// fundamental rectangle and re-drawn until every lattice-singular combination
/// the models evaluate stays at least `margin` away from the lattice.
struct RandomStateOptions {
  double spin_scale = 1.0;
  double margin = 0.12;
  int max_tries = 10000;
};

/// M positions admissible for block size n: all q_ij, omega_alpha + q_ij,
/// omega_alpha + q_ij +- eta, n q_ij and n(q_ij +- eta) are off-lattice by
/// `margin`.
Vector random_positions(Rng& rng, int m, const EllipticParams& p, const RandomStateOptions& opt);

SpinRSState random_rs_state(Rng& rng, const EllipticParams& p, int m,
                            const RandomStateOptions& opt = {});
TopState random_top_state(Rng& rng, const EllipticParams& p,
                          const RandomStateOptions& opt = {});
MultiTopState random_multitop_state(Rng& rng, const EllipticParams& p, int m,
                                    const RandomStateOptions& opt = {});
Rank1State random_rank1_state(Rng& rng, const EllipticParams& p, int m,
                              const RandomStateOptions& opt = {});

/// CM-type states have the diagonal constraint projected out exactly.
SpinCMState random_cm_state(Rng& rng, const EllipticParams& p, int m,
                            const RandomStateOptions& opt = {});
NonRelMultiTopState random_nonrel_mt_state(Rng& rng, const EllipticParams& p, int m,
                                           const RandomStateOptions& opt = {});
/// rho^i is projected orthogonal to xi^i so that every diagonal block is
/// trace-free while the state stays rank-1.
NonRelTopsState random_nonrel_tops_state(Rng& rng, const EllipticParams& p, int m,
                                         const RandomStateOptions& opt = {});

}  // namespace elltop
