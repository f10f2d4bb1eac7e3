#pragma once

#include <utility>
#include <vector>

#include "elltop/mode_index.hpp"
#include "elltop/types.hpp"

namespace elltop {

/// Components S_alpha of an N x N matrix in the sine-algebra basis,
/// S = sum_alpha T_alpha S_alpha, stored densely over canonical indices.
struct ComponentMap {
  int n = 0;
  std::vector<Cplx> coeffs;  // flat index a1*n + a2

  ComponentMap() = default;
  explicit ComponentMap(int n_) : n(n_), coeffs(static_cast<size_t>(n_) * n_, Cplx{0, 0}) {}

  Cplx& at(ModeIndex a) { return coeffs[static_cast<size_t>(mode_flat(a, n))]; }
  Cplx at(ModeIndex a) const { return coeffs[static_cast<size_t>(mode_flat(a, n))]; }
};

/// Clock and shift matrices (Q, Lambda) with Q^N = Lambda^N = 1:
/// Q_kl = delta_kl exp(2 pi i k / N), Lambda_kl = delta_{k-l+1 = 0 mod N}
/// (1-based indices; Lambda has ones on the first superdiagonal and the corner).
std::pair<Matrix, Matrix> clock_shift(int n);

/// T at an arbitrary integer index: exp(pi i a1 a2 / N) Q^{a1} Lambda^{a2}.
/// The phase uses the integer product a1*a2, so different representatives of
/// the same class differ by a sign; this is the convention in which the
/// product rule T_a T_b = kappa_{a,b} T_{a+b} holds with integer index sums.
Matrix t_basis_at(long long a1, long long a2, int n);

/// T_alpha for a canonical index.
Matrix t_basis(ModeIndex alpha, int n);

/// kappa_{a,b} = exp(pi i (b1 a2 - b2 a1) / N), from canonical representatives.
Cplx kappa(ModeIndex a, ModeIndex b, int n);

/// Structure constants C_{a,b} = kappa_{a,b} - kappa_{b,a};
/// [T_a, T_b] = C_{a,b} T_{a+b} with T at the integer-sum index.
Cplx structure_c(ModeIndex a, ModeIndex b, int n);

/// S_alpha = tr(S T_{-alpha}) / N with T at the integer index (-a1, -a2).
ComponentMap decompose(const Matrix& s);

/// S = sum_alpha T_alpha S_alpha over canonical indices.
Matrix compose(const ComponentMap& c);

/// Kronecker product with (A x B) having block structure A_ij * B. This fixes
/// the bit layout of permutation(n) and of all tensor-space operators.
Matrix kron(const Matrix& a, const Matrix& b);

/// Permutation operator P on C^N x C^N: P = sum_ab e_ab x e_ba
/// = (1/N) sum_alpha T_alpha x T_{-alpha}; P^2 = 1, (B x C) P = P (C x B).
Matrix permutation(int n);

/// Trace over the second tensor factor of an N^2 x N^2 matrix.
Matrix partial_trace_second(const Matrix& x, int n);

}  // namespace elltop
