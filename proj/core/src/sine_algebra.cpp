#include "elltop/sine_algebra.hpp"

#include <cmath>

namespace elltop {

std::pair<Matrix, Matrix> clock_shift(int n) {
  if (n < 1) throw DimensionMismatch("clock_shift: N must be >= 1");
  Matrix q = Matrix::Zero(n, n);
  Matrix lam = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    q(k, k) = std::exp(kTwoPiI * static_cast<double>(k + 1) / static_cast<double>(n));
    lam(k, (k + 1) % n) = Cplx{1.0, 0.0};
  }
  return {q, lam};
}

Matrix t_basis_at(long long a1, long long a2, int n) {
  if (n < 1) throw DimensionMismatch("t_basis_at: N must be >= 1");
  const int p1 = mode_reduce(static_cast<int>(((a1 % n) + n) % n), n);
  const int p2 = mode_reduce(static_cast<int>(((a2 % n) + n) % n), n);
  const Cplx phase =
      std::exp(kI * kPi * static_cast<double>(a1) * static_cast<double>(a2) / static_cast<double>(n));
  // Q^{p1} Lambda^{p2}: entry (k, l) = exp(2 pi i (k+1) p1 / N) delta_{l, k+p2 mod N}
  Matrix t = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const Cplx qk =
        std::exp(kTwoPiI * static_cast<double>((k + 1) * p1) / static_cast<double>(n));
    t(k, (k + p2) % n) = phase * qk;
  }
  return t;
}

Matrix t_basis(ModeIndex alpha, int n) { return t_basis_at(alpha.a1, alpha.a2, n); }

Cplx kappa(ModeIndex a, ModeIndex b, int n) {
  return std::exp(kI * kPi * static_cast<double>(b.a1 * a.a2 - b.a2 * a.a1) /
                  static_cast<double>(n));
}

Cplx structure_c(ModeIndex a, ModeIndex b, int n) { return kappa(a, b, n) - kappa(b, a, n); }

ComponentMap decompose(const Matrix& s) {
  if (s.rows() != s.cols()) throw DimensionMismatch("decompose: matrix must be square");
  const int n = static_cast<int>(s.rows());
  ComponentMap c(n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const Matrix tneg = t_basis_at(-a1, -a2, n);
      c.at({a1, a2}) = (s * tneg).trace() / static_cast<double>(n);
    }
  }
  return c;
}

Matrix compose(const ComponentMap& c) {
  const int n = c.n;
  Matrix s = Matrix::Zero(n, n);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      s += c.at({a1, a2}) * t_basis({a1, a2}, n);
    }
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix permutation(int n) {
  if (n < 1) throw DimensionMismatch("permutation: N must be >= 1");
  Matrix p = Matrix::Zero(n * n, n * n);
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      p(i1 * n + i2, i2 * n + i1) = Cplx{1.0, 0.0};
    }
  }
  return p;
}

Matrix partial_trace_second(const Matrix& x, int n) {
  if (x.rows() != n * n || x.cols() != n * n) {
    throw DimensionMismatch("partial_trace_second: expected an N^2 x N^2 matrix");
  }
  Matrix out = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      Cplx acc{0.0, 0.0};
      for (int b = 0; b < n; ++b) acc += x(a * n + b, c * n + b);
      out(a, c) = acc;
    }
  }
  return out;
}

}  // namespace elltop
