#pragma once

namespace elltop {

// Index of the sine-algebra basis, stored canonically in [0, N) x [0, N).
// (0,0) is the scalar mode.
struct ModeIndex {
  int a1 = 0;
  int a2 = 0;

  bool is_zero() const { return a1 == 0 && a2 == 0; }
  friend bool operator==(ModeIndex a, ModeIndex b) = default;
};

inline int mode_reduce(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

inline ModeIndex mode_canonical(int a1, int a2, int n) {
  return {mode_reduce(a1, n), mode_reduce(a2, n)};
}

inline ModeIndex mode_add(ModeIndex a, ModeIndex b, int n) {
  return mode_canonical(a.a1 + b.a1, a.a2 + b.a2, n);
}

inline ModeIndex mode_neg(ModeIndex a, int n) {
  return mode_canonical(-a.a1, -a.a2, n);
}

// Flat storage position a1*N + a2 of a canonical index.
inline int mode_flat(ModeIndex a, int n) { return a.a1 * n + a.a2; }

inline ModeIndex mode_unflat(int pos, int n) { return {pos / n, pos % n}; }

}  // namespace elltop
