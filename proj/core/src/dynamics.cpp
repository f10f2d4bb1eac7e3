#include "elltop/dynamics.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace elltop {

namespace {

// --- flat layout helpers -------------------------------------------------

void put_matrix_rowmajor(Vector& y, Eigen::Index& pos, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) y[pos++] = m(r, c);
  }
}

Matrix get_matrix_rowmajor(const Vector& y, Eigen::Index& pos, int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = y[pos++];
  }
  return m;
}

// Full NM x NM matrix packed block-major: blocks (i,j) row-major, entries
// row-major inside each block.
void put_blocks(Vector& y, Eigen::Index& pos, const Matrix& full, int n, int m) {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      put_matrix_rowmajor(y, pos, full.block(i * n, j * n, n, n));
    }
  }
}

Matrix get_blocks(const Vector& y, Eigen::Index& pos, int n, int m) {
  Matrix full(n * m, n * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      full.block(i * n, j * n, n, n) = get_matrix_rowmajor(y, pos, n, n);
    }
  }
  return full;
}

Eigen::Index state_dim(Family f, int n, int m) {
  switch (f) {
    case Family::spin_rs: return m + m * m;
    case Family::top:
    case Family::nonrel_top: return n * n;
    case Family::multitop:
    case Family::rank1: return m + static_cast<Eigen::Index>(n) * n * m * m;
    case Family::spin_cm: return 2 * m + m * m;
    case Family::nonrel_multitop: return 2 * m + static_cast<Eigen::Index>(n) * n * m * m;
    case Family::nonrel_rank1: return 2 * m + static_cast<Eigen::Index>(n) * n * m;
  }
  throw std::logic_error("state_dim: unknown family");
}

void check_dim(const ModelState& s) {
  if (s.y.size() != state_dim(s.family, s.block_n(), s.sites)) {
    throw DimensionMismatch("ModelState: packed vector length does not match family/N/M");
  }
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::spin_rs: return "spin-rs";
    case Family::top: return "top";
    case Family::multitop: return "multitop";
    case Family::rank1: return "rank1";
    case Family::spin_cm: return "spin-cm";
    case Family::nonrel_top: return "nonrel-top";
    case Family::nonrel_multitop: return "nonrel-multitop";
    case Family::nonrel_rank1: return "nonrel-rank1";
  }
  throw std::logic_error("family_name: unknown family");
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::spin_rs, Family::top, Family::multitop, Family::rank1,
                   Family::spin_cm, Family::nonrel_top, Family::nonrel_multitop,
                   Family::nonrel_rank1}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

bool family_has_positions(Family f) {
  return f != Family::top && f != Family::nonrel_top;
}

bool family_has_velocities(Family f) {
  return f == Family::spin_cm || f == Family::nonrel_multitop || f == Family::nonrel_rank1;
}

bool family_has_lax(Family f) {
  return f == Family::spin_rs || f == Family::top || f == Family::multitop ||
         f == Family::rank1;
}

bool family_has_rank_gap(Family f) {
  return f == Family::multitop || f == Family::rank1 || f == Family::nonrel_rank1;
}

// --- pack / unpack --------------------------------------------------------

ModelState pack_state(const SpinRSState& s) {
  const int m = s.sites();
  Vector y(state_dim(Family::spin_rs, 1, m));
  Eigen::Index pos = 0;
  for (int i = 0; i < m; ++i) y[pos++] = s.q[i];
  put_matrix_rowmajor(y, pos, s.spin);
  return ModelState{Family::spin_rs, s.params, m, std::move(y)};
}

ModelState pack_state(const TopState& s, bool relativistic) {
  Vector y(state_dim(Family::top, s.params.basis_n(), 1));
  Eigen::Index pos = 0;
  put_matrix_rowmajor(y, pos, s.spin);
  return ModelState{relativistic ? Family::top : Family::nonrel_top, s.params, 1, std::move(y)};
}

ModelState pack_state(const MultiTopState& s, Family family) {
  if (family != Family::multitop && family != Family::rank1) {
    throw std::invalid_argument("pack_state: MultiTopState packs as multitop or rank1");
  }
  const int m = s.sites();
  const int n = s.block_n();
  Vector y(state_dim(family, n, m));
  Eigen::Index pos = 0;
  for (int i = 0; i < m; ++i) y[pos++] = s.q[i];
  put_blocks(y, pos, s.spin, n, m);
  return ModelState{family, s.params, m, std::move(y)};
}

ModelState pack_state(const Rank1State& s) {
  return pack_state(rank1_embed(s), Family::rank1);
}

ModelState pack_state(const SpinCMState& s) {
  const int m = s.sites();
  Vector y(state_dim(Family::spin_cm, 1, m));
  Eigen::Index pos = 0;
  for (int i = 0; i < m; ++i) y[pos++] = s.q[i];
  for (int i = 0; i < m; ++i) y[pos++] = s.v[i];
  put_matrix_rowmajor(y, pos, s.spin);
  return ModelState{Family::spin_cm, s.params, m, std::move(y)};
}

ModelState pack_state(const NonRelMultiTopState& s) {
  const int m = s.sites();
  const int n = s.block_n();
  Vector y(state_dim(Family::nonrel_multitop, n, m));
  Eigen::Index pos = 0;
  for (int i = 0; i < m; ++i) y[pos++] = s.q[i];
  for (int i = 0; i < m; ++i) y[pos++] = s.v[i];
  put_blocks(y, pos, s.spin, n, m);
  return ModelState{Family::nonrel_multitop, s.params, m, std::move(y)};
}

ModelState pack_state(const NonRelTopsState& s) {
  const int m = s.sites();
  const int n = s.block_n();
  Vector y(state_dim(Family::nonrel_rank1, n, m));
  Eigen::Index pos = 0;
  for (int i = 0; i < m; ++i) y[pos++] = s.q[i];
  for (int i = 0; i < m; ++i) y[pos++] = s.v[i];
  for (int i = 0; i < m; ++i) put_matrix_rowmajor(y, pos, s.blocks[i]);
  return ModelState{Family::nonrel_rank1, s.params, m, std::move(y)};
}

SpinRSState unpack_rs(const ModelState& s) {
  check_dim(s);
  const int m = s.sites;
  Eigen::Index pos = 0;
  Vector q = s.y.segment(0, m);
  pos = m;
  Matrix spin = get_matrix_rowmajor(s.y, pos, m, m);
  return SpinRSState{s.params, std::move(q), std::move(spin)};
}

TopState unpack_top(const ModelState& s) {
  check_dim(s);
  const int n = s.block_n();
  Eigen::Index pos = 0;
  return TopState{s.params, get_matrix_rowmajor(s.y, pos, n, n)};
}

MultiTopState unpack_multitop(const ModelState& s) {
  check_dim(s);
  const int m = s.sites;
  const int n = s.block_n();
  Vector q = s.y.segment(0, m);
  Eigen::Index pos = m;
  Matrix spin = get_blocks(s.y, pos, n, m);
  return MultiTopState{s.params, std::move(q), std::move(spin)};
}

SpinCMState unpack_cm(const ModelState& s) {
  check_dim(s);
  const int m = s.sites;
  Vector q = s.y.segment(0, m);
  Vector v = s.y.segment(m, m);
  Eigen::Index pos = 2 * m;
  Matrix spin = get_matrix_rowmajor(s.y, pos, m, m);
  return SpinCMState{s.params, std::move(q), std::move(v), std::move(spin)};
}

NonRelMultiTopState unpack_nonrel_mt(const ModelState& s) {
  check_dim(s);
  const int m = s.sites;
  const int n = s.block_n();
  Vector q = s.y.segment(0, m);
  Vector v = s.y.segment(m, m);
  Eigen::Index pos = 2 * m;
  Matrix spin = get_blocks(s.y, pos, n, m);
  return NonRelMultiTopState{s.params, std::move(q), std::move(v), std::move(spin)};
}

NonRelTopsState unpack_nonrel_tops(const ModelState& s) {
  check_dim(s);
  const int m = s.sites;
  const int n = s.block_n();
  Vector q = s.y.segment(0, m);
  Vector v = s.y.segment(m, m);
  Eigen::Index pos = 2 * m;
  std::vector<Matrix> blocks(m);
  for (int i = 0; i < m; ++i) blocks[i] = get_matrix_rowmajor(s.y, pos, n, n);
  return NonRelTopsState{s.params, std::move(q), std::move(v), std::move(blocks)};
}

// --- uniform operations ---------------------------------------------------

Vector model_rhs(const ModelState& s, const Vector* qdot_override) {
  check_dim(s);
  const int m = s.sites;
  Vector dy(s.y.size());
  Eigen::Index pos = 0;
  switch (s.family) {
    case Family::spin_rs: {
      const SpinRSState st = unpack_rs(s);
      const RSDerivs d = rs_eom(st);
      for (int i = 0; i < m; ++i) dy[pos++] = qdot_override ? (*qdot_override)[i] : d.qdot[i];
      put_matrix_rowmajor(dy, pos, d.spin_dot);
      return dy;
    }
    case Family::top:
    case Family::nonrel_top: {
      const TopState st = unpack_top(s);
      put_matrix_rowmajor(dy, pos, top_eom(st, s.family == Family::top));
      return dy;
    }
    case Family::multitop:
    case Family::rank1: {
      const MultiTopState st = unpack_multitop(s);
      const MultiTopDerivs d = nm_eom(st);
      for (int i = 0; i < m; ++i) dy[pos++] = qdot_override ? (*qdot_override)[i] : d.qdot[i];
      put_blocks(dy, pos, d.spin_dot, s.block_n(), m);
      return dy;
    }
    case Family::spin_cm: {
      const SpinCMState st = unpack_cm(s);
      const SpinCMDerivs d = spin_cm_eom(st);
      for (int i = 0; i < m; ++i) dy[pos++] = d.qdot[i];
      for (int i = 0; i < m; ++i) dy[pos++] = d.vdot[i];
      put_matrix_rowmajor(dy, pos, d.spin_dot);
      return dy;
    }
    case Family::nonrel_multitop: {
      const NonRelMultiTopState st = unpack_nonrel_mt(s);
      const NonRelMultiTopDerivs d = nonrel_nm_eom(st);
      for (int i = 0; i < m; ++i) dy[pos++] = d.qdot[i];
      for (int i = 0; i < m; ++i) dy[pos++] = d.vdot[i];
      put_blocks(dy, pos, d.spin_dot, s.block_n(), m);
      return dy;
    }
    case Family::nonrel_rank1: {
      const NonRelTopsState st = unpack_nonrel_tops(s);
      const NonRelTopsDerivs d = nonrel_tops_eom(st);
      for (int i = 0; i < m; ++i) dy[pos++] = d.qdot[i];
      for (int i = 0; i < m; ++i) dy[pos++] = d.vdot[i];
      for (int i = 0; i < m; ++i) put_matrix_rowmajor(dy, pos, d.blocks_dot[i]);
      return dy;
    }
  }
  throw std::logic_error("model_rhs: unknown family");
}

Matrix model_lax(const ModelState& s, Cplx z) {
  switch (s.family) {
    case Family::spin_rs: return rs_lax(unpack_rs(s), z);
    case Family::top: return top_lax(unpack_top(s), z);
    case Family::multitop:
    case Family::rank1: return nm_lax(unpack_multitop(s), z);
    default:
      throw std::invalid_argument("model_lax: family " + family_name(s.family) +
                                  " has no Lax representation here");
  }
}

Matrix model_m(const ModelState& s, Cplx z) {
  switch (s.family) {
    case Family::spin_rs: return rs_m(unpack_rs(s), z);
    case Family::top: return top_m(unpack_top(s), z);
    case Family::multitop:
    case Family::rank1: return nm_m(unpack_multitop(s), z);
    default:
      throw std::invalid_argument("model_m: family " + family_name(s.family) +
                                  " has no Lax representation here");
  }
}

Matrix model_mu_term(const ModelState& s, const Vector& qdot, Cplx z) {
  switch (s.family) {
    case Family::spin_rs: return rs_mu_term(unpack_rs(s), qdot, z);
    case Family::multitop:
    case Family::rank1: return nm_mu_term(unpack_multitop(s), qdot, z);
    case Family::top: {
      const int n = s.block_n();
      return Matrix::Zero(n, n);
    }
    default:
      throw std::invalid_argument("model_mu_term: family " + family_name(s.family) +
                                  " has no off-constraint Lax form");
  }
}

double model_constraint_gap(const ModelState& s) {
  switch (s.family) {
    case Family::spin_rs: {
      const SpinRSState st = unpack_rs(s);
      return rs_mu(st, st.spin.diagonal()).cwiseAbs().maxCoeff();
    }
    case Family::multitop:
    case Family::rank1: {
      const MultiTopState st = unpack_multitop(s);
      Vector qdot(st.sites());
      for (int i = 0; i < st.sites(); ++i) {
        qdot[i] = st.block(i, i).trace() / static_cast<double>(st.block_n());
      }
      return nm_mu(st, qdot).cwiseAbs().maxCoeff();
    }
    case Family::spin_cm: {
      const SpinCMState st = unpack_cm(s);
      return st.spin.diagonal().cwiseAbs().maxCoeff();
    }
    case Family::nonrel_multitop: {
      const NonRelMultiTopState st = unpack_nonrel_mt(s);
      double gap = 0.0;
      for (int i = 0; i < st.sites(); ++i) {
        gap = std::max(gap, std::abs(st.block(i, i).trace()) /
                                static_cast<double>(st.block_n()));
      }
      return gap;
    }
    case Family::nonrel_rank1: {
      const NonRelTopsState st = unpack_nonrel_tops(s);
      double gap = 0.0;
      for (const Matrix& b : st.blocks) {
        gap = std::max(gap, std::abs(b.trace()) / static_cast<double>(st.block_n()));
      }
      return gap;
    }
    case Family::top:
    case Family::nonrel_top: return 0.0;
  }
  throw std::logic_error("model_constraint_gap: unknown family");
}

namespace {

double singular_ratio(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() < 2 || sv[0] <= 0.0) return 0.0;
  return sv[1] / sv[0];
}

}  // namespace

double model_rank_gap(const ModelState& s) {
  switch (s.family) {
    case Family::multitop:
    case Family::rank1: return singular_ratio(unpack_multitop(s).spin);
    case Family::nonrel_rank1: {
      const NonRelTopsState st = unpack_nonrel_tops(s);
      double worst = 0.0;
      for (const Matrix& b : st.blocks) worst = std::max(worst, singular_ratio(b));
      return worst;
    }
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

double lax_residual(const ModelState& s, const Vector* qdot, Cplx z, double h) {
  const Vector dy = model_rhs(s, qdot);
  ModelState plus = s, minus = s;
  plus.y = s.y + h * dy;
  minus.y = s.y - h * dy;
  const Matrix fd = (model_lax(plus, z) - model_lax(minus, z)) / (2.0 * h);
  const Matrix l = model_lax(s, z);
  const Matrix mm = model_m(s, z);
  Matrix resid = fd - (l * mm - mm * l);
  if (qdot != nullptr) resid -= model_mu_term(s, *qdot, z);
  return resid.norm();
}

std::vector<std::vector<Cplx>> spectral_invariants(const ModelState& s,
                                                   const std::vector<Cplx>& z_samples,
                                                   int kmax) {
  std::vector<std::vector<Cplx>> out;
  out.reserve(z_samples.size());
  for (const Cplx z : z_samples) {
    const Matrix l = model_lax(s, z);
    std::vector<Cplx> traces(kmax);
    Matrix power = l;
    for (int k = 1; k <= kmax; ++k) {
      traces[static_cast<size_t>(k) - 1] = power.trace();
      if (k < kmax) power = power * l;
    }
    out.push_back(std::move(traces));
  }
  return out;
}

std::vector<Cplx> default_spectral_samples(const EllipticParams& p) {
  const double im = p.tau().imag();
  std::vector<Cplx> zs = {Cplx{0.17, 0.13 * im}, Cplx{0.31, 0.42 * im},
                          Cplx{-0.23, 0.27 * im}};
  for (Cplx& z : zs) {
    while (lattice_distance(z, p.tau()) < 0.02) z += Cplx{0.0137, 0.0091 * im};
  }
  return zs;
}

namespace {

DiagnosticsRecord make_record(const ModelState& s, const DiagnosticsOptions& opt,
                              const std::vector<Cplx>& zs) {
  DiagnosticsRecord rec;
  rec.constraint_gap = model_constraint_gap(s);
  if (family_has_rank_gap(s.family)) rec.rank_gap = model_rank_gap(s);
  if (opt.invariants && family_has_lax(s.family) && !zs.empty()) {
    const auto table = spectral_invariants(s, zs, opt.kmax);
    rec.invariants.reserve(zs.size() * static_cast<size_t>(opt.kmax));
    for (const auto& row : table) {
      for (const Cplx v : row) rec.invariants.push_back(v);
    }
  }
  if (opt.lax_residuals && family_has_lax(s.family) && !zs.empty()) {
    rec.lax_residual = lax_residual(s, nullptr, zs.front(), opt.fd_h);
  }
  return rec;
}

}  // namespace

Trajectory integrate(const ModelState& initial, const IntegratorConfig& cfg,
                     const DiagnosticsOptions& diag) {
  check_dim(initial);
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (cfg.steps < 1) throw std::invalid_argument("integrate: steps must be >= 1");
  if (cfg.record_every < 1) throw std::invalid_argument("integrate: record_every must be >= 1");
  if (model_constraint_gap(initial) > 1e-12) {
    throw ConstraintViolated("integrate: initial state violates the family constraint");
  }

  Trajectory traj{initial, cfg, diag, {}, {}, {}, {}, true, 0.0, {}};
  traj.z_samples_used = diag.z_samples.empty() && family_has_lax(initial.family)
                            ? default_spectral_samples(initial.params)
                            : diag.z_samples;

  ModelState cur = initial;
  double t = 0.0;
  const auto record = [&](double time) {
    traj.times.push_back(time);
    traj.states.push_back(cur.y);
    traj.diagnostics.push_back(make_record(cur, diag, traj.z_samples_used));
  };

  try {
    record(0.0);
    for (long long step = 1; step <= cfg.steps; ++step) {
      const Vector k1 = model_rhs(cur);
      ModelState tmp = cur;
      tmp.y = cur.y + (cfg.dt / 2.0) * k1;
      const Vector k2 = model_rhs(tmp);
      tmp.y = cur.y + (cfg.dt / 2.0) * k2;
      const Vector k3 = model_rhs(tmp);
      tmp.y = cur.y + cfg.dt * k3;
      const Vector k4 = model_rhs(tmp);
      cur.y += (cfg.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = static_cast<double>(step) * cfg.dt;
      if (!cur.y.allFinite()) {
        throw NonFinite("state became non-finite");
      }
      if (step % cfg.record_every == 0 || step == cfg.steps) record(t);
    }
  } catch (const Error& e) {
    traj.completed = false;
    traj.abort_time = t;
    traj.abort_reason = e.what();
  }
  return traj;
}

}  // namespace elltop
