#include "elltop/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace elltop {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void complex_columns(std::vector<std::string>& cols, const std::string& base) {
  cols.push_back(base + "_re");
  cols.push_back(base + "_im");
}

std::vector<std::string> state_columns(const Trajectory& t) {
  const Family f = t.initial.family;
  const int m = t.initial.sites;
  const int n = t.initial.block_n();
  std::vector<std::string> cols;
  if (family_has_positions(f)) {
    for (int i = 1; i <= m; ++i) complex_columns(cols, "q" + std::to_string(i));
  }
  if (family_has_velocities(f)) {
    for (int i = 1; i <= m; ++i) complex_columns(cols, "v" + std::to_string(i));
  }
  switch (f) {
    case Family::spin_rs:
    case Family::spin_cm:
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
          complex_columns(cols, "S_" + std::to_string(i) + "_" + std::to_string(j));
        }
      }
      break;
    case Family::top:
    case Family::nonrel_top:
      for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
          complex_columns(cols, "S_" + std::to_string(a) + "_" + std::to_string(b));
        }
      }
      break;
    case Family::multitop:
    case Family::rank1:
    case Family::nonrel_multitop:
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
          for (int a = 1; a <= n; ++a) {
            for (int b = 1; b <= n; ++b) {
              complex_columns(cols, "S_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                        std::to_string(a) + "_" + std::to_string(b));
            }
          }
        }
      }
      break;
    case Family::nonrel_rank1:
      for (int i = 1; i <= m; ++i) {
        for (int a = 1; a <= n; ++a) {
          for (int b = 1; b <= n; ++b) {
            complex_columns(cols, "S_" + std::to_string(i) + "_" + std::to_string(i) + "_" +
                                      std::to_string(a) + "_" + std::to_string(b));
          }
        }
      }
      break;
  }
  return cols;
}

std::vector<std::string> diagnostic_columns(const Trajectory& t) {
  const Family f = t.initial.family;
  std::vector<std::string> cols;
  cols.push_back("constraint_gap");
  if (family_has_rank_gap(f)) cols.push_back("rank_gap");
  if (t.diag_options.lax_residuals && family_has_lax(f)) cols.push_back("lax_residual");
  if (t.diag_options.invariants && family_has_lax(f)) {
    for (size_t zi = 1; zi <= t.z_samples_used.size(); ++zi) {
      for (int k = 1; k <= t.diag_options.kmax; ++k) {
        cols.push_back("inv_z" + std::to_string(zi) + "_k" + std::to_string(k) + "_drift");
      }
    }
  }
  return cols;
}

std::vector<double> row_values(const Trajectory& t, size_t r) {
  const Family f = t.initial.family;
  std::vector<double> vals;
  vals.push_back(t.times[r]);
  for (Eigen::Index i = 0; i < t.states[r].size(); ++i) {
    vals.push_back(t.states[r][i].real());
    vals.push_back(t.states[r][i].imag());
  }
  const DiagnosticsRecord& d = t.diagnostics[r];
  vals.push_back(d.constraint_gap);
  if (family_has_rank_gap(f)) vals.push_back(d.rank_gap);
  if (t.diag_options.lax_residuals && family_has_lax(f)) vals.push_back(d.lax_residual);
  if (t.diag_options.invariants && family_has_lax(f)) {
    const auto& base = t.diagnostics.front().invariants;
    for (size_t i = 0; i < base.size(); ++i) {
      const double scale = std::max(1.0, std::abs(base[i]));
      vals.push_back(std::abs(d.invariants[i] - base[i]) / scale);
    }
  }
  return vals;
}

}  // namespace

std::vector<std::string> trajectory_columns(const Trajectory& t) {
  std::vector<std::string> cols;
  cols.push_back("time");
  for (auto& c : state_columns(t)) cols.push_back(c);
  for (auto& c : diagnostic_columns(t)) cols.push_back(c);
  return cols;
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream out;
  const auto cols = trajectory_columns(t);
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ',';
    out << cols[i];
  }
  out << '\n';
  for (size_t r = 0; r < t.times.size(); ++r) {
    const auto vals = row_values(t, r);
    for (size_t i = 0; i < vals.size(); ++i) {
      if (i) out << ',';
      out << fmt(vals[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string trajectory_json(const Trajectory& t) {
  nlohmann::json doc;
  doc["family"] = family_name(t.initial.family);
  doc["N"] = t.initial.block_n();
  doc["M"] = t.initial.sites;
  doc["tau"] = {t.initial.params.tau().real(), t.initial.params.tau().imag()};
  doc["eta"] = {t.initial.params.eta().real(), t.initial.params.eta().imag()};
  doc["integrator"] = {{"dt", t.config.dt},
                       {"steps", t.config.steps},
                       {"record_every", t.config.record_every}};
  doc["kmax"] = t.diag_options.kmax;
  nlohmann::json zs = nlohmann::json::array();
  for (const Cplx z : t.z_samples_used) zs.push_back({z.real(), z.imag()});
  doc["z_samples"] = zs;
  doc["columns"] = trajectory_columns(t);
  nlohmann::json rows = nlohmann::json::array();
  for (size_t r = 0; r < t.times.size(); ++r) rows.push_back(row_values(t, r));
  doc["rows"] = rows;
  doc["completed"] = t.completed;
  if (!t.completed) {
    doc["abort_time"] = t.abort_time;
    doc["abort_reason"] = t.abort_reason;
  }
  return doc.dump(2);
}

}  // namespace elltop
