#include "elltop/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "elltop/random_states.hpp"

namespace elltop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config: field '" + field + "': " + why);
}

Cplx get_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(field, "expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Vector get_complex_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of [re, im] pairs");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = get_complex(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

json complex_json(Cplx z) { return json::array({z.real(), z.imag()}); }

json complex_vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  RunConfig c;
  if (!doc.contains("family") || !doc["family"].is_string()) fail("family", "required string");
  const auto fam = family_from_name(doc["family"].get<std::string>());
  if (!fam) fail("family", "unknown family '" + doc["family"].get<std::string>() + "'");
  c.family = *fam;

  if (doc.contains("N")) {
    if (!doc["N"].is_number_integer()) fail("N", "expected an integer");
    c.n = doc["N"].get<int>();
  }
  if (doc.contains("M")) {
    if (!doc["M"].is_number_integer()) fail("M", "expected an integer");
    c.m = doc["M"].get<int>();
  }
  if (c.family == Family::spin_rs || c.family == Family::spin_cm) {
    if (doc.contains("N") && c.n != 1) fail("N", "must be 1 for the " + family_name(c.family) + " family");
    c.n = 1;
  }
  if (c.family == Family::top || c.family == Family::nonrel_top) {
    if (doc.contains("M") && c.m != 1) fail("M", "must be 1 for the " + family_name(c.family) + " family");
    c.m = 1;
  }
  if (c.n < 1) fail("N", "must be >= 1");
  if (c.m < 1) fail("M", "must be >= 1");

  if (doc.contains("tau")) c.tau = get_complex(doc["tau"], "tau");
  if (doc.contains("eta")) c.eta = get_complex(doc["eta"], "eta");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      fail("seed", "expected an unsigned integer");
    }
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("spin_scale")) c.spin_scale = doc["spin_scale"].get<double>();
  if (doc.contains("margin")) c.margin = doc["margin"].get<double>();

  if (doc.contains("initial")) {
    const json& ini = doc["initial"];
    if (!ini.is_object()) fail("initial", "expected an object");
    if (ini.contains("xi") || ini.contains("rho")) {
      if (c.family != Family::rank1) fail("initial.xi", "xi/rho initial data is for the rank1 family");
      if (!ini.contains("xi") || !ini.contains("rho")) fail("initial", "need both xi and rho");
      if (!ini.contains("q")) fail("initial.q", "required for the rank1 family");
      c.q0 = get_complex_vector(ini["q"], "initial.q");
      const json& xi = ini["xi"];
      const json& rho = ini["rho"];
      if (!xi.is_array() || !rho.is_array()) fail("initial.xi", "expected arrays of vectors");
      for (size_t i = 0; i < xi.size(); ++i) {
        c.xi0.push_back(get_complex_vector(xi[i], "initial.xi[" + std::to_string(i) + "]"));
      }
      for (size_t i = 0; i < rho.size(); ++i) {
        c.rho0.push_back(
            get_complex_vector(rho[i], "initial.rho[" + std::to_string(i) + "]").transpose());
      }
      c.has_xi_rho = true;
      c.has_initial = true;
    } else {
      if (family_has_positions(c.family)) {
        if (!ini.contains("q")) fail("initial.q", "required for this family");
        c.q0 = get_complex_vector(ini["q"], "initial.q");
      }
      if (family_has_velocities(c.family)) {
        if (!ini.contains("v")) fail("initial.v", "required for this family");
        c.v0 = get_complex_vector(ini["v"], "initial.v");
      }
      if (!ini.contains("spin")) fail("initial.spin", "required");
      c.spin_flat = get_complex_vector(ini["spin"], "initial.spin");
      c.has_initial = true;
    }
  }

  if (doc.contains("integrator")) {
    const json& integ = doc["integrator"];
    if (!integ.is_object()) fail("integrator", "expected an object");
    if (integ.contains("dt")) c.integrator.dt = integ["dt"].get<double>();
    if (integ.contains("steps")) c.integrator.steps = integ["steps"].get<long long>();
    if (integ.contains("record_every")) {
      c.integrator.record_every = integ["record_every"].get<long long>();
    }
    if (!(c.integrator.dt > 0.0)) fail("integrator.dt", "must be positive");
    if (c.integrator.steps < 1) fail("integrator.steps", "must be >= 1");
    if (c.integrator.record_every < 1) fail("integrator.record_every", "must be >= 1");
  }

  if (doc.contains("spectral")) {
    const json& sp = doc["spectral"];
    if (!sp.is_object()) fail("spectral", "expected an object");
    if (sp.contains("z")) {
      const Vector zs = get_complex_vector(sp["z"], "spectral.z");
      c.diagnostics.z_samples.assign(zs.begin(), zs.end());
    }
    if (sp.contains("kmax")) c.diagnostics.kmax = sp["kmax"].get<int>();
    if (c.diagnostics.kmax < 1) fail("spectral.kmax", "must be >= 1");
  }
  if (doc.contains("lax_residuals")) c.diagnostics.lax_residuals = doc["lax_residuals"].get<bool>();

  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) fail("output", "expected an object");
    if (o.contains("dir")) c.out_dir = o["dir"].get<std::string>();
    if (o.contains("csv")) c.csv_name = o["csv"].get<std::string>();
    if (o.contains("json")) c.json_name = o["json"].get<std::string>();
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string run_config_json(const RunConfig& c) {
  json doc;
  doc["family"] = family_name(c.family);
  doc["N"] = c.n;
  doc["M"] = c.m;
  doc["tau"] = complex_json(c.tau);
  doc["eta"] = complex_json(c.eta);
  doc["seed"] = c.seed;
  doc["spin_scale"] = c.spin_scale;
  doc["margin"] = c.margin;
  if (c.has_initial) {
    json ini;
    if (c.has_xi_rho) {
      ini["q"] = complex_vector_json(c.q0);
      json xi = json::array(), rho = json::array();
      for (const auto& v : c.xi0) xi.push_back(complex_vector_json(v));
      for (const auto& v : c.rho0) rho.push_back(complex_vector_json(v.transpose()));
      ini["xi"] = xi;
      ini["rho"] = rho;
    } else {
      if (family_has_positions(c.family)) ini["q"] = complex_vector_json(c.q0);
      if (family_has_velocities(c.family)) ini["v"] = complex_vector_json(c.v0);
      ini["spin"] = complex_vector_json(c.spin_flat);
    }
    doc["initial"] = ini;
  }
  doc["integrator"] = {{"dt", c.integrator.dt},
                       {"steps", c.integrator.steps},
                       {"record_every", c.integrator.record_every}};
  json sp;
  if (!c.diagnostics.z_samples.empty()) {
    json zs = json::array();
    for (const Cplx z : c.diagnostics.z_samples) zs.push_back(complex_json(z));
    sp["z"] = zs;
  }
  sp["kmax"] = c.diagnostics.kmax;
  doc["spectral"] = sp;
  doc["lax_residuals"] = c.diagnostics.lax_residuals;
  doc["output"] = {{"dir", c.out_dir}, {"csv", c.csv_name}, {"json", c.json_name}};
  return doc.dump(2);
}

ModelState initial_state(const RunConfig& c) {
  const EllipticParams params(c.tau, c.n, c.eta);

  if (c.has_xi_rho) {
    const int m = c.m;
    if (static_cast<int>(c.xi0.size()) != m || static_cast<int>(c.rho0.size()) != m) {
      throw ConfigError("config: initial.xi/rho must each hold M vectors");
    }
    if (c.q0.size() != m) throw ConfigError("config: initial.q must hold M entries");
    for (const auto& v : c.xi0) {
      if (v.size() != c.n) throw ConfigError("config: initial.xi vectors must have length N");
    }
    for (const auto& v : c.rho0) {
      if (v.size() != c.n) throw ConfigError("config: initial.rho vectors must have length N");
    }
    Rank1State s{params, c.q0, c.xi0, c.rho0};
    return pack_state(s);
  }

  if (c.has_initial) {
    const int m = c.m;
    Eigen::Index expect_spin = 0;
    switch (c.family) {
      case Family::spin_rs:
      case Family::spin_cm: expect_spin = static_cast<Eigen::Index>(m) * m; break;
      case Family::top:
      case Family::nonrel_top: expect_spin = static_cast<Eigen::Index>(c.n) * c.n; break;
      case Family::multitop:
      case Family::rank1:
      case Family::nonrel_multitop:
        expect_spin = static_cast<Eigen::Index>(c.n) * c.n * m * m;
        break;
      case Family::nonrel_rank1: expect_spin = static_cast<Eigen::Index>(c.n) * c.n * m; break;
    }
    if (c.spin_flat.size() != expect_spin) {
      throw ConfigError("config: initial.spin has " + std::to_string(c.spin_flat.size()) +
                        " entries, expected " + std::to_string(expect_spin));
    }
    if (family_has_positions(c.family) && c.q0.size() != m) {
      throw ConfigError("config: initial.q must hold M entries");
    }
    if (family_has_velocities(c.family) && c.v0.size() != m) {
      throw ConfigError("config: initial.v must hold M entries");
    }
    Eigen::Index dim = c.spin_flat.size();
    if (family_has_positions(c.family)) dim += m;
    if (family_has_velocities(c.family)) dim += m;
    Vector y(dim);
    Eigen::Index pos = 0;
    if (family_has_positions(c.family)) {
      for (int i = 0; i < m; ++i) y[pos++] = c.q0[i];
    }
    if (family_has_velocities(c.family)) {
      for (int i = 0; i < m; ++i) y[pos++] = c.v0[i];
    }
    y.segment(pos, c.spin_flat.size()) = c.spin_flat;
    ModelState s{c.family, params, c.m, std::move(y)};
    // Surface collisions in explicit data immediately.
    model_rhs(s);
    return s;
  }

  Rng rng(c.seed);
  RandomStateOptions opt;
  opt.spin_scale = c.spin_scale;
  opt.margin = c.margin;
  switch (c.family) {
    case Family::spin_rs: return pack_state(random_rs_state(rng, params, c.m, opt));
    case Family::top: return pack_state(random_top_state(rng, params, opt), true);
    case Family::multitop:
      return pack_state(random_multitop_state(rng, params, c.m, opt), Family::multitop);
    case Family::rank1: return pack_state(random_rank1_state(rng, params, c.m, opt));
    case Family::spin_cm: return pack_state(random_cm_state(rng, params, c.m, opt));
    case Family::nonrel_top: return pack_state(random_top_state(rng, params, opt), false);
    case Family::nonrel_multitop:
      return pack_state(random_nonrel_mt_state(rng, params, c.m, opt));
    case Family::nonrel_rank1:
      return pack_state(random_nonrel_tops_state(rng, params, c.m, opt));
  }
  throw std::logic_error("initial_state: unknown family");
}

RunConfig resolved_config(const RunConfig& c, const ModelState& s0) {
  RunConfig r = c;
  r.has_initial = true;
  r.has_xi_rho = false;
  r.xi0.clear();
  r.rho0.clear();
  const int m = c.m;
  Eigen::Index pos = 0;
  if (family_has_positions(c.family)) {
    r.q0 = s0.y.segment(0, m);
    pos += m;
  }
  if (family_has_velocities(c.family)) {
    r.v0 = s0.y.segment(pos, m);
    pos += m;
  }
  r.spin_flat = s0.y.segment(pos, s0.y.size() - pos);
  return r;
}

}  // namespace elltop
