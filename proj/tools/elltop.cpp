// Command-line front end: verification suites, trajectory simulation from
// config files, and special-function tabulation.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 runtime singularity (pole or collision mid-run).

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elltop/dynamics.hpp"
#include "elltop/run_config.hpp"
#include "elltop/trajectory_io.hpp"
#include "elltop/verify.hpp"

namespace {

using namespace elltop;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSingular = 3;

double parse_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError("cannot parse '" + std::string(s) + "' as a number in " + what);
  }
  return v;
}

Cplx parse_complex(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw ConfigError("expected 're,im' for " + what + ", got '" + s + "'");
  }
  return {parse_double(std::string_view(s).substr(0, comma), what),
          parse_double(std::string_view(s).substr(comma + 1), what)};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
}

struct GlobalOpts {
  std::string tau = "0,1";
  std::string eta = "0.21,0.07";
  std::uint64_t seed = 42;
  std::string out_dir = ".";
};

int run_verify(const GlobalOpts& g, const std::vector<std::string>& suites, bool all,
               int n_cases, int n_override) {
  const Cplx tau = parse_complex(g.tau, "--tau");
  const Cplx eta = parse_complex(g.eta, "--eta");
  const EllipticParams params(tau, n_override > 0 ? n_override : 3, eta);

  std::vector<std::string> wanted = suites;
  if (all) wanted = {"identity", "fourier", "reduction", "limit"};
  if (wanted.empty()) {
    std::cerr << "verify: no suites requested (use --all or --suite)\n";
    return kExitConfig;
  }

  std::vector<VerifyReport> reports;
  for (const std::string& name : wanted) {
    if (name == "identity") {
      reports.push_back(identity_suite(params, g.seed, n_cases));
    } else if (name == "fourier") {
      std::vector<int> ns = {2, 3, 4, 5};
      if (n_override > 0) ns = {n_override};
      reports.push_back(fourier_suite(params, ns, g.seed));
    } else if (name == "reduction") {
      reports.push_back(reduction_suite(params, g.seed));
    } else if (name == "limit") {
      reports.push_back(limit_suite(params, g.seed));
    } else {
      std::cerr << "verify: unknown suite '" << name << "'\n";
      return kExitConfig;
    }
  }

  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << report_table(r);
    all_pass = all_pass && r.passed();
  }
  std::filesystem::create_directories(g.out_dir);
  write_file(std::filesystem::path(g.out_dir) / "verify_report.json", reports_json(reports));
  std::cout << (all_pass ? "verify: PASS" : "verify: FAIL") << "\n";
  return all_pass ? kExitOk : kExitVerifyFail;
}

int run_simulate(const GlobalOpts& g, bool seed_given, const std::string& config_path,
                 const std::string& out_override) {
  RunConfig cfg = load_run_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (seed_given) cfg.seed = g.seed;

  // Invalid initial data (coincident positions, pole-adjacent arguments) is a
  // config error, not a runtime singularity.
  const ModelState s0 = [&] {
    try {
      return initial_state(cfg);
    } catch (const Collision& e) {
      throw ConfigError(std::string("invalid initial data: ") + e.what());
    } catch (const PoleProximity& e) {
      throw ConfigError(std::string("invalid initial data: ") + e.what());
    }
  }();
  const RunConfig resolved = resolved_config(cfg, s0);

  std::filesystem::create_directories(cfg.out_dir);
  const auto dir = std::filesystem::path(cfg.out_dir);
  write_file(dir / "config_echo.json", run_config_json(resolved));

  const Trajectory traj = integrate(s0, cfg.integrator, cfg.diagnostics);
  write_file(dir / cfg.csv_name, trajectory_csv(traj));
  write_file(dir / cfg.json_name, trajectory_json(traj));

  std::cout << "simulate: family " << family_name(cfg.family) << ", N=" << cfg.n
            << ", M=" << cfg.m << ", " << traj.times.size() << " records -> "
            << (dir / cfg.csv_name).string() << "\n";
  if (!traj.completed) {
    std::cerr << "simulate: aborted at t = " << traj.abort_time << ": " << traj.abort_reason
              << " (last good state flushed)\n";
    return kExitSingular;
  }
  return kExitOk;
}

struct GridSpec {
  double re_min = -0.45, re_max = 0.45;
  int re_steps = 10;
  double im_min = -0.45, im_max = 0.45;
  int im_steps = 10;
};

int run_tabulate(const GlobalOpts& g, const std::string& function, const GridSpec& grid,
                 const std::string& q_str, const std::string& alpha_str, int order,
                 const std::string& out_name) {
  static const std::vector<std::string> known = {"theta", "e1", "e2", "phi", "f", "phi_mode"};
  if (std::find(known.begin(), known.end(), function) == known.end()) {
    std::cerr << "tabulate: unknown function '" << function << "'\n";
    return kExitConfig;
  }
  if (grid.re_steps < 1 || grid.im_steps < 1) {
    std::cerr << "tabulate: grid steps must be >= 1\n";
    return kExitConfig;
  }
  const Cplx tau = parse_complex(g.tau, "--tau");
  const Cplx eta = parse_complex(g.eta, "--eta");

  ModeIndex alpha{0, 0};
  int n = 1;
  if (function == "phi_mode") {
    const auto comma = alpha_str.find(',');
    if (comma == std::string::npos) {
      std::cerr << "tabulate: phi_mode needs --alpha a1,a2\n";
      return kExitConfig;
    }
    alpha.a1 = static_cast<int>(parse_double(std::string_view(alpha_str).substr(0, comma), "--alpha"));
    alpha.a2 = static_cast<int>(parse_double(std::string_view(alpha_str).substr(comma + 1), "--alpha"));
    n = std::max({alpha.a1 + 1, alpha.a2 + 1, 2});
  }
  const EllipticParams params(tau, n, eta);
  const Cplx q = parse_complex(q_str, "--q");

  std::ostringstream csv;
  csv << "z_re,z_im,status,value_re,value_im\n";
  const auto emit = [&](Cplx z) {
    char buf[128];
    try {
      Cplx v;
      if (function == "theta") {
        v = theta(z, tau, order);
      } else if (function == "e1") {
        v = eisenstein_e1(z, params);
      } else if (function == "e2") {
        v = eisenstein_e2(z, params);
      } else if (function == "phi") {
        v = kronecker_phi(z, q, params);
      } else if (function == "f") {
        v = kronecker_f(z, q, params);
      } else {
        v = phi_mode(z, mode_omega(alpha, params) + q, alpha, params);
      }
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,ok,%.17g,%.17g\n", z.real(), z.imag(),
                    v.real(), v.imag());
    } catch (const PoleProximity&) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,pole,,\n", z.real(), z.imag());
    }
    csv << buf;
  };

  for (int i = 0; i < grid.re_steps; ++i) {
    const double re = grid.re_steps == 1
                          ? grid.re_min
                          : grid.re_min + (grid.re_max - grid.re_min) * i / (grid.re_steps - 1);
    for (int j = 0; j < grid.im_steps; ++j) {
      const double im = grid.im_steps == 1
                            ? grid.im_min
                            : grid.im_min + (grid.im_max - grid.im_min) * j / (grid.im_steps - 1);
      emit(Cplx{re, im});
    }
  }

  std::filesystem::create_directories(g.out_dir);
  const auto path = std::filesystem::path(g.out_dir) / out_name;
  write_file(path, csv.str());
  std::cout << "tabulate: " << function << " on a " << grid.re_steps << "x" << grid.im_steps
            << " grid -> " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lax pairs, equations of motion and integrability checks for the "
               "elliptic interacting-tops hierarchy"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--tau", g.tau, "modulus tau as re,im")->capture_default_str();
  app.add_option("--eta", g.eta, "deformation parameter eta as re,im")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run verification suites");
  bool all = false;
  std::vector<std::string> suites;
  int n_cases = 200;
  int n_override = 0;
  verify->add_flag("--all", all, "run every suite");
  verify->add_option("--suite", suites, "suites to run (identity fourier reduction limit)");
  verify->add_option("--cases", n_cases, "random cases per identity check")->capture_default_str();
  verify->add_option("--N", n_override, "restrict mode-grid suites to a single N");

  auto* simulate = app.add_subcommand("simulate", "integrate a model from a JSON config");
  std::string config_path;
  std::string out_override;
  simulate->add_option("config", config_path, "path to the run config")->required();
  simulate->add_option("--out", out_override, "override the output directory");

  auto* tabulate = app.add_subcommand("tabulate", "dump special-function values as CSV");
  std::string function;
  GridSpec grid;
  std::string q_str = "0.17,0.23";
  std::string alpha_str = "0,1";
  std::string out_name = "table.csv";
  int order = 0;
  tabulate->add_option("--function", function, "theta | e1 | e2 | phi | f | phi_mode")->required();
  tabulate->add_option("--re-min", grid.re_min)->capture_default_str();
  tabulate->add_option("--re-max", grid.re_max)->capture_default_str();
  tabulate->add_option("--re-steps", grid.re_steps)->capture_default_str();
  tabulate->add_option("--im-min", grid.im_min)->capture_default_str();
  tabulate->add_option("--im-max", grid.im_max)->capture_default_str();
  tabulate->add_option("--im-steps", grid.im_steps)->capture_default_str();
  tabulate->add_option("--q", q_str, "second argument for phi/f/phi_mode as re,im")
      ->capture_default_str();
  tabulate->add_option("--alpha", alpha_str, "mode index a1,a2 for phi_mode")->capture_default_str();
  tabulate->add_option("--order", order, "derivative order for theta")->capture_default_str();
  tabulate->add_option("--out-file", out_name, "output CSV name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify(g, suites, all, n_cases, n_override);
    if (simulate->parsed()) {
      return run_simulate(g, app.count("--seed") > 0, config_path, out_override);
    }
    if (tabulate->parsed()) {
      return run_tabulate(g, function, grid, q_str, alpha_str, order, out_name);
    }
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BadModulus& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConstraintViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Collision& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const PoleProximity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
