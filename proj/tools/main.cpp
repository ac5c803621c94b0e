#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqed/dataset_io.hpp"
#include "gqed/oracles.hpp"
#include "gqed/sweeps.hpp"
#include "gqed/three_level.hpp"
#include "gqed/two_level.hpp"

namespace {

using namespace gqed;

// Radians, with an optional "pi" suffix multiplier ("0.85pi", "pi", "-0.5pi").
double parse_angle(const std::string& text) {
  std::string body = text;
  double scale = 1.0;
  if (body.size() >= 2 && body.substr(body.size() - 2) == "pi") {
    scale = std::numbers::pi;
    body = body.substr(0, body.size() - 2);
    if (body.empty() || body == "+") body = "1";
    if (body == "-") body = "-1";
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse angle '" + text + "'");
  }
  if (used != body.size()) throw std::invalid_argument("cannot parse angle '" + text + "'");
  return scale * value;
}

struct GlobalOpts {
  std::string model = "two_level";
  double omega0 = 100.0;
  double gamma = 1.0;
  std::string theta = "0";
  double omega_rabi = 0.5;
  double delta = 0.0;
  std::string output;
  std::string format = "csv";

  bool three_level() const { return model == "three_level"; }

  TwoLevelParams two_level_params() const {
    TwoLevelParams p{omega0, gamma, parse_angle(theta)};
    p.validate();
    return p;
  }
  ThreeLevelParams three_level_params() const {
    ThreeLevelParams p{omega0, gamma, parse_angle(theta), omega_rabi, delta};
    p.validate();
    return p;
  }
  io::Format io_format() const {
    if (format == "csv") return io::Format::Csv;
    if (format == "json") return io::Format::Json;
    throw std::invalid_argument("unknown format '" + format + "' (expected csv or json)");
  }
  void check_model() const {
    if (model != "two_level" && model != "three_level")
      throw std::invalid_argument("unknown model '" + model +
                                  "' (expected two_level or three_level)");
  }
  void require_resonance(const char* what) const {
    if (three_level() && delta != 0.0)
      throw std::invalid_argument(std::string(what) + " requires --delta 0");
  }
};

struct KGridOpts {
  double k_min = std::numeric_limits<double>::quiet_NaN();
  double k_max = std::numeric_limits<double>::quiet_NaN();
  int k_steps = 0;

  // Unset fields fall back to the default window omega0 +- span * gamma.
  sweeps::GridSpec resolve(const GlobalOpts& g, double span, int default_steps) const {
    sweeps::GridSpec grid;
    grid.variable = sweeps::GridVariable::K;
    grid.start = std::isnan(k_min) ? g.omega0 - span * g.gamma : k_min;
    grid.stop = std::isnan(k_max) ? g.omega0 + span * g.gamma : k_max;
    grid.steps = k_steps > 0 ? k_steps : default_steps;
    grid.validate();
    return grid;
  }
};

void add_k_grid(CLI::App* cmd, KGridOpts& opts) {
  cmd->add_option("--k-min", opts.k_min, "Grid lower bound");
  cmd->add_option("--k-max", opts.k_max, "Grid upper bound");
  cmd->add_option("--k-steps", opts.k_steps, "Grid point count");
}

int run_amplitudes(const GlobalOpts& g, const KGridOpts& grid_opts, double k_single,
                   bool k_given) {
  sweeps::SweepDataset d;
  d.columns = {"k",     "re_t1", "im_t1", "re_t2", "im_t2",
               "re_r1", "im_r1", "re_r2", "im_r2", "flux_check"};

  std::vector<double> ks;
  if (k_given) {
    ks.push_back(k_single);
    d.header.push_back(sweeps::HeaderEntry::str("model", g.model));
    d.header.push_back(sweeps::HeaderEntry::num("omega0", g.omega0));
    d.header.push_back(sweeps::HeaderEntry::num("gamma", g.gamma));
    d.header.push_back(sweeps::HeaderEntry::num("theta", parse_angle(g.theta)));
    if (g.three_level()) {
      d.header.push_back(sweeps::HeaderEntry::num("omega_rabi", g.omega_rabi));
      d.header.push_back(sweeps::HeaderEntry::num("delta", g.delta));
    }
    d.header.push_back(sweeps::HeaderEntry::num("k", k_single));
  } else {
    const auto grid = grid_opts.resolve(g, 4.0, 2001);
    d.header.push_back(sweeps::HeaderEntry::str("model", g.model));
    d.header.push_back(sweeps::HeaderEntry::num("omega0", g.omega0));
    d.header.push_back(sweeps::HeaderEntry::num("gamma", g.gamma));
    d.header.push_back(sweeps::HeaderEntry::num("theta", parse_angle(g.theta)));
    if (g.three_level()) {
      d.header.push_back(sweeps::HeaderEntry::num("omega_rabi", g.omega_rabi));
      d.header.push_back(sweeps::HeaderEntry::num("delta", g.delta));
    }
    d.header.push_back(sweeps::HeaderEntry::num("k_min", grid.start));
    d.header.push_back(sweeps::HeaderEntry::num("k_max", grid.stop));
    d.header.push_back(sweeps::HeaderEntry::num("k_steps", grid.steps));
    ks.reserve(grid.steps);
    for (int i = 0; i < grid.steps; ++i) ks.push_back(grid.at(i));
  }

  for (double k : ks) {
    Complex t1, t2, r1, r2;
    if (g.three_level()) {
      const auto a = threelevel::amplitudes(g.three_level_params(), k);
      t1 = a.t1;
      t2 = a.t2;
      r1 = a.r1;
      r2 = a.r2;
    } else {
      const auto a = twolevel::amplitudes(g.two_level_params(), k);
      t1 = a.t1;
      t2 = a.t2;
      r1 = a.r1;
      r2 = a.r2;
    }
    d.rows.push_back({k, t1.real(), t1.imag(), t2.real(), t2.imag(), r1.real(), r1.imag(),
                      r2.real(), r2.imag(), std::norm(t2) + std::norm(r1)});
  }
  io::write_dataset(d, g.output, g.io_format());
  return 0;
}

int run_fk(const GlobalOpts& g, const KGridOpts& grid_opts) {
  g.require_resonance("fk");
  const auto grid = grid_opts.resolve(g, 4.0, 2001);
  const auto d = g.three_level() ? sweeps::sweep_flux(g.three_level_params(), grid)
                                 : sweeps::sweep_flux(g.two_level_params(), grid);
  io::write_dataset(d, g.output, g.io_format());
  return 0;
}

int run_g2(const GlobalOpts& g, double k, bool k_given, const std::string& direction,
           double x_max, int x_steps) {
  g.require_resonance("g2");
  if (direction != "R" && direction != "L")
    throw std::invalid_argument("direction must be R or L");
  const Direction dir = direction == "R" ? Direction::Transmitted : Direction::Reflected;
  const double k_value = k_given ? k : g.omega0;
  sweeps::GridSpec grid{sweeps::GridVariable::X, 0.0,
                        x_max > 0.0 ? x_max : 60.0 / g.gamma, x_steps};
  const auto d = g.three_level() ? sweeps::sweep_g2(g.three_level_params(), k_value, dir, grid)
                                 : sweeps::sweep_g2(g.two_level_params(), k_value, dir, grid);
  io::write_dataset(d, g.output, g.io_format());
  return 0;
}

int run_chi(const GlobalOpts& g, const KGridOpts& grid_opts, const std::string& theta_min,
            const std::string& theta_max, int theta_steps) {
  g.require_resonance("chi");
  const auto k_grid = grid_opts.resolve(g, 3.0, 401);
  sweeps::GridSpec theta_grid{sweeps::GridVariable::Theta, parse_angle(theta_min),
                              parse_angle(theta_max), theta_steps};
  const auto d = g.three_level()
                     ? sweeps::sweep_detection_excess(g.three_level_params(), k_grid, theta_grid)
                     : sweeps::sweep_detection_excess(g.two_level_params(), k_grid, theta_grid);
  io::write_dataset(d, g.output, g.io_format());
  return 0;
}

int run_poles(const GlobalOpts& g, std::vector<std::string> thetas) {
  if (thetas.empty()) thetas.push_back(g.theta);
  sweeps::SweepDataset d;
  if (g.three_level()) {
    std::vector<ThreeLevelParams> list;
    for (const auto& t : thetas) {
      ThreeLevelParams p = g.three_level_params();
      p.theta = parse_angle(t);
      list.push_back(p);
    }
    d = sweeps::pole_table(list);
  } else {
    std::vector<TwoLevelParams> list;
    for (const auto& t : thetas) {
      TwoLevelParams p = g.two_level_params();
      p.theta = parse_angle(t);
      list.push_back(p);
    }
    d = sweeps::pole_table(list);
  }
  io::write_dataset(d, g.output, g.io_format());
  return 0;
}

int run_verify(const std::string& scope, bool corrupt) {
  oracles::VerifyOptions options;
  if (scope == "two_level")
    options.scope = oracles::VerifyScope::TwoLevel;
  else if (scope == "three_level")
    options.scope = oracles::VerifyScope::ThreeLevel;
  else if (scope == "all")
    options.scope = oracles::VerifyScope::All;
  else
    throw std::invalid_argument("scope must be two_level, three_level or all");
  options.corrupt_closed_forms = corrupt;

  const auto reports = oracles::run_verification_suite(options);
  std::size_t failures = 0;
  for (const auto& r : reports) {
    if (!r.passed) ++failures;
    std::printf("%s %s closed=%.10g oracle=%.10g rel=%.3e tol=%.1e\n",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.closed_form_value, r.oracle_value,
                r.relative_error, r.tolerance);
  }
  std::printf("# %zu checks, %zu failed\n", reports.size(), failures);
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon scattering observables for two-point giant atoms in a 1D waveguide"};
  app.fallthrough(true);

  GlobalOpts g;
  app.add_option("--model", g.model, "two_level or three_level")->capture_default_str();
  app.add_option("--omega0", g.omega0, "Atom transition frequency")->capture_default_str();
  app.add_option("--gamma", g.gamma, "Waveguide decay rate")->capture_default_str();
  app.add_option("--theta", g.theta, "Accumulated phase, radians; accepts a pi suffix (0.85pi)")
      ->capture_default_str();
  app.add_option("--omega-rabi", g.omega_rabi, "Control Rabi frequency (three-level)")
      ->capture_default_str();
  app.add_option("--delta", g.delta, "Control detuning (three-level)")->capture_default_str();
  app.add_option("--output", g.output, "Output path (default: stdout)");
  app.add_option("--format", g.format, "csv or json")->capture_default_str();
  app.set_config("--config", "", "Config file (ini format; flags take precedence)");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  auto* amplitudes_cmd = app.add_subcommand("amplitudes", "Single-photon amplitudes vs k");
  KGridOpts amp_grid;
  add_k_grid(amplitudes_cmd, amp_grid);
  double amp_k = 0.0;
  auto* amp_k_opt = amplitudes_cmd->add_option("--k", amp_k, "Single incident frequency");

  auto* fk_cmd = app.add_subcommand("fk", "Total incoherent power spectrum F(k)");
  KGridOpts fk_grid;
  add_k_grid(fk_cmd, fk_grid);

  auto* g2_cmd = app.add_subcommand("g2", "Second-order correlation vs separation x");
  double g2_k = 0.0;
  auto* g2_k_opt = g2_cmd->add_option("--k", g2_k, "Incident frequency (default omega0)");
  std::string g2_direction;
  g2_cmd->add_option("--direction", g2_direction, "R (transmitted) or L (reflected)")
      ->required();
  double g2_x_max = 0.0;
  int g2_x_steps = 3001;
  g2_cmd->add_option("--x-max", g2_x_max, "Largest separation (default 60/gamma)");
  g2_cmd->add_option("--x-steps", g2_x_steps, "Grid point count")->capture_default_str();

  auto* chi_cmd = app.add_subcommand("chi", "chi_R / chi_L map over k and theta");
  KGridOpts chi_grid;
  add_k_grid(chi_cmd, chi_grid);
  std::string chi_theta_min = "0";
  std::string chi_theta_max = "0.95pi";
  int chi_theta_steps = 401;
  chi_cmd->add_option("--theta-min", chi_theta_min, "Phase grid lower bound")
      ->capture_default_str();
  chi_cmd->add_option("--theta-max", chi_theta_max, "Phase grid upper bound")
      ->capture_default_str();
  chi_cmd->add_option("--theta-steps", chi_theta_steps, "Phase grid point count")
      ->capture_default_str();

  auto* poles_cmd = app.add_subcommand("poles", "Pole table for one or more theta values");
  std::vector<std::string> pole_thetas;
  poles_cmd->add_option("--theta", pole_thetas, "Phase value(s); repeatable");

  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle verification suite");
  std::string verify_scope = "all";
  verify_cmd->add_option("--scope", verify_scope, "two_level, three_level or all")
      ->capture_default_str();
  bool verify_corrupt = false;
  verify_cmd
      ->add_flag("--corrupt-fixture", verify_corrupt,
                 "Self-test: perturb closed forms so the suite must fail")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    g.check_model();
    if (amplitudes_cmd->parsed())
      return run_amplitudes(g, amp_grid, amp_k, amp_k_opt->count() > 0);
    if (fk_cmd->parsed()) return run_fk(g, fk_grid);
    if (g2_cmd->parsed())
      return run_g2(g, g2_k, g2_k_opt->count() > 0, g2_direction, g2_x_max, g2_x_steps);
    if (chi_cmd->parsed())
      return run_chi(g, chi_grid, chi_theta_min, chi_theta_max, chi_theta_steps);
    if (poles_cmd->parsed()) return run_poles(g, pole_thetas);
    if (verify_cmd->parsed()) return run_verify(verify_scope, verify_corrupt);
  } catch (const ScatteringError& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
