// Command line front end: equilibrium/regime queries, scenario runs,
// cycle and stability searches, and bifurcation sweeps.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 guard never reached where a hit was required.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wnv/config.hpp"
#include "wnv/csv.hpp"
#include "wnv/orbit.hpp"
#include "wnv/scan.hpp"
#include "wnv/scenario.hpp"
#include "wnv/svg.hpp"
#include "wnv/text.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNoHit = 4;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = ".";
  double tol_rel = 1e-10;
  double tol_abs = 1e-12;
  int workers = 1;
  long seed = 0;  // reserved; the dynamics are deterministic
};

wnv::ScenarioConfig load_config(const GlobalArgs& args) {
  if (args.config_path.empty())
    throw wnv::ConfigError("this subcommand needs --config PATH");
  return wnv::parse_config(args.config_path);
}

wnv::SimOptions sim_options(const GlobalArgs& args) {
  wnv::SimOptions opts;
  opts.rel_tol = args.tol_rel;
  opts.abs_tol = args.tol_abs;
  return opts;
}

wnv::ControlPolicy require_policy(const wnv::ScenarioConfig& cfg) {
  if (!cfg.policy)
    throw wnv::ConfigError("this subcommand needs a control policy (p, q, H_b) in the config");
  return *cfg.policy;
}

std::string stem_of(const GlobalArgs& args, const char* fallback) {
  if (!args.config_path.empty()) {
    const auto stem = std::filesystem::path(args.config_path).stem().string();
    if (!stem.empty()) return stem;
  }
  return fallback;
}

void print_equilibria(const wnv::ScenarioConfig& cfg) {
  const auto eq = wnv::equilibria(cfg.params);
  std::cout << "endemic_exists=" << (eq.endemic_exists ? "true" : "false") << '\n';
  std::cout << "disease_free_M=0\ndisease_free_I_b=0\n";
  const auto at_origin = wnv::jacobian_eigenvalues(cfg.params, {0.0, 0.0});
  std::cout << "lambda1_origin=" << wnv::fmt_short(at_origin.lambda1) << '\n'
            << "lambda2_origin=" << wnv::fmt_short(at_origin.lambda2) << '\n';
  if (eq.endemic) {
    std::cout << "M_star=" << wnv::fmt_short(eq.endemic->M) << '\n'
              << "I_b_star=" << wnv::fmt_short(eq.endemic->I_b) << '\n';
    const auto at_star = wnv::jacobian_eigenvalues(cfg.params, *eq.endemic);
    std::cout << "lambda1_endemic=" << wnv::fmt_short(at_star.lambda1) << '\n'
              << "lambda2_endemic=" << wnv::fmt_short(at_star.lambda2) << '\n';
  }
  std::cout << "dulac_divergence=" << wnv::fmt_short(wnv::dulac_divergence(cfg.params)) << '\n';
}

void print_regime(const wnv::ScenarioConfig& cfg) {
  const auto policy = require_policy(cfg);
  const auto rep = wnv::nullcline_markers(cfg.params, policy);
  std::cout << "M_star=" << wnv::fmt_short(rep.M_star) << '\n'
            << "N_mq=" << wnv::fmt_short(rep.N_mq) << '\n'
            << "N_mh=" << wnv::fmt_short(rep.N_mh) << '\n'
            << "case_a=" << (rep.case_a ? "true" : "false") << '\n'
            << "case_b=" << (rep.case_b ? "true" : "false") << '\n'
            << "threshold_reachable=" << (rep.threshold_reachable ? "true" : "false") << '\n';
}

int run_find_cycle(const GlobalArgs& args, bool with_order2, bool stability_only) {
  const auto cfg = load_config(args);
  const auto policy = require_policy(cfg);
  wnv::OrbitOptions oopts;
  oopts.sim = sim_options(args);

  const auto res = wnv::find_order1(cfg.params, policy, oopts);
  std::cout << "orbit_status=" << wnv::to_string(res.status) << '\n';
  if (res.status != wnv::Order1Result::Status::ok) {
    if (!res.detail.empty()) std::cout << "detail=" << res.detail << '\n';
    return res.status == wnv::Order1Result::Status::no_hit ? kExitNoHit : kExitNumerical;
  }

  const auto& orbit = *res.orbit;
  const auto& st = *res.stability;
  std::cout << "order=" << orbit.order << '\n'
            << "anchor=" << wnv::fmt_short(orbit.anchors.front()) << '\n'
            << "period=" << wnv::fmt_short(orbit.period) << '\n'
            << "kappa1=" << wnv::fmt_short(st.kappa1) << '\n'
            << "integral_term=" << wnv::fmt_short(st.integral_term) << '\n'
            << "mu_analytic=" << wnv::fmt_short(st.mu_analytic) << '\n'
            << "mu_numeric=" << wnv::fmt_short(st.mu_numeric) << '\n'
            << "identity_residual=" << wnv::fmt_short(st.identity_residual) << '\n'
            << "stable=" << (st.stable ? "true" : "false") << '\n';

  if (!stability_only) {
    std::filesystem::create_directories(args.out_dir);
    const auto path =
        std::filesystem::path(args.out_dir) / (stem_of(args, "cycle") + "_orbit.csv");
    std::ostringstream os;
    wnv::write_orbit_csv(os, orbit, cfg.params, policy);
    std::ofstream out(path, std::ios::binary);
    out << os.str();
    std::cout << "orbit_csv=" << path.string() << '\n';
  }

  if (with_order2) {
    const auto second = wnv::find_order2(cfg.params, policy, oopts);
    std::cout << "order2_found=" << (second ? "true" : "false") << '\n';
    if (second) {
      std::cout << "order2_anchor_a=" << wnv::fmt_short(second->anchors[0]) << '\n'
                << "order2_anchor_b=" << wnv::fmt_short(second->anchors[1]) << '\n'
                << "order2_period=" << wnv::fmt_short(second->period) << '\n';
    }
  }
  return kExitOk;
}

int run_simulate(const GlobalArgs& args) {
  const auto cfg = load_config(args);
  const auto summary =
      wnv::run_scenario(cfg, args.out_dir, stem_of(args, "scenario"), sim_options(args));
  std::cout << wnv::summary_report(stem_of(args, "scenario"), cfg, summary);
  for (const auto& f : summary.written) std::cout << "written=" << f.string() << '\n';
  return kExitOk;
}

int run_scan(const GlobalArgs& args, const std::string& key, double lo, double hi, int n) {
  const auto cfg = load_config(args);
  require_policy(cfg);
  const auto res = wnv::bifurcation_scan(cfg, key, lo, hi, n, 200, 50, args.workers);

  std::filesystem::create_directories(args.out_dir);
  const auto csv_path = std::filesystem::path(args.out_dir) / ("scan_" + key + ".csv");
  {
    std::ostringstream os;
    wnv::write_scan_csv(os, res);
    std::ofstream out(csv_path, std::ios::binary);
    out << os.str();
  }
  wnv::BifurcationPlot plot;
  plot.param_name = key;
  for (std::size_t i = 0; i < res.cells.size(); ++i)
    for (const double v : res.cells[i].tail) plot.points.push_back({res.grid[i], v});
  const auto svg_path = std::filesystem::path(args.out_dir) / ("scan_" + key + ".svg");
  if (!plot.points.empty()) wnv::emit_svg(plot, svg_path);

  int ok_cells = 0, no_hit_cells = 0, failed_cells = 0;
  for (const auto& cell : res.cells) {
    if (cell.status == "ok")
      ++ok_cells;
    else if (cell.status == "no_hit")
      ++no_hit_cells;
    else
      ++failed_cells;
  }
  std::cout << "cells=" << res.cells.size() << '\n'
            << "ok=" << ok_cells << '\n'
            << "no_hit=" << no_hit_cells << '\n'
            << "failed=" << failed_cells << '\n'
            << "csv=" << csv_path.string() << '\n';
  if (!plot.points.empty()) std::cout << "svg=" << svg_path.string() << '\n';
  return kExitOk;
}

int run_preset_cmd(const GlobalArgs& args, const std::string& name, bool list) {
  if (list) {
    for (const auto& p : wnv::presets())
      std::cout << p.name << ": " << p.summary << '\n';
    return kExitOk;
  }
  const auto* preset = wnv::find_preset(name);
  if (!preset) throw wnv::ConfigError("unknown preset '" + name + "' (try --list)");
  const auto run = wnv::run_preset(*preset, args.out_dir, sim_options(args), args.workers);
  for (const auto& [label, summary] : run.runs) {
    const std::string stem = label.empty() ? preset->name : preset->name + "_" + label;
    for (const auto& variant : preset->variants) {
      if (variant.label == label) {
        std::cout << wnv::summary_report(stem, variant.config, summary);
        break;
      }
    }
  }
  for (const auto& f : run.written) std::cout << "written=" << f.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"West Nile virus host-vector dynamics with threshold-triggered control"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "key=value scenario file");
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--tol-rel", g.tol_rel, "integrator relative tolerance")->capture_default_str();
  app.add_option("--tol-abs", g.tol_abs, "integrator absolute tolerance")->capture_default_str();
  app.add_option("--workers", g.workers, "scan worker threads")->capture_default_str();
  app.add_option("--seed", g.seed, "reserved (dynamics are deterministic)");

  auto* cmd_eq = app.add_subcommand("equilibria", "equilibria, eigenvalues and the flow divergence");
  auto* cmd_regime = app.add_subcommand("regime", "nullcline markers and regime flags");
  auto* cmd_sim = app.add_subcommand("simulate", "run the configured scenario and write artifacts");

  auto* cmd_cycle = app.add_subcommand("find-cycle", "locate the order-1 cycle and its stability");
  bool order2 = false;
  cmd_cycle->add_flag("--order2", order2, "also scan for an order-2 cycle");

  auto* cmd_floquet = app.add_subcommand("floquet", "stability report of the order-1 cycle");

  auto* cmd_scan = app.add_subcommand("scan", "bifurcation sweep over p, q or H_b");
  std::string scan_key;
  double scan_lo = 0.0, scan_hi = 0.0;
  int scan_n = 0;
  cmd_scan->add_option("--key", scan_key, "swept parameter: p, q or H_b")->required();
  cmd_scan->add_option("--lo", scan_lo, "grid start")->required();
  cmd_scan->add_option("--hi", scan_hi, "grid end")->required();
  cmd_scan->add_option("--n", scan_n, "grid size (>= 2)")->required();

  auto* cmd_preset = app.add_subcommand("preset", "run a built-in named scenario");
  std::string preset_name;
  bool preset_list = false;
  cmd_preset->add_option("name", preset_name, "preset name (fig3, fig4, fig5a, ...)");
  cmd_preset->add_flag("--list", preset_list, "list available presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (cmd_eq->parsed()) {
      print_equilibria(load_config(g));
      return kExitOk;
    }
    if (cmd_regime->parsed()) {
      print_regime(load_config(g));
      return kExitOk;
    }
    if (cmd_sim->parsed()) return run_simulate(g);
    if (cmd_cycle->parsed()) return run_find_cycle(g, order2, false);
    if (cmd_floquet->parsed()) return run_find_cycle(g, false, true);
    if (cmd_scan->parsed()) return run_scan(g, scan_key, scan_lo, scan_hi, scan_n);
    if (cmd_preset->parsed()) {
      if (!preset_list && preset_name.empty())
        throw wnv::ConfigError("preset needs a name or --list");
      return run_preset_cmd(g, preset_name, preset_list);
    }
  } catch (const wnv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wnv::SingularKappa& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const wnv::IntegratorError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
