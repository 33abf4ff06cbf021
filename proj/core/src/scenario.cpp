#include "wnv/scenario.hpp"

#include <fstream>
#include <sstream>

#include "wnv/csv.hpp"
#include "wnv/svg.hpp"
#include "wnv/text.hpp"

namespace wnv {

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::pair<double, double>> phase_points(const Trajectory& traj, double dt) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& smp : resample(traj, dt)) pts.push_back({smp.s.M, smp.s.I_b});
  return pts;
}

std::vector<std::pair<double, double>> series_of(const Trajectory& traj, double dt, bool infected) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& smp : resample(traj, dt))
    pts.push_back({smp.t, infected ? smp.s.I_b : smp.s.M});
  return pts;
}

}  // namespace

std::string_view to_string(RunEnd e) {
  switch (e) {
    case RunEnd::t_max: return "t_max";
    case RunEnd::max_impulses: return "max_impulses";
    case RunEnd::converged: return "converged";
  }
  return "?";
}

ScenarioSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                             const std::string& stem, const SimOptions& sim_base) {
  std::filesystem::create_directories(out_dir);

  ScenarioSummary summary;
  summary.eq = equilibria(cfg.params);
  if (cfg.policy) summary.regime = nullcline_markers(cfg.params, *cfg.policy);

  SimOptions sim = sim_base;
  sim.t_max = cfg.t_max;
  summary.trajectory = simulate(cfg.initial, cfg.params, cfg.policy, sim);
  const auto& traj = summary.trajectory;
  summary.event_count = traj.events.size();
  summary.ended_by = traj.ended_by;

  if (cfg.policy && summary.eq.endemic_exists && summary.regime->threshold_reachable) {
    OrbitOptions oopts;
    oopts.sim = sim_base;  // flights keep the default horizon, not the plot window
    summary.orbit = find_order1(cfg.params, *cfg.policy, oopts);
  }

  if (cfg.outputs.count(OutputKind::trajectory_csv)) {
    const auto path = out_dir / (stem + ".csv");
    std::ostringstream os;
    write_trajectory_csv(os, traj, cfg.resample_dt);
    write_text_file(path, os.str());
    summary.written.push_back(path);
  }
  if (cfg.outputs.count(OutputKind::phase_svg)) {
    const auto path = out_dir / (stem + "_phase.svg");
    PhasePlot plot{cfg.params, cfg.policy, {Series{"trajectory", "", phase_points(traj, cfg.resample_dt)}}};
    emit_svg(plot, path);
    summary.written.push_back(path);
  }
  if (cfg.outputs.count(OutputKind::timeseries_svg)) {
    const auto path = out_dir / (stem + "_timeseries.svg");
    TimeseriesPlot plot{"population",
                        {Series{"I_b", "", series_of(traj, cfg.resample_dt, true)},
                         Series{"M", "", series_of(traj, cfg.resample_dt, false)}}};
    emit_svg(plot, path);
    summary.written.push_back(path);
  }
  if (cfg.outputs.count(OutputKind::report)) {
    const auto path = out_dir / (stem + "_report.txt");
    write_text_file(path, summary_report(stem, cfg, summary));
    summary.written.push_back(path);
  }
  return summary;
}

std::string summary_report(const std::string& stem, const ScenarioConfig& cfg,
                           const ScenarioSummary& summary) {
  std::ostringstream os;
  os << "scenario=" << stem << '\n';
  os << to_key_values(cfg);
  os << "endemic_exists=" << (summary.eq.endemic_exists ? "true" : "false") << '\n';
  if (summary.eq.endemic) {
    os << "M_star=" << fmt_short(summary.eq.endemic->M) << '\n'
       << "I_b_star=" << fmt_short(summary.eq.endemic->I_b) << '\n';
  }
  os << "dulac_divergence=" << fmt_short(dulac_divergence(cfg.params)) << '\n';
  if (summary.regime) {
    const auto& r = *summary.regime;
    os << "N_mq=" << fmt_short(r.N_mq) << '\n'
       << "N_mh=" << fmt_short(r.N_mh) << '\n'
       << "case_a=" << (r.case_a ? "true" : "false") << '\n'
       << "case_b=" << (r.case_b ? "true" : "false") << '\n'
       << "threshold_reachable=" << (r.threshold_reachable ? "true" : "false") << '\n';
  }
  os << "events=" << summary.event_count << '\n'
     << "ended_by=" << to_string(summary.ended_by) << '\n';
  if (summary.orbit) {
    os << "orbit_status=" << to_string(summary.orbit->status) << '\n';
    if (summary.orbit->orbit) {
      const auto& orbit = *summary.orbit->orbit;
      os << "orbit_order=" << orbit.order << '\n'
         << "anchor=" << fmt_short(orbit.anchors.front()) << '\n'
         << "period=" << fmt_short(orbit.period) << '\n';
    }
    if (summary.orbit->stability) {
      const auto& st = *summary.orbit->stability;
      os << "kappa1=" << fmt_short(st.kappa1) << '\n'
         << "integral_term=" << fmt_short(st.integral_term) << '\n'
         << "mu_analytic=" << fmt_short(st.mu_analytic) << '\n'
         << "mu_numeric=" << fmt_short(st.mu_numeric) << '\n'
         << "identity_residual=" << fmt_short(st.identity_residual) << '\n'
         << "stable=" << (st.stable ? "true" : "false") << '\n';
    }
    if (!summary.orbit->detail.empty()) os << "orbit_detail=" << summary.orbit->detail << '\n';
  }
  return os.str();
}

PresetRun run_preset(const Preset& preset, const std::filesystem::path& out_dir,
                     const SimOptions& sim_base, int workers) {
  PresetRun run;
  std::filesystem::create_directories(out_dir);

  if (preset.scan) {
    const auto& spec = *preset.scan;
    const auto& base = preset.variants.front().config;
    run.scan = bifurcation_scan(base, spec.key, spec.lo, spec.hi, spec.n, 200, 50, workers);

    const auto csv_path = out_dir / (preset.name + "_scan.csv");
    std::ostringstream os;
    write_scan_csv(os, *run.scan);
    write_text_file(csv_path, os.str());
    run.written.push_back(csv_path);

    BifurcationPlot plot;
    plot.param_name = spec.key;
    for (std::size_t i = 0; i < run.scan->cells.size(); ++i)
      for (const double v : run.scan->cells[i].tail) plot.points.push_back({run.scan->grid[i], v});
    const auto svg_path = out_dir / (preset.name + "_bifurcation.svg");
    emit_svg(plot, svg_path);
    run.written.push_back(svg_path);
    return run;
  }

  TimeseriesPlot compare{"I_b (infected birds)", {}};
  for (const auto& variant : preset.variants) {
    const std::string stem =
        variant.label.empty() ? preset.name : preset.name + "_" + variant.label;
    auto summary = run_scenario(variant.config, out_dir, stem, sim_base);
    for (const auto& f : summary.written) run.written.push_back(f);
    compare.series.push_back(
        {variant.label.empty() ? preset.name : variant.label, "",
         series_of(summary.trajectory, variant.config.resample_dt, true)});
    run.runs.push_back({variant.label, std::move(summary)});
  }

  if (preset.variants.size() > 1) {
    const auto path = out_dir / (preset.name + "_compare.svg");
    emit_svg(compare, path);
    run.written.push_back(path);
  }
  return run;
}

}  // namespace wnv
