#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "test_support.hpp"
#include "wnv/config.hpp"
#include "wnv/csv.hpp"
#include "wnv/presets.hpp"
#include "wnv/scan.hpp"
#include "wnv/scenario.hpp"
#include "wnv/svg.hpp"
#include "wnv/text.hpp"

using namespace wnv;
using namespace testsup;

namespace {

const char* const kGoodConfig =
    "# light-control block\n"
    "mu_m = 0.357\n"
    "K_m = 1000\n"
    "delta_m = 0.035\n"
    "mu_b = 0.01\n"
    "c = 0.09\n"
    "beta_bm = 0.8\n"
    "N_b = 400\n"
    "p = 0.15\n"
    "q = 0.45\n"
    "H_b = 250\n"
    "M0 = 771\n"
    "I_b0 = 137  # inline comment\n"
    "t_max = 30\n"
    "resample_dt = 0.5\n"
    "outputs = trajectory_csv,report\n";

std::filesystem::path temp_dir() {
  const auto dir =
      std::filesystem::temp_directory_path() / ("wnv_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

TEST_CASE("config round trip") {
  const auto cfg = parse_config_text(kGoodConfig);
  CHECK(cfg.params.mu_m == 0.357);
  CHECK(cfg.params.K_m == 1000.0);
  CHECK(cfg.params.delta_m == 0.035);
  CHECK(cfg.params.mu_b == 0.01);
  CHECK(cfg.params.c == 0.09);
  CHECK(cfg.params.beta_bm == 0.8);
  CHECK(cfg.params.N_b == 400.0);
  REQUIRE(cfg.policy.has_value());
  CHECK(cfg.policy->p == 0.15);
  CHECK(cfg.policy->q == 0.45);
  CHECK(cfg.policy->H_b == 250.0);
  CHECK(cfg.initial.M == 771.0);
  CHECK(cfg.initial.I_b == 137.0);
  CHECK(cfg.t_max == 30.0);
  CHECK(cfg.resample_dt == 0.5);
  CHECK(cfg.outputs ==
        std::set<OutputKind>{OutputKind::trajectory_csv, OutputKind::report});

  // echo and reparse reproduces every field
  const auto echoed = parse_config_text(to_key_values(cfg));
  CHECK(echoed.params.mu_m == cfg.params.mu_m);
  CHECK(echoed.policy->H_b == cfg.policy->H_b);
  CHECK(echoed.t_max == cfg.t_max);
  CHECK(echoed.outputs == cfg.outputs);
}

TEST_CASE("config rejections carry line numbers") {
  SUBCASE("domain violation names the key and the bound") {
    std::string text = kGoodConfig;
    const auto at = text.find("p = 0.15");
    text.replace(at, 8, "p = 1.3 ");
    try {
      parse_config_text(text);
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
      CHECK(std::string(e.what()).find("p must") != std::string::npos);
      CHECK(e.line == 9);
    }
  }
  SUBCASE("unknown key") {
    try {
      parse_config_text(std::string(kGoodConfig) + "wingspan = 3\n");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("wingspan") != std::string::npos);
      CHECK(e.line == 17);
    }
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_AS(parse_config_text(std::string(kGoodConfig) + "mu_m = 0.4\n"), ConfigError);
  }
  SUBCASE("missing required key") {
    std::string text = kGoodConfig;
    const auto at = text.find("N_b = 400\n");
    text.erase(at, 10);
    CHECK_THROWS_AS(parse_config_text(text), ConfigError);
  }
  SUBCASE("partial policy") {
    std::string text = kGoodConfig;
    const auto at = text.find("H_b = 250\n");
    text.erase(at, 10);
    CHECK_THROWS_AS(parse_config_text(text), ConfigError);
  }
  SUBCASE("malformed number") {
    std::string text = kGoodConfig;
    const auto at = text.find("M0 = 771");
    text.replace(at, 8, "M0 = 7x1");
    CHECK_THROWS_AS(parse_config_text(text), ConfigError);
  }
  SUBCASE("bad output token") {
    std::string text = kGoodConfig;
    const auto at = text.find("outputs = trajectory_csv,report");
    text.replace(at, 31, "outputs = trajectory_csv,animat");
    CHECK_THROWS_AS(parse_config_text(text), ConfigError);
  }
  SUBCASE("nonpositive resample step") {
    std::string text = kGoodConfig;
    const auto at = text.find("resample_dt = 0.5");
    text.replace(at, 17, "resample_dt = 0.0");
    CHECK_THROWS_AS(parse_config_text(text), ConfigError);
  }
}

TEST_CASE("omitting all policy keys gives an uncontrolled run") {
  std::string text = kGoodConfig;
  for (const char* row : {"p = 0.15\n", "q = 0.45\n", "H_b = 250\n"}) {
    const auto at = text.find(row);
    text.erase(at, std::string(row).size());
  }
  const auto cfg = parse_config_text(text);
  CHECK_FALSE(cfg.policy.has_value());
}

TEST_CASE("trajectory csv layout and determinism") {
  const auto cfg = parse_config_text(kGoodConfig);
  SimOptions opts;
  opts.t_max = cfg.t_max;
  const auto traj = simulate(cfg.initial, cfg.params, cfg.policy, opts);

  std::ostringstream a, b;
  write_trajectory_csv(a, traj, cfg.resample_dt);
  write_trajectory_csv(b, simulate(cfg.initial, cfg.params, cfg.policy, opts), cfg.resample_dt);
  const std::string csv = a.str();
  CHECK(csv == b.str());  // byte-identical reruns
  CHECK(csv.find("\r") == std::string::npos);

  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,M,I_b,event");

  int pre_rows = 0, post_rows = 0, rows = 0;
  std::string prev_pre_t;
  while (std::getline(is, line)) {
    ++rows;
    const auto last_comma = line.rfind(',');
    const auto token = line.substr(last_comma + 1);
    if (token == "impulse_pre") {
      ++pre_rows;
      prev_pre_t = line.substr(0, line.find(','));
    } else if (token == "impulse_post") {
      ++post_rows;
      CHECK(line.substr(0, line.find(',')) == prev_pre_t);  // paired rows share a time
    } else {
      CHECK(token.empty());
    }
  }
  CHECK(pre_rows == static_cast<int>(traj.events.size()));
  CHECK(pre_rows == post_rows);
  CHECK(rows > 60);

  SUBCASE("numbers round-trip through 17 digits") {
    std::istringstream again(csv);
    std::getline(again, line);
    std::getline(again, line);  // t = 0 row
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    double m;
    CHECK(parse_double(line.substr(c1 + 1, c2 - c1 - 1), m));
    CHECK(m == 771.0);
  }
}

TEST_CASE("3-compartment csv carries the susceptible column") {
  const auto p = moderate_growth();
  SimOptions opts;
  opts.t_max = 10.0;
  const auto traj = simulate_full_3d({771.0, 263.0, 137.0}, p, light_control(), opts);
  std::ostringstream os;
  write_trajectory_csv(os, traj, 0.5);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,M,S_b,I_b,event");
}

TEST_CASE("orbit csv closes the loop") {
  const auto p = moderate_growth();
  const auto policy = light_control();
  const auto res = find_order1(p, policy);
  REQUIRE(res.status == Order1Result::Status::ok);
  std::ostringstream os;
  write_orbit_csv(os, *res.orbit, p, policy);
  const auto csv = os.str();
  CHECK(csv.rfind("impulse_post\n") == csv.size() - 13);
  CHECK(csv.find("impulse_pre") != std::string::npos);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,M,I_b,event");
}

TEST_CASE("svg plots") {
  const auto dir = temp_dir();

  SUBCASE("empty data is rejected before any file appears") {
    const auto path = dir / "empty.svg";
    CHECK_THROWS_AS(emit_svg(TimeseriesPlot{"y", {}}, path), std::invalid_argument);
    CHECK_THROWS_AS(emit_svg(PhasePlot{strong_growth(), {}, {}}, path), std::invalid_argument);
    CHECK_THROWS_AS(emit_svg(BifurcationPlot{"q", {}}, path), std::invalid_argument);
    CHECK_FALSE(std::filesystem::exists(path));
  }

  SUBCASE("axis windows add exactly five percent per side") {
    const auto r = plot_range(0.0, 10.0);
    CHECK(r.lo == -0.5);
    CHECK(r.hi == 10.5);
    const auto degenerate = plot_range(5.0, 5.0);
    CHECK(degenerate.lo == 4.5);
    CHECK(degenerate.hi == 5.5);
  }

  SUBCASE("phase portrait of the light-control cycle") {
    const auto p = moderate_growth();
    const auto policy = light_control();
    const auto res = find_order1(p, policy);
    REQUIRE(res.status == Order1Result::Status::ok);
    PhasePlot plot{p, policy, {Series{"orbit", "", {}}}};
    for (const auto& smp : res.orbit->orbit_samples)
      plot.trajectories.front().points.push_back({smp.s.M, smp.s.I_b});
    const auto path = dir / "orbit_phase.svg";
    emit_svg(plot, path);
    const auto svg = slurp(path);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    // trigger and reset lines, both dashed
    std::size_t dashed = 0;
    for (auto at = svg.find("stroke-dasharray"); at != std::string::npos;
         at = svg.find("stroke-dasharray", at + 1))
      ++dashed;
    CHECK(dashed == 2);
    // the infected-bird isocline (blue) is always sampled across the window
    CHECK(svg.find("#1f77b4") != std::string::npos);
    CHECK(svg.find(">orbit<") != std::string::npos);
  }

  SUBCASE("a window containing the endemic level draws the vertical isocline") {
    const auto p = moderate_growth();
    PhasePlot plot{p, light_control(), {Series{"wide", "", {{10.0, 10.0}, {950.0, 350.0}}}}};
    const auto path = dir / "wide_phase.svg";
    emit_svg(plot, path);
    const auto svg = slurp(path);
    CHECK(svg.find("#2ca02c") != std::string::npos);  // green vertical isocline at M*
    CHECK(svg.find("#1f77b4") != std::string::npos);  // blue infected-bird isocline
  }

  SUBCASE("timeseries and bifurcation files are self-contained") {
    TimeseriesPlot ts{"I_b", {Series{"a", "", {{0.0, 1.0}, {1.0, 2.0}}}}};
    emit_svg(ts, dir / "ts.svg");
    BifurcationPlot bf{"q", {{0.45, 700.0}, {0.5, 710.0}}};
    emit_svg(bf, dir / "bf.svg");
    CHECK(slurp(dir / "ts.svg").find("polyline") != std::string::npos);
    CHECK(slurp(dir / "bf.svg").find("circle") != std::string::npos);
  }
}

TEST_CASE("scenario artifacts and recomputable regime flags") {
  const auto dir = temp_dir() / "scenario";
  auto cfg = parse_config_text(kGoodConfig);
  cfg.outputs = {OutputKind::trajectory_csv, OutputKind::phase_svg, OutputKind::timeseries_svg,
                 OutputKind::report};
  const auto summary = run_scenario(cfg, dir, "case");
  CHECK(summary.written.size() == 4);
  for (const auto& f : summary.written) CHECK(std::filesystem::exists(f));

  const auto kv = parse_kv(slurp(dir / "case_report.txt"));
  // regime flags must be recomputable from the emitted parameters alone
  Parameters p{};
  p.mu_m = std::stod(kv.at("mu_m"));
  p.K_m = std::stod(kv.at("K_m"));
  p.delta_m = std::stod(kv.at("delta_m"));
  p.mu_b = std::stod(kv.at("mu_b"));
  p.c = std::stod(kv.at("c"));
  p.beta_bm = std::stod(kv.at("beta_bm"));
  p.N_b = std::stod(kv.at("N_b"));
  const ControlPolicy policy{std::stod(kv.at("p")), std::stod(kv.at("q")),
                             std::stod(kv.at("H_b"))};
  const auto regime = nullcline_markers(p, policy);
  CHECK((regime.case_a ? "true" : "false") == kv.at("case_a"));
  CHECK((regime.case_b ? "true" : "false") == kv.at("case_b"));
  CHECK((regime.threshold_reachable ? "true" : "false") == kv.at("threshold_reachable"));
  CHECK(kv.at("events") == std::to_string(summary.event_count));
  CHECK(kv.count("orbit_status") == 1);
}

TEST_CASE("bifurcation scan bookkeeping") {
  auto cfg = parse_config_text(kGoodConfig);

  SUBCASE("row count is header plus cells times records") {
    const auto res = bifurcation_scan(cfg, "q", 0.45, 0.55, 3, 50, 5, 2);
    std::ostringstream os;
    write_scan_csv(os, res);
    const auto csv = os.str();
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 1 + 3 * 5);
    CHECK(csv.rfind("q,index,M_plus,M_pre,Ib_max,order,period,mu,status\n", 0) == 0);
    for (const auto& cell : res.cells) {
      CHECK(cell.status == "ok");
      CHECK(cell.cls == CycleClass::order1);
      CHECK(cell.tail.size() == 5);
    }
    CHECK(res.grid.front() == 0.45);
    CHECK(res.grid.back() == 0.55);
  }

  SUBCASE("worker count does not change the bytes") {
    const auto r1 = bifurcation_scan(cfg, "q", 0.45, 0.55, 4, 30, 4, 1);
    const auto r4 = bifurcation_scan(cfg, "q", 0.45, 0.55, 4, 30, 4, 4);
    std::ostringstream a, b;
    write_scan_csv(a, r1);
    write_scan_csv(b, r4);
    CHECK(a.str() == b.str());
  }

  SUBCASE("unreachable threshold rows are flagged, not failed") {
    // sweep H_b across the endemic infection level: the top of the range
    // cannot be reached by the flow
    const auto eq = equilibria(cfg.params);
    const auto res =
        bifurcation_scan(cfg, "H_b", 0.9 * eq.endemic->I_b, 1.05 * eq.endemic->I_b, 4, 30, 4, 2);
    CHECK(res.cells.front().status == "ok");
    CHECK(res.cells.back().status == "no_hit");
    CHECK(res.cells.back().cls == CycleClass::no_hit);
    std::ostringstream os;
    write_scan_csv(os, res);
    const auto csv = os.str();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 4);
  }

  SUBCASE("grid domains are validated") {
    CHECK_THROWS_AS(bifurcation_scan(cfg, "q", 0.2, 1.2, 5), std::invalid_argument);
    CHECK_THROWS_AS(bifurcation_scan(cfg, "H_b", 10.0, 500.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(bifurcation_scan(cfg, "K_m", 0.1, 0.2, 5), std::invalid_argument);
    CHECK_THROWS_AS(bifurcation_scan(cfg, "q", 0.45, 0.55, 1), std::invalid_argument);
    cfg.policy.reset();
    CHECK_THROWS_AS(bifurcation_scan(cfg, "q", 0.45, 0.55, 5), std::invalid_argument);
  }
}

TEST_CASE("two-point scan degenerates cleanly") {
  const auto cfg = parse_config_text(kGoodConfig);
  const auto res = bifurcation_scan(cfg, "q", 0.45, 0.75, 2, 30, 3, 1);
  CHECK(res.grid.size() == 2);
  CHECK(res.cells.size() == 2);
  for (const auto& cell : res.cells) CHECK(cell.tail.size() == 3);
}

TEST_CASE("presets are well formed") {
  CHECK(presets().size() == 8);
  for (const char* name : {"fig3", "fig4", "fig5a", "fig5b", "fig6", "fig7a", "fig7b", "fig8"})
    CHECK(find_preset(name) != nullptr);
  CHECK(find_preset("fig9") == nullptr);
  for (const auto& preset : presets()) {
    REQUIRE(!preset.variants.empty());
    for (const auto& variant : preset.variants) {
      CHECK_FALSE(check(variant.config.params).has_value());
      if (variant.config.policy)
        CHECK_FALSE(check(*variant.config.policy, variant.config.params).has_value());
      CHECK_FALSE(check(variant.config.initial, variant.config.params).has_value());
      CHECK(variant.config.t_max > 0.0);
      CHECK(variant.config.resample_dt > 0.0);
    }
  }
  const auto* fig8 = find_preset("fig8");
  REQUIRE(fig8->scan.has_value());
  CHECK(fig8->scan->key == "q");
  CHECK(fig8->scan->n == 61);
}

TEST_CASE("every preset runs end to end and writes its artifacts") {
  const auto dir = temp_dir() / "presets";
  for (const auto& preset : presets()) {
    CAPTURE(preset.name);
    const auto run = run_preset(preset, dir);
    REQUIRE(!run.written.empty());
    for (const auto& f : run.written) CHECK(std::filesystem::exists(f));
    if (preset.scan) {
      REQUIRE(run.scan.has_value());
      CHECK(run.scan->cells.size() == static_cast<std::size_t>(preset.scan->n));
      CHECK(std::filesystem::exists(dir / (preset.name + "_scan.csv")));
      CHECK(std::filesystem::exists(dir / (preset.name + "_bifurcation.svg")));
    } else {
      CHECK(run.runs.size() == preset.variants.size());
      if (preset.variants.size() > 1)
        CHECK(std::filesystem::exists(dir / (preset.name + "_compare.svg")));
    }
  }
}

TEST_CASE("golden phase render") {
  // checksum of the light-control cycle portrait, frozen from the first
  // verified render; any drawing or numeric regression trips this
  const auto p = moderate_growth();
  const auto policy = light_control();
  const auto res = find_order1(p, policy);
  REQUIRE(res.status == Order1Result::Status::ok);
  PhasePlot plot{p, policy, {Series{"orbit", "", {}}}};
  for (const auto& smp : res.orbit->orbit_samples)
    plot.trajectories.front().points.push_back({smp.s.M, smp.s.I_b});
  const auto path = temp_dir() / "golden_phase.svg";
  emit_svg(plot, path);
  const auto content = slurp(path);
  CHECK(content.size() == 12733);
  CHECK(fnv1a(content) == 3654532595313747605ull);
}
