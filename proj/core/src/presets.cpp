#include "wnv/presets.hpp"

namespace wnv {

namespace {

constexpr double kHb = 250.0;

Parameters base_params(double mu_m, double delta_m) {
  return {mu_m, 1000.0, delta_m, 0.01, 0.09, 0.8, 400.0};
}

ScenarioConfig scenario(double mu_m, double delta_m, std::optional<ControlPolicy> policy,
                        State initial, double t_max, double dt) {
  ScenarioConfig cfg;
  cfg.params = base_params(mu_m, delta_m);
  cfg.policy = policy;
  cfg.initial = initial;
  cfg.t_max = t_max;
  cfg.resample_dt = dt;
  cfg.outputs = {OutputKind::trajectory_csv, OutputKind::phase_svg, OutputKind::timeseries_svg,
                 OutputKind::report};
  return cfg;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;

  // strong mosquito growth, free flow vs threshold control
  {
    Preset p;
    p.name = "fig3";
    p.summary = "uncontrolled convergence to the endemic point vs the same run under control";
    p.variants.push_back(
        {"free", scenario(0.537, 0.035, std::nullopt, {771.0, 137.0}, 1500.0, 0.5)});
    p.variants.push_back({"controlled", scenario(0.537, 0.035, ControlPolicy{0.15, 0.45, kHb},
                                                 {771.0, 137.0}, 1500.0, 0.5)});
    out.push_back(std::move(p));
  }
  // slow growth, heavy culling
  {
    Preset p;
    p.name = "fig4";
    p.summary = "cycle formation under heavy culling and slow mosquito growth";
    p.variants.push_back({"", scenario(0.06, 0.04, ControlPolicy{0.8, 0.3, kHb}, {29.0, 175.0},
                                       5000.0, 1.0)});
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig5a";
    p.summary = "effect of the cure fraction q at heavy culling (q = 0.35, 0.30, 0.25)";
    for (const double q : {0.35, 0.30, 0.25}) {
      p.variants.push_back({"q" + std::to_string(int(q * 100)),
                            scenario(0.06, 0.05, ControlPolicy{0.8, q, kHb}, {29.0, 175.0},
                                     8000.0, 1.0)});
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig5b";
    p.summary = "effect of the culling fraction p (p = 0.85, 0.80, 0.75)";
    for (const double pp : {0.85, 0.80, 0.75}) {
      p.variants.push_back({"p" + std::to_string(int(pp * 100)),
                            scenario(0.06, 0.05, ControlPolicy{pp, 0.25, kHb}, {29.0, 175.0},
                                     8000.0, 1.0)});
    }
    out.push_back(std::move(p));
  }
  // moderate growth, light control: unique stable cycle
  {
    Preset p;
    p.name = "fig6";
    p.summary = "unique stable cycle under light control at moderate growth";
    p.variants.push_back({"", scenario(0.357, 0.035, ControlPolicy{0.15, 0.45, kHb},
                                       {771.0, 137.0}, 80.0, 0.02)});
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig7a";
    p.summary = "cycle period vs the cure fraction q (q = 0.45, 0.40, 0.35)";
    for (const double q : {0.45, 0.40, 0.35}) {
      p.variants.push_back({"q" + std::to_string(int(q * 100)),
                            scenario(0.537, 0.035, ControlPolicy{0.15, q, kHb}, {771.0, 137.0},
                                     60.0, 0.02)});
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig7b";
    p.summary = "cycle shape vs the culling fraction p (p = 0.25, 0.20, 0.15)";
    for (const double pp : {0.25, 0.20, 0.15}) {
      p.variants.push_back({"p" + std::to_string(int(pp * 100)),
                            scenario(0.537, 0.035, ControlPolicy{pp, 0.45, kHb}, {771.0, 137.0},
                                     60.0, 0.02)});
    }
    out.push_back(std::move(p));
  }
  // bifurcation sweep over the cure fraction
  {
    Preset p;
    p.name = "fig8";
    p.summary = "bifurcation sweep of the post-impulse mosquito level over q in (0.45, 0.75)";
    p.variants.push_back({"", scenario(0.537, 0.035, ControlPolicy{0.25, 0.45, kHb},
                                       {771.0, 137.0}, 200.0, 0.05)});
    p.scan = ScanSpec{"q", 0.45, 0.75, 61};
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace wnv
