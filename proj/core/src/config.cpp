#include "wnv/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "wnv/text.hpp"

namespace wnv {

namespace {

const char* const kKnownKeys[] = {"mu_m", "K_m",   "delta_m",     "mu_b",    "c",
                                  "beta_bm", "N_b", "p", "q", "H_b",
                                  "M0",   "I_b0", "t_max", "resample_dt", "outputs"};

bool known_key(std::string_view key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

struct RawEntry {
  std::string value;
  int line;
};

std::set<OutputKind> parse_outputs(const std::string& value, int line) {
  std::set<OutputKind> out;
  std::stringstream ss{value};
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto t = trim(token);
    if (t.empty()) continue;
    if (t == "trajectory_csv")
      out.insert(OutputKind::trajectory_csv);
    else if (t == "phase_svg")
      out.insert(OutputKind::phase_svg);
    else if (t == "timeseries_svg")
      out.insert(OutputKind::timeseries_svg);
    else if (t == "report")
      out.insert(OutputKind::report);
    else
      throw ConfigError("unknown output kind '" + std::string(t) +
                            "' (expected trajectory_csv, phase_svg, timeseries_svg, report)",
                        line);
  }
  if (out.empty()) throw ConfigError("outputs must name at least one kind", line);
  return out;
}

}  // namespace

ConfigError::ConfigError(const std::string& msg, int line_number)
    : std::runtime_error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + msg
                                         : msg),
      line(line_number) {}

std::string_view to_string(OutputKind k) {
  switch (k) {
    case OutputKind::trajectory_csv: return "trajectory_csv";
    case OutputKind::phase_svg: return "phase_svg";
    case OutputKind::timeseries_svg: return "timeseries_svg";
    case OutputKind::report: return "report";
  }
  return "?";
}

ScenarioConfig parse_config_text(std::string_view text) {
  std::map<std::string, RawEntry, std::less<>> entries;
  int line_no = 0;
  std::string line;
  std::stringstream stream{std::string(text)};
  while (std::getline(stream, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected key=value", line_no);
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (!known_key(key)) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (value.empty()) throw ConfigError("empty value for '" + std::string(key) + "'", line_no);
    if (!entries.emplace(std::string(key), RawEntry{std::string(value), line_no}).second)
      throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
  }

  auto take_double = [&](std::string_view key) -> std::optional<std::pair<double, int>> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    double v;
    if (!parse_double(it->second.value, v))
      throw ConfigError("value for '" + std::string(key) + "' is not a number: '" +
                            it->second.value + "'",
                        it->second.line);
    return std::make_pair(v, it->second.line);
  };
  auto require_double = [&](std::string_view key) -> double {
    const auto v = take_double(key);
    if (!v) throw ConfigError("missing required key '" + std::string(key) + "'");
    return v->first;
  };

  ScenarioConfig cfg;
  cfg.params.mu_m = require_double("mu_m");
  cfg.params.K_m = require_double("K_m");
  cfg.params.delta_m = require_double("delta_m");
  cfg.params.mu_b = require_double("mu_b");
  cfg.params.c = require_double("c");
  cfg.params.beta_bm = require_double("beta_bm");
  cfg.params.N_b = require_double("N_b");
  if (const auto err = check(cfg.params)) throw ConfigError(*err);

  const auto p = take_double("p");
  const auto q = take_double("q");
  const auto hb = take_double("H_b");
  const int have_policy = int(bool(p)) + int(bool(q)) + int(bool(hb));
  if (have_policy == 3) {
    ControlPolicy policy{p->first, q->first, hb->first};
    if (!(policy.p > 0.0 && policy.p < 1.0))
      throw ConfigError("p must lie in (0,1)", p->second);
    if (!(policy.q > 0.0 && policy.q < 1.0))
      throw ConfigError("q must lie in (0,1)", q->second);
    if (!(policy.H_b > 0.0 && policy.H_b < cfg.params.N_b))
      throw ConfigError("H_b must lie in (0, N_b)", hb->second);
    cfg.policy = policy;
  } else if (have_policy != 0) {
    throw ConfigError("p, q, H_b must be given together (or all omitted for an uncontrolled run)");
  }

  cfg.initial.M = require_double("M0");
  cfg.initial.I_b = require_double("I_b0");
  if (const auto err = check(cfg.initial, cfg.params)) throw ConfigError(*err);

  if (const auto v = take_double("t_max")) {
    if (!(v->first > 0.0)) throw ConfigError("t_max must be positive", v->second);
    cfg.t_max = v->first;
  }
  if (const auto v = take_double("resample_dt")) {
    if (!(v->first > 0.0)) throw ConfigError("resample_dt must be positive", v->second);
    cfg.resample_dt = v->first;
  }
  if (const auto it = entries.find("outputs"); it != entries.end())
    cfg.outputs = parse_outputs(it->second.value, it->second.line);

  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string to_key_values(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "mu_m=" << fmt_short(cfg.params.mu_m) << '\n'
     << "K_m=" << fmt_short(cfg.params.K_m) << '\n'
     << "delta_m=" << fmt_short(cfg.params.delta_m) << '\n'
     << "mu_b=" << fmt_short(cfg.params.mu_b) << '\n'
     << "c=" << fmt_short(cfg.params.c) << '\n'
     << "beta_bm=" << fmt_short(cfg.params.beta_bm) << '\n'
     << "N_b=" << fmt_short(cfg.params.N_b) << '\n';
  if (cfg.policy) {
    os << "p=" << fmt_short(cfg.policy->p) << '\n'
       << "q=" << fmt_short(cfg.policy->q) << '\n'
       << "H_b=" << fmt_short(cfg.policy->H_b) << '\n';
  }
  os << "M0=" << fmt_short(cfg.initial.M) << '\n'
     << "I_b0=" << fmt_short(cfg.initial.I_b) << '\n'
     << "t_max=" << fmt_short(cfg.t_max) << '\n'
     << "resample_dt=" << fmt_short(cfg.resample_dt) << '\n';
  os << "outputs=";
  bool first = true;
  for (const auto kind : cfg.outputs) {
    if (!first) os << ',';
    os << to_string(kind);
    first = false;
  }
  os << '\n';
  return os.str();
}

}  // namespace wnv
