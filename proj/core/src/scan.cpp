#include "wnv/scan.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "wnv/text.hpp"

namespace wnv {

namespace {

void apply_key(ScenarioConfig& cfg, const std::string& key, double value) {
  if (key == "p")
    cfg.policy->p = value;
  else if (key == "q")
    cfg.policy->q = value;
  else if (key == "H_b")
    cfg.policy->H_b = value;
  else
    throw std::invalid_argument("bifurcation_scan: key must be p, q or H_b");
}

void check_domain(const ScenarioConfig& base, const std::string& key, double lo, double hi) {
  if (key == "p" || key == "q") {
    if (!(lo > 0.0 && hi < 1.0))
      throw std::invalid_argument("bifurcation_scan: " + key + " grid must stay inside (0,1)");
  } else if (key == "H_b") {
    if (!(lo > 0.0 && hi < base.params.N_b))
      throw std::invalid_argument("bifurcation_scan: H_b grid must stay inside (0, N_b)");
  } else {
    throw std::invalid_argument("bifurcation_scan: key must be p, q or H_b");
  }
}

ScanCell run_cell(const ScenarioConfig& base, const std::string& key, double value,
                  int n_transient, int n_record) {
  ScanCell cell;
  cell.value = value;
  try {
    ScenarioConfig cfg = base;
    apply_key(cfg, key, value);

    // seed the return map: flow the base initial state to its first impulse
    SimOptions seed_opts;
    seed_opts.max_impulses = 1;
    const auto seed_run = simulate(cfg.initial, cfg.params, cfg.policy, seed_opts);
    if (seed_run.events.empty()) {
      cell.cls = CycleClass::no_hit;
      cell.status = "no_hit";
      return cell;
    }

    double x = seed_run.events.front().post.M;
    const SimOptions flight_opts;
    const int total = n_transient + n_record;
    cell.tail.reserve(n_record);
    for (int i = 0; i < total; ++i) {
      const auto ps = poincare_map(x, cfg.params, *cfg.policy, flight_opts);
      if (!ps.hit) {
        cell.cls = CycleClass::no_hit;
        cell.status = "no_hit";
        return cell;
      }
      x = ps.x_out;
      if (i >= n_transient) {
        cell.tail.push_back(ps.x_out);
        cell.pre_tail.push_back(ps.m_pre);
        cell.ib_max.push_back(ps.ib_max);
      }
    }

    OrbitOptions oopts;
    std::vector<double> anchors;
    cell.cls = classify_tail(cell.tail, oopts.cycle_tol_rel * cfg.params.K_m, &anchors);
    if (cell.cls == CycleClass::order1) {
      const auto orbit = assemble_orbit(anchors.front(), 1, cfg.params, *cfg.policy, oopts);
      cell.period = orbit.period;
      try {
        cell.mu = std::abs(floquet_multiplier(orbit, cfg.params, *cfg.policy, oopts).mu_analytic);
      } catch (const SingularKappa&) {
        cell.status = "singular_kappa";
      }
    } else if (cell.cls == CycleClass::order2) {
      const auto orbit = assemble_orbit(anchors.front(), 2, cfg.params, *cfg.policy, oopts);
      cell.period = orbit.period;
    }
  } catch (const std::exception& e) {
    cell.status = std::string("error: ") + e.what();
  }
  return cell;
}

}  // namespace

ScanResult bifurcation_scan(const ScenarioConfig& base, const std::string& key, double lo,
                            double hi, int n, int n_transient, int n_record, int workers) {
  if (!base.policy)
    throw std::invalid_argument("bifurcation_scan: base config needs a control policy");
  if (n < 2) throw std::invalid_argument("bifurcation_scan: need at least 2 grid points");
  if (!(lo < hi)) throw std::invalid_argument("bifurcation_scan: need lo < hi");
  check_domain(base, key, lo, hi);

  ScanResult res;
  res.swept_key = key;
  res.n_transient = n_transient;
  res.n_record = n_record;
  res.grid.resize(n);
  for (int i = 0; i < n; ++i) res.grid[i] = lo + (hi - lo) * i / (n - 1);
  res.cells.resize(n);

  const int n_workers = std::max(1, std::min(workers, n));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      res.cells[i] = run_cell(base, key, res.grid[i], n_transient, n_record);
  };
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return res;
}

void write_scan_csv(std::ostream& os, const ScanResult& res) {
  os << res.swept_key << ",index,M_plus,M_pre,Ib_max,order,period,mu,status\n";
  for (std::size_t ci = 0; ci < res.cells.size(); ++ci) {
    const auto& cell = res.cells[ci];
    for (int j = 0; j < res.n_record; ++j) {
      os << fmt17(res.grid[ci]) << ',' << j << ',';
      if (j < static_cast<int>(cell.tail.size())) {
        os << fmt17(cell.tail[j]) << ',' << fmt17(cell.pre_tail[j]) << ','
           << fmt17(cell.ib_max[j]) << ',';
      } else {
        os << ",,,";
      }
      os << to_string(cell.cls) << ',';
      if (cell.cls == CycleClass::order1 || cell.cls == CycleClass::order2)
        os << fmt17(cell.period);
      os << ',';
      if (cell.cls == CycleClass::order1 && cell.status == "ok") os << fmt17(cell.mu);
      os << ',' << cell.status << '\n';
    }
  }
}

}  // namespace wnv
