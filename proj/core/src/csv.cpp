#include "wnv/csv.hpp"

#include <ostream>

#include "wnv/text.hpp"

namespace wnv {

namespace {

void event_rows(std::ostream& os, const ImpulseEvent& e) {
  const char* pre = e.grazing ? "grazing_pre" : "impulse_pre";
  const char* post = e.grazing ? "grazing_post" : "impulse_post";
  os << fmt17(e.t) << ',' << fmt17(e.pre.M) << ',' << fmt17(e.pre.I_b) << ',' << pre << '\n';
  os << fmt17(e.t) << ',' << fmt17(e.post.M) << ',' << fmt17(e.post.I_b) << ',' << post << '\n';
}

void event_rows(std::ostream& os, const ImpulseEvent3D& e) {
  const char* pre = e.grazing ? "grazing_pre" : "impulse_pre";
  const char* post = e.grazing ? "grazing_post" : "impulse_post";
  os << fmt17(e.t) << ',' << fmt17(e.pre.M) << ',' << fmt17(e.pre.S_b) << ','
     << fmt17(e.pre.I_b) << ',' << pre << '\n';
  os << fmt17(e.t) << ',' << fmt17(e.post.M) << ',' << fmt17(e.post.S_b) << ','
     << fmt17(e.post.I_b) << ',' << post << '\n';
}

void grid_row(std::ostream& os, const Sample& smp) {
  os << fmt17(smp.t) << ',' << fmt17(smp.s.M) << ',' << fmt17(smp.s.I_b) << ",\n";
}

void grid_row(std::ostream& os, const Sample3D& smp) {
  os << fmt17(smp.t) << ',' << fmt17(smp.s.M) << ',' << fmt17(smp.s.S_b) << ','
     << fmt17(smp.s.I_b) << ",\n";
}

template <class Traj>
void write_csv_impl(std::ostream& os, const Traj& traj, double resample_dt, const char* header) {
  os << header << '\n';
  const auto grid = resample(traj, resample_dt);
  std::size_t ei = 0;
  const auto& evs = traj.events;
  for (const auto& smp : grid) {
    while (ei < evs.size() && evs[ei].t < smp.t) event_rows(os, evs[ei++]);
    if (ei < evs.size() && evs[ei].t == smp.t) {
      event_rows(os, evs[ei++]);
      continue;  // the event pair replaces a colliding grid row
    }
    grid_row(os, smp);
  }
  while (ei < evs.size()) event_rows(os, evs[ei++]);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, double resample_dt) {
  write_csv_impl(os, traj, resample_dt, "t,M,I_b,event");
}

void write_trajectory_csv(std::ostream& os, const Trajectory3D& traj, double resample_dt) {
  write_csv_impl(os, traj, resample_dt, "t,M,S_b,I_b,event");
}

void write_orbit_csv(std::ostream& os, const PeriodicOrbit& orbit, const Parameters& params,
                     const ControlPolicy& policy, int rows) {
  if (orbit.orbit_samples.size() < 2)
    throw std::invalid_argument("write_orbit_csv: orbit has no samples");
  os << "t,M,I_b,event\n";

  // interior resets show up as repeated times in the sample mesh
  std::vector<ImpulseEvent> events;
  const auto& ss = orbit.orbit_samples;
  for (std::size_t i = 0; i + 1 < ss.size(); ++i) {
    if (ss[i].t == ss[i + 1].t)
      events.push_back({ss[i].t, ss[i].s, ss[i + 1].s, static_cast<int>(events.size() + 1), false});
  }
  // wrap-around reset closing the cycle
  const State pre = ss.back().s;
  const State post{(1.0 - policy.p) * pre.M, (1.0 - policy.q) * policy.H_b};
  events.push_back({orbit.period, pre, post, static_cast<int>(events.size() + 1), false});

  TrajectorySegment mesh;
  mesh.t_start = ss.front().t;
  mesh.t_end = ss.back().t;
  mesh.samples = ss;

  std::size_t ei = 0;
  for (int k = 0; k < rows; ++k) {
    const double t = orbit.period * static_cast<double>(k) / rows;
    while (ei < events.size() && events[ei].t < t) event_rows(os, events[ei++]);
    if (ei < events.size() && events[ei].t == t) {
      event_rows(os, events[ei++]);
      continue;
    }
    grid_row(os, Sample{t, state_at(mesh, params, t)});
  }
  while (ei < events.size()) event_rows(os, events[ei++]);
}

}  // namespace wnv
