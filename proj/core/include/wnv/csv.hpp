#pragma once

#include <iosfwd>

#include "wnv/integrator.hpp"
#include "wnv/orbit.hpp"

namespace wnv {

/// Trajectory CSV, header `t,M,I_b,event`. Rows are the uniform resample grid
/// at spacing resample_dt plus two rows per impulse (pre then post at equal
/// t); grid rows colliding with an event time are dropped. Numbers carry 17
/// significant digits so repeated runs are byte-identical.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, double resample_dt);

/// Same layout with an S_b column after M: `t,M,S_b,I_b,event`.
void write_trajectory_csv(std::ostream& os, const Trajectory3D& traj, double resample_dt);

/// One cycle of a periodic orbit in the trajectory schema, closed by the
/// wrap-around impulse pair.
void write_orbit_csv(std::ostream& os, const PeriodicOrbit& orbit, const Parameters& params,
                     const ControlPolicy& policy, int rows = 400);

}  // namespace wnv
