// Independent numerical checks: finite-difference oracles for velocities and
// accelerations, link-length closure over a trajectory, post-hoc differencing
// of logged samples, and ring equivariance. These deliberately avoid the
// analytic propagation code paths they validate.

#pragma once

#include "scissorkin/model.hpp"
#include "scissorkin/simulate.hpp"

namespace sck {

// Max per-node relative deviation between analytic node velocities and a
// central finite difference of node_positions along theta(t). Time step
// 1e-5 s.
double fd_velocity_error(const MechanismModel& m, double theta, double drive_rate);

// Max deviation between analytic node accelerations and a second-order
// central difference of node_positions along theta(t), relative to the peak
// nodal acceleration. Time step 1e-4 s.
double fd_acceleration_error(const MechanismModel& m, double theta, double drive_rate,
                             double drive_accel);

// Max absolute deviation of any link length from nominal across a log, m.
double loop_closure_error(const MechanismModel& m, const TrajectoryLog& log);

// Max relative deviation of logged velocities against central differences of
// logged positions. Samples whose difference stencil straddles the profile's
// turnaround (or the log ends) are skipped.
double log_velocity_fd_error(const TrajectoryLog& log, const DriveProfile& profile);

// Max componentwise deviation between each ring unit's logged series and the
// unit-0 series rotated into its place.
double equivariance_error(const TrajectoryLog& ring_log, int N, double alpha);

struct ValidationReport {
  double velocity_fd_max = 0;      // sweep of 25 angles x 3 drive rates
  double acceleration_fd_max = 0;  // same sweep, with a nonzero drive accel
  int dof_value = 0;
  bool dof_matches_oracle = false;  // analytic vs FD mobility at 25 angles
  double loop_closure_max = 0;      // over one deployment log
  double log_velocity_fd_max = 0;
  double equivariance_max = 0;      // 4-unit ring of a short log

  bool pass() const {
    return velocity_fd_max < 1e-6 && acceleration_fd_max < 1e-4 && dof_value == 1 &&
           dof_matches_oracle && loop_closure_max < 1e-9 && log_velocity_fd_max < 1e-5 &&
           equivariance_max < 1e-12;
  }
};

// Full oracle suite for a theta-parameterized model.
ValidationReport validate_model(const MechanismModel& m);

}  // namespace sck
