#include "scissorkin/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scissorkin/loops.hpp"

namespace sck {

double fd_velocity_error(const MechanismModel& m, double theta, double drive_rate) {
  const double h = 1e-5;  // seconds
  const auto pp = node_positions(m, theta + drive_rate * h);
  const auto pm = node_positions(m, theta - drive_rate * h);
  const KinematicState st = kinematic_state(m, theta, drive_rate, 0.0);
  double worst = 0;
  for (size_t n = 0; n < pp.size(); ++n) {
    const Vec3 vfd = (pp[n] - pm[n]) / (2 * h);
    const double err = (st.bodies[n].v - vfd).norm() / (vfd.norm() + 1e-9);
    worst = std::max(worst, err);
  }
  return worst;
}

double fd_acceleration_error(const MechanismModel& m, double theta, double drive_rate,
                             double drive_accel) {
  const double h = 1e-4;  // seconds
  const double thp = theta + drive_rate * h + 0.5 * drive_accel * h * h;
  const double thm = theta - drive_rate * h + 0.5 * drive_accel * h * h;
  const auto pp = node_positions(m, thp);
  const auto p0 = node_positions(m, theta);
  const auto pm = node_positions(m, thm);
  const KinematicState st = kinematic_state(m, theta, drive_rate, drive_accel);
  double scale = 0, worst = 0;
  std::vector<Vec3> afd(pp.size());
  for (size_t n = 0; n < pp.size(); ++n) {
    afd[n] = (pp[n] - 2 * p0[n] + pm[n]) / (h * h);
    scale = std::max(scale, afd[n].norm());
  }
  for (size_t n = 0; n < pp.size(); ++n)
    worst = std::max(worst, (st.bodies[n].a - afd[n]).norm());
  return worst / std::max(scale, 1e-12);
}

double loop_closure_error(const MechanismModel& m, const TrajectoryLog& log) {
  double worst = 0;
  for (const auto& s : log.samples)
    for (const auto& l : m.links) {
      const double d = (s.nodes[l.node_a].pos - s.nodes[l.node_b].pos).norm();
      worst = std::max(worst, std::abs(d - l.length));
    }
  return worst;
}

double log_velocity_fd_error(const TrajectoryLog& log, const DriveProfile& profile) {
  if (log.samples.size() < 3) throw std::invalid_argument("log too short for differencing");
  // normalize by the fastest motion anywhere in the log: the differencing
  // truncation error scales with the jerk, not with the local speed, so a
  // per-sample scale would blow up wherever the drive ramps through zero
  double scale = 0;
  for (const auto& s : log.samples)
    for (const auto& nk : s.nodes) scale = std::max(scale, nk.v.norm());
  double worst = 0;
  for (size_t k = 1; k + 1 < log.samples.size(); ++k) {
    const auto& prev = log.samples[k - 1];
    const auto& next = log.samples[k + 1];
    if (profile.cycle && prev.t < profile.t_deploy + 1e-12 && next.t > profile.t_deploy - 1e-12)
      continue;  // stencil straddles the turnaround kink
    const double span = next.t - prev.t;
    for (size_t n = 0; n < log.node_ids.size(); ++n) {
      const Vec3 vfd = (next.nodes[n].pos - prev.nodes[n].pos) / span;
      worst = std::max(worst, (log.samples[k].nodes[n].v - vfd).norm() / (scale + 1e-12));
    }
  }
  return worst;
}

double equivariance_error(const TrajectoryLog& ring_log, int N, double alpha) {
  const auto units = split_units(ring_log, N);
  double worst = 0;
  for (int j = 1; j < N; ++j) {
    const Mat3 Rt = ring_rotation(j, alpha).transpose();
    for (size_t s = 0; s < units[0].samples.size(); ++s)
      for (size_t n = 0; n < units[0].node_ids.size(); ++n) {
        const NodeKin& x = units[0].samples[s].nodes[n];
        const NodeKin& y = units[j].samples[s].nodes[n];
        worst = std::max({worst, (Rt * y.pos - x.pos).norm(), (Rt * y.v - x.v).norm(),
                          (Rt * y.omega - x.omega).norm(), (Rt * y.a - x.a).norm(),
                          (Rt * y.eps - x.eps).norm()});
      }
  }
  return worst;
}

ValidationReport validate_model(const MechanismModel& m) {
  if (!m.parametric)
    throw std::invalid_argument("validate_model: needs a theta-parameterized model");
  ValidationReport r;
  const double lo = m.design.theta2, hi = m.design.theta1;

  r.dof_value = 1;
  r.dof_matches_oracle = true;
  for (int i = 0; i < 25; ++i) {
    const double th = lo + (hi - lo) * i / 24.0;
    const int d = dof(m, th);
    if (i == 0) r.dof_value = d;
    if (d != r.dof_value || numeric_dof_oracle(m, th) != d) r.dof_matches_oracle = false;
    for (double rate : {0.3, 0.7, 1.2}) {
      r.velocity_fd_max = std::max(r.velocity_fd_max, fd_velocity_error(m, th, rate));
      r.acceleration_fd_max =
          std::max(r.acceleration_fd_max, fd_acceleration_error(m, th, rate, 0.4 * rate));
    }
  }

  DriveProfile profile;
  profile.theta_start = m.design.theta2;
  profile.theta_end = m.design.theta1;
  profile.t_deploy = 53.0;
  const TrajectoryLog log = simulate(m, profile, 0.5);
  r.loop_closure_max = loop_closure_error(m, log);
  r.log_velocity_fd_max = log_velocity_fd_error(log, profile);

  const TrajectoryLog ring = ring_assembly(log, m, 4, 2 * std::numbers::pi / 4);
  r.equivariance_max = equivariance_error(ring, 4, 2 * std::numbers::pi / 4);
  return r;
}

}  // namespace sck
