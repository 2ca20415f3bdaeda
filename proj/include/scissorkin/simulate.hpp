// Time-domain deployment: drive profiles theta(t), trajectory logging over
// the closed-form geometry, per-node statistics, unit-to-unit comparison, and
// ring assembly of the logged unit motion.

#pragma once

#include <string>
#include <vector>

#include "scissorkin/kinematics.hpp"
#include "scissorkin/model.hpp"

namespace sck {

enum class DriveKind { linear, smoothstep };

// Opening-angle schedule. Deploy leg runs theta_start -> theta_end over
// t_deploy; with cycle set, a reversed leg returns to theta_start by t_cycle.
// The sample at exactly t_deploy belongs to the deploy leg (right-continuous
// rates at the turnaround).
struct DriveProfile {
  DriveKind kind = DriveKind::linear;
  double theta_start = deg2rad(12.54);
  double theta_end = deg2rad(80.0);
  double t_deploy = 53.0;
  bool cycle = false;
  double t_cycle = 102.0;

  double total_time() const { return cycle ? t_cycle : t_deploy; }
  void validate() const;  // throws std::invalid_argument
};

struct ThetaSample {
  double theta, theta_dot, theta_ddot;
};

// Schedule evaluation; throws std::domain_error outside [0, total_time].
ThetaSample theta_of_t(const DriveProfile& profile, double t);

struct NodeKin {
  Vec3 pos, v, omega, a, eps;
};

struct TrajectorySample {
  double t, theta, drive_rate, drive_accel;
  std::vector<NodeKin> nodes;
};

struct TrajectoryLog {
  std::vector<std::string> node_ids;
  std::vector<TrajectorySample> samples;
};

// Samples the profile at t = k*dt (plus the exact end time when the grid
// misses it) and evaluates the full kinematic state at each sample. Node
// positions come from the closed-form geometry, so there is no integration
// drift to correct.
TrajectoryLog simulate(const MechanismModel& m, const DriveProfile& profile, double dt);

struct StatRow {
  double max = 0, min = 0, mean = 0;
};

// Magnitude statistics per node; linear quantities in mm/s and mm/s^2,
// angular in rad/s and rad/s^2.
struct NodeStatsEntry {
  std::string node;
  StatRow v_mm_s, omega_rad_s, a_mm_s2, eps_rad_s2;
};
using NodeStats = std::vector<NodeStatsEntry>;
NodeStats node_stats(const TrajectoryLog& log);

// Pointwise MSE/RMSE between two logs' magnitude profiles, per quantity.
// Requires matching timestamps and node counts.
struct UnitComparison {
  double mse_v = 0, rmse_v = 0;
  double mse_omega = 0, rmse_omega = 0;
  double mse_a = 0, rmse_a = 0;
  double mse_eps = 0, rmse_eps = 0;
};
UnitComparison compare_units(const TrajectoryLog& a, const TrajectoryLog& b);

// Places N copies of the logged unit around the ring: the unit plane sits at
// radius ring_radius(m, theta) (so neighbouring units share their edge nodes,
// verified each sample), unit j rotated by j*alpha about Z. Duplicated edge
// nodes are dropped from the left side of each unit; ids gain a "u<j>/"
// prefix. N == 1 returns the input unchanged.
TrajectoryLog ring_assembly(const TrajectoryLog& unit_log, const MechanismModel& m, int N,
                            double alpha);

// Splits a ring log back into per-unit logs with the id prefixes removed.
std::vector<TrajectoryLog> split_units(const TrajectoryLog& ring_log, int N);

}  // namespace sck
