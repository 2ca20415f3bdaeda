// Joint rates from the constraint null space, node velocity propagation over
// a spanning tree, joint accelerations with Lie-bracket convective terms, and
// node acceleration propagation. All states are evaluated at a configuration;
// positions always come from the closed-form geometry, never from integrating
// rates.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "scissorkin/loops.hpp"
#include "scissorkin/model.hpp"
#include "scissorkin/screw.hpp"

namespace sck {

struct MobilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DriveSelectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JointRates {
  std::vector<double> w;  // rad/s, joint order
};
struct JointAccels {
  std::vector<double> eps;  // rad/s^2, joint order
};

// Kinematic state reported at one node: the hosting body's twist and spatial
// acceleration plus the extracted point quantities. Ground-hosted nodes carry
// zeros throughout.
struct BodyState {
  int node = -1;
  Vec3 r = Vec3::Zero();       // node position, m
  Twist V;                     // host body twist
  Vec3 omega = Vec3::Zero();   // host body angular velocity, rad/s
  Vec3 v = Vec3::Zero();       // point velocity, m/s
  SpatialAccel A;              // host body spatial acceleration
  Vec3 eps = Vec3::Zero();     // host body angular acceleration, rad/s^2
  Vec3 a = Vec3::Zero();       // point acceleration, m/s^2
};

struct KinematicState {
  double theta = 0, drive_rate = 0, drive_accel = 0;
  JointRates rates;
  JointAccels accels;
  std::vector<BodyState> bodies;  // one per node, model order
};

// Unique admissible rate vector scaled so the drive joint runs at drive_rate.
// Throws MobilityError when the mobility is not 1, DriveSelectionError when
// the drive joint cannot move the null direction.
JointRates solve_rates(const MechanismModel& m, double theta, double drive_rate);

// Node velocities from rates: accumulate joint screws along a spanning tree
// from the body at the ground node, then pin the frame (ground node at rest;
// with a spin pair set, the pair's angular rates balance). Throws
// ConsistencyError when the rates violate the loop constraints.
std::vector<BodyState> propagate_velocity(const MechanismModel& m, double theta,
                                          const JointRates& rates);

// Joint accelerations: differentiate the loop constraints in time. The screw
// of a joint moves with its adjacent bodies, so each loop contributes
// sum(direction * eps_k * S_k) = -sum(direction * w_k * [V_host(k), S_k]);
// solve with the drive joint's acceleration fixed to drive_accel.
JointAccels solve_accels(const MechanismModel& m, double theta, const JointRates& rates,
                         double drive_accel);

// Fills the acceleration fields of states produced by propagate_velocity.
void propagate_accel(const MechanismModel& m, double theta, const JointRates& rates,
                     const JointAccels& accels, std::vector<BodyState>& states);

// One-call state evaluation (single constraint factorization internally).
KinematicState kinematic_state(const MechanismModel& m, double theta, double drive_rate,
                               double drive_accel = 0.0);

// State of ring unit j: every vector block rotated by ring_rotation(j, alpha).
KinematicState to_global(const KinematicState& state, int j, double alpha);

// Max deviation across paired nodes over angular velocity, point velocity,
// angular acceleration, and point acceleration. With no pairs given, nodes
// are paired by index (states from the same model).
double symmetry_check(const KinematicState& a, const KinematicState& b,
                      const std::vector<std::pair<int, int>>& pairs = {});

}  // namespace sck
