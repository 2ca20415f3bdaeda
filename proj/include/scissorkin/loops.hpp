// Cycle structure of the joint graph, screw constraint matrix assembly, and
// mobility as the null-space dimension of that matrix.

#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "scissorkin/model.hpp"
#include "scissorkin/screw.hpp"

namespace sck {

// Fundamental cycles of the body/joint graph. Each loop is an ordered
// traversal of (joint index, direction): +1 when the loop crosses the joint
// from body_a to body_b, -1 the other way. Following the entries in order
// returns to the starting body.
struct LoopBasis {
  std::vector<std::vector<std::pair<int, int>>> loops;
};

// Spanning-tree + chord cycle basis; deterministic for a fixed joint order.
// Throws std::runtime_error naming the components when the graph is
// disconnected.
LoopBasis loop_basis(const MechanismModel& m);

// Unit screw of every joint at opening angle theta.
std::vector<Twist> joint_screws(const MechanismModel& m, double theta);

// Stacked loop constraints: 6 rows per loop, one column per joint; column j
// of a loop's block is (direction * S_j). A rate vector w is admissible iff
// C w = 0.
Eigen::MatrixXd assemble_constraints(const MechanismModel& m, double theta);

// Null-space dimension with a relative singular-value cutoff. A matrix with
// no rows constrains nothing: nullity = column count.
int matrix_nullity(const Eigen::MatrixXd& C, double rtol = 1e-10);

// Mobility of the mechanism at theta.
int dof(const MechanismModel& m, double theta);

// Independent mobility check: Jacobian of the position-level loop-closure
// residuals (finite rotations composed around each cycle) by central finite
// differences over all joint angles, then its nullity. Agrees with dof() on
// every shipped model.
int numeric_dof_oracle(const MechanismModel& m, double theta);

struct DofReport {
  int dof = 0;
  int loop_count = 0;
  int rows = 0, cols = 0;
  double sigma_max = 0;
  double sigma_min_nonzero = 0;  // smallest singular value above the cutoff
};
DofReport dof_report(const MechanismModel& m, double theta);

}  // namespace sck
