// Parametric design of the triple-scissor deployable ring unit, a generic
// mechanism description (rigid links joined by revolute hinges), and node
// coordinates as a function of the scissor opening angle.

#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scissorkin/screw.hpp"

namespace sck {

constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

struct DesignParams {
  double D = 25.0;                    // aperture diameter, m
  int N = 12;                         // units around the ring
  double H = 5.09;                    // deployed unit height, m
  double theta1 = deg2rad(80.0);      // deployed opening angle
  double theta2 = deg2rad(12.54);     // stowed opening angle
  double alpha = 2.0 * std::numbers::pi / 12.0;  // ring step, 2*pi/N

  void validate() const;  // throws std::invalid_argument
};

// Deployed unit height used when the caller does not give one: catalog values
// for the 25 m baseline family at N = 12/18/24, otherwise scaled from the
// unit's chord so the height-to-width proportion matches the baseline.
double default_height(double D, int N);

// Builds a validated parameter set; H < 0 means "use default_height".
DesignParams make_design(double D, int N, double H = -1.0,
                         double theta1 = deg2rad(80.0),
                         double theta2 = deg2rad(12.54));

struct LinkSet {
  std::array<double, 14> len{};        // lengths of L1..L14, meters
  double l(int i) const { return len.at(static_cast<size_t>(i) - 1); }  // 1-based
};

// Chord of a regular N-gon inscribed in the aperture circle: D*sin(pi/N).
double stretched_length(double D, int N);

// Link lengths of the unit: the central rods close a cell of height H at
// opening theta1, the horizontal-frame rods subtend half the cell, and each
// nested scissor stage halves the rod length.
LinkSet link_lengths(double H, double theta1);

// Endpoint separation of a two-rod cell with rod half-length L at opening
// theta: L*sqrt(2*(1+cos(theta))) = 2*L*cos(theta/2).
double chord_width(double L, double theta);

// Inverse of chord_width: theta = 2*acos(W / (2*L)). Requires 0 <= W <= 2L.
double solve_angle_from_width(double L, double W);

struct LinkDef {
  std::string id;
  int node_a, node_b;  // endpoint node indices
  double length;       // nominal, m
};

// Revolute hinge between two rigid bodies located at a node. The joint's
// scalar rate is the angular rate of body_b relative to body_a about +axis.
struct JointDef {
  std::string id;
  int body_a, body_b;
  int node;
  Vec3 axis = Vec3(0, 1, 0);
};

// One rigid body per link (body index == link index). Node coordinates come
// either from the closed-form scissor family (parametric == true, driven by
// theta) or from fixed rest coordinates.
struct MechanismModel {
  std::vector<std::string> node_ids;
  std::vector<LinkDef> links;
  std::vector<JointDef> joints;
  std::vector<int> node_host;   // body whose motion each node reports; -1 = ground
  int ground_node = -1;
  int drive_joint = -1;

  // Frame convention: the ground node is pinned; if spin_pair is set, the
  // frame additionally spins so those two bodies' angular rates about the
  // common hinge axis cancel (the symmetric frame of a scissor cell).
  // Otherwise the first body hosting the ground node is held fixed.
  int spin_pair_a = -1, spin_pair_b = -1;

  // Node pairs (left, right) that coincide with the neighbouring units'
  // (right, left) edges when the unit is placed on the ring.
  std::vector<std::pair<int, int>> interface_pairs;

  bool parametric = false;
  DesignParams design{};        // meaningful when parametric
  std::vector<Vec3> rest;       // rest coordinates (parametric: at theta1)

  int node_index(const std::string& id) const;   // -1 when absent
  int joint_index(const std::string& id) const;
  int body_count() const { return static_cast<int>(links.size()); }
};

// The reference deployable unit: one central scissor cell of two full rods,
// a half-scale scissor cell nested on each side, quarter-scale support rods
// bracing each side cell, and two-rod horizontal frames closing the top and
// bottom. 25 nodes, 14 bodies, 21 hinges, all axes +Y, mobility 1.
MechanismModel build_unit(const DesignParams& p);

// Node coordinates at opening angle theta, in the unit frame: ground node at
// the origin, X across the unit, Z up, Y = 0. Every link's endpoint distance
// equals its nominal length to machine precision. Throws std::domain_error
// when theta lies outside (0, pi) or the closing frame cannot reach.
std::vector<Vec3> node_positions(const MechanismModel& m, double theta);

double unit_width(const MechanismModel& m, double theta);   // horizontal extent
double unit_height(const MechanismModel& m, double theta);  // vertical extent

// Distance from the ring axis to the unit's chord plane, with theta
// derivatives; a(theta) = (width/2) * cot(alpha/2). Placing unit j at
// rotation j*alpha about Z with this offset makes neighbouring units share
// their edge nodes at every theta. alpha <= 0 means "use the design's step".
struct RingRadius {
  double a, da, dda;
};
RingRadius ring_radius(const MechanismModel& m, double theta, double alpha = -1.0);

// Test fixtures: a generic planar four-bar (one loop, mobility 1) and a
// pinned rigid triangle (one loop, mobility 0). Both use fixed rest
// coordinates and Y hinges.
MechanismModel make_four_bar();
MechanismModel make_triangle();

struct DesignReport {
  LinkSet links;
  double stretched_len = 0;
  double deployed_height = 0, stowed_height = 0;
  double deployed_diameter = 0, stowed_diameter = 0;
  double deployed_volume = 0, stowed_volume = 0;   // circumscribing cylinders
  double ratio_diameter = 0;   // deployed / stowed
  double ratio_height = 0;
  double ratio_volume = 0;
};

// Reference figures for the 25 m baseline family, reported next to computed
// values when the requested design matches a catalog row.
struct ReferenceFigures {
  double stretched_len, deployed_height, stowed_height;
  double deployed_diameter, stowed_diameter;
  double deployed_volume, stowed_volume;
  double ratio_diameter, ratio_height, ratio_volume;
};
std::optional<ReferenceFigures> reference_figures(const DesignParams& p);

/// Envelope report: heights and diameters evaluated from the implemented
// geometry at theta1/theta2, volumes as circumscribing cylinders, and
// storage ratios as exact quotients of the reported values.
DesignReport design_report(const DesignParams& p);

}  // namespace sck
