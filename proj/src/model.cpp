#include "scissorkin/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sck {

namespace {
constexpr double kPi = std::numbers::pi;
}

void DesignParams::validate() const {
  if (!(std::isfinite(D) && std::isfinite(H) && std::isfinite(theta1) && std::isfinite(theta2)))
    throw std::invalid_argument("design: non-finite parameter");
  if (D <= 0) throw std::invalid_argument("design: aperture diameter must be positive");
  if (N < 3) throw std::invalid_argument("design: need at least 3 units");
  if (H <= 0) throw std::invalid_argument("design: unit height must be positive");
  if (!(0 < theta2 && theta2 < theta1 && theta1 < kPi))
    throw std::invalid_argument("design: need 0 < stowed angle < deployed angle < pi");
  if (std::abs(alpha - 2 * kPi / N) > 1e-12)
    throw std::invalid_argument("design: ring step must equal 2*pi/N");
}

double default_height(double D, int N) {
  if (N < 3) throw std::domain_error("default_height: need at least 3 units");
  if (std::abs(D - 25.0) < 1e-9) {
    if (N == 12) return 5.09;
    if (N == 18) return 3.436;
    if (N == 24) return 2.581;
  }
  // keep the baseline height-to-chord proportion
  return stretched_length(D, N) * (5.09 / stretched_length(25.0, 12));
}

DesignParams make_design(double D, int N, double H, double theta1, double theta2) {
  // validate the direct arguments before deriving the height from them, so
  // bad input always surfaces as invalid_argument from this entry point
  if (!std::isfinite(D) || D <= 0)
    throw std::invalid_argument("design: aperture diameter must be positive");
  if (N < 3) throw std::invalid_argument("design: need at least 3 units");
  DesignParams p;
  p.D = D;
  p.N = N;
  p.H = (H < 0) ? default_height(D, N) : H;
  p.theta1 = theta1;
  p.theta2 = theta2;
  p.alpha = 2 * kPi / N;
  p.validate();
  return p;
}

double stretched_length(double D, int N) {
  if (N < 3) throw std::domain_error("stretched_length: need at least 3 units");
  if (D <= 0) throw std::domain_error("stretched_length: diameter must be positive");
  return D * std::sin(kPi / N);
}

LinkSet link_lengths(double H, double theta1) {
  if (!(H > 0) || !std::isfinite(H)) throw std::domain_error("link_lengths: height must be positive");
  if (theta1 < deg2rad(1.0) || theta1 > deg2rad(179.0))
    throw std::domain_error("link_lengths: deployed angle out of workable range");
  LinkSet ls;
  const double l1 = H / std::cos(theta1 / 2);
  const double l3 = (H / 2) * std::tan(theta1 / 2);
  ls.len = {l1, l1, l3, l3, l3, l3, l1 / 2, l1 / 2, l1 / 2, l1 / 2,
            l1 / 4, l1 / 4, l1 / 4, l1 / 4};
  return ls;
}

double chord_width(double L, double theta) {
  return L * std::sqrt(std::max(0.0, 2.0 * (1.0 + std::cos(theta))));
}

double solve_angle_from_width(double L, double W) {
  if (!(L > 0)) throw std::domain_error("solve_angle_from_width: L must be positive");
  if (W < 0 || W > 2 * L)
    throw std::domain_error("solve_angle_from_width: width outside [0, 2L]");
  return 2.0 * std::acos(W / (2.0 * L));
}

int MechanismModel::node_index(const std::string& id) const {
  auto it = std::find(node_ids.begin(), node_ids.end(), id);
  return it == node_ids.end() ? -1 : static_cast<int>(it - node_ids.begin());
}

int MechanismModel::joint_index(const std::string& id) const {
  for (size_t k = 0; k < joints.size(); ++k)
    if (joints[k].id == id) return static_cast<int>(k);
  return -1;
}

namespace {

// Planar node coordinates of the unit at opening theta, before anchoring:
// (x, z) with the central cell's bottom corners on z = 0 and the cell
// symmetric about x = 0. h is the central rod half-length.
struct UnitFrame {
  double h, s, c, g;
};

UnitFrame unit_frame(const DesignParams& p, double theta) {
  if (!(theta > 0 && theta < kPi))
    throw std::domain_error("node_positions: theta outside (0, pi)");
  const LinkSet ls = link_lengths(p.H, p.theta1);
  UnitFrame f;
  f.h = ls.l(1) / 2;
  f.s = std::sin(theta / 2);
  f.c = std::cos(theta / 2);
  const double reach = ls.l(3) * ls.l(3) - (f.h * f.s / 2) * (f.h * f.s / 2);
  if (reach <= 0)
    throw std::domain_error("node_positions: closing frame cannot reach at this theta");
  f.g = std::sqrt(reach);
  return f;
}

// (x, z) pairs in build_unit's node order; z measured from the bottom corners.
std::array<std::pair<double, double>, 25> unit_planar(const UnitFrame& f) {
  const double h = f.h, s = f.s, c = f.c, g = f.g;
  return {{
      {0, 0.5 * h * c + g},          // base
      {0, 1.5 * h * c - g},          // elbow_top
      {0, h * c},                    // mid
      {-h * s, 0}, {h * s, 0},       // bot_l, bot_r
      {-h * s, 2 * h * c}, {h * s, 2 * h * c},  // top_l, top_r
      {0.5 * h * s, 1.5 * h * c},    // side_in_top_r
      {0.5 * h * s, 0.5 * h * c},    // side_in_bot_r
      {-0.5 * h * s, 1.5 * h * c},   // side_in_top_l
      {-0.5 * h * s, 0.5 * h * c},   // side_in_bot_l
      {h * s, h * c}, {-h * s, h * c},          // side_pivot_r, side_pivot_l
      {1.5 * h * s, 1.5 * h * c},    // side_out_top_r
      {1.5 * h * s, 0.5 * h * c},    // side_out_bot_r
      {-1.5 * h * s, 1.5 * h * c},   // side_out_top_l
      {-1.5 * h * s, 0.5 * h * c},   // side_out_bot_l
      {0.25 * h * s, 0.75 * h * c},  // brace_lo_in_r
      {0.75 * h * s, 1.25 * h * c},  // brace_hi_out_r
      {0.25 * h * s, 1.25 * h * c},  // brace_hi_in_r
      {0.75 * h * s, 0.75 * h * c},  // brace_lo_out_r
      {-0.25 * h * s, 0.75 * h * c},  // brace_lo_in_l
      {-0.75 * h * s, 1.25 * h * c},  // brace_hi_out_l
      {-0.25 * h * s, 1.25 * h * c},  // brace_hi_in_l
      {-0.75 * h * s, 0.75 * h * c},  // brace_lo_out_l
  }};
}

}  // namespace

MechanismModel build_unit(const DesignParams& p) {
  p.validate();
  const LinkSet ls = link_lengths(p.H, p.theta1);

  MechanismModel m;
  m.node_ids = {
      "base", "elbow_top", "mid", "bot_l", "bot_r", "top_l", "top_r",
      "side_in_top_r", "side_in_bot_r", "side_in_top_l", "side_in_bot_l",
      "side_pivot_r", "side_pivot_l",
      "side_out_top_r", "side_out_bot_r", "side_out_top_l", "side_out_bot_l",
      "brace_lo_in_r", "brace_hi_out_r", "brace_hi_in_r", "brace_lo_out_r",
      "brace_lo_in_l", "brace_hi_out_l", "brace_hi_in_l", "brace_lo_out_l"};

  auto L = [&](int i) { return ls.l(i); };
  m.links = {
      {"L1", 3, 6, L(1)},    // central rods, pivoted at mid
      {"L2", 4, 5, L(2)},
      {"L3", 9, 1, L(3)},    // top closing frame: two rods meeting at elbow_top
      {"L4", 1, 7, L(4)},
      {"L5", 10, 0, L(5)},   // bottom closing frame: two rods meeting at base
      {"L6", 0, 8, L(6)},
      {"L7", 8, 13, L(7)},   // right side cell
      {"L8", 7, 14, L(8)},
      {"L9", 10, 15, L(9)},  // left side cell
      {"L10", 9, 16, L(10)},
      {"L11", 17, 18, L(11)},  // quarter-rod braces
      {"L12", 19, 20, L(12)},
      {"L13", 21, 22, L(13)},
      {"L14", 23, 24, L(14)}};

  // Bodies by index: 0..13 == L1..L14. Rate of each hinge is body_b relative
  // to body_a, so the central pivot (L2, L1) opens at +d(theta)/dt.
  m.joints = {
      {"central_pivot", 1, 0, 2},
      {"side_pivot_r", 6, 7, 11},
      {"side_pivot_l", 8, 9, 12},
      {"corner_top_r", 0, 7, 7},
      {"corner_bot_r", 1, 6, 8},
      {"corner_top_l", 1, 9, 9},
      {"corner_bot_l", 0, 8, 10},
      {"brace_lo_in_r", 1, 10, 17},
      {"brace_hi_out_r", 7, 10, 18},
      {"brace_hi_in_r", 0, 11, 19},
      {"brace_lo_out_r", 6, 11, 20},
      {"brace_lo_in_l", 0, 12, 21},
      {"brace_hi_out_l", 9, 12, 22},
      {"brace_hi_in_l", 1, 13, 23},
      {"brace_lo_out_l", 8, 13, 24},
      {"anchor_top_l", 1, 2, 9},
      {"elbow_top", 2, 3, 1},
      {"anchor_top_r", 0, 3, 7},
      {"anchor_bot_l", 0, 4, 10},
      {"elbow_base", 4, 5, 0},
      {"anchor_bot_r", 1, 5, 8}};

  m.node_host = {-1, 3, 0, 0, 1, 1, 0, 0, 1, 1, 0, 6, 8,
                 6, 7, 8, 9, 10, 10, 11, 11, 12, 12, 13, 13};
  m.ground_node = 0;
  m.drive_joint = 0;
  m.spin_pair_a = 0;
  m.spin_pair_b = 1;
  m.interface_pairs = {{15, 13}, {16, 14}};
  m.parametric = true;
  m.design = p;
  m.rest = node_positions(m, p.theta1);
  return m;
}

std::vector<Vec3> node_positions(const MechanismModel& m, double theta) {
  if (!m.parametric) return m.rest;  // fixed geometry ignores theta
  if (!(theta > 0 && theta < kPi))
    throw std::domain_error("node_positions: theta outside (0, pi)");

  const UnitFrame f = unit_frame(m.design, theta);
  const auto planar = unit_planar(f);
  std::vector<Vec3> out(planar.size());
  const double x0 = planar[0].first, z0 = planar[0].second;  // anchor the ground node
  for (size_t i = 0; i < planar.size(); ++i)
    out[i] = Vec3(planar[i].first - x0, 0.0, planar[i].second - z0);
  return out;
}

double unit_width(const MechanismModel& m, double theta) {
  const auto pos = node_positions(m, theta);
  double lo = pos[0].x(), hi = pos[0].x();
  for (const auto& p : pos) {
    lo = std::min(lo, p.x());
    hi = std::max(hi, p.x());
  }
  return hi - lo;
}

double unit_height(const MechanismModel& m, double theta) {
  const auto pos = node_positions(m, theta);
  double lo = pos[0].z(), hi = pos[0].z();
  for (const auto& p : pos) {
    lo = std::min(lo, p.z());
    hi = std::max(hi, p.z());
  }
  return hi - lo;
}

RingRadius ring_radius(const MechanismModel& m, double theta, double alpha) {
  if (!m.parametric)
    throw std::domain_error("ring_radius: model has no parametric geometry");
  if (alpha <= 0) alpha = m.design.alpha;
  const UnitFrame f = unit_frame(m.design, theta);
  const double cot = 1.0 / std::tan(alpha / 2);
  RingRadius r;
  r.a = 1.5 * f.h * f.s * cot;        // (width/2) * cot(alpha/2)
  r.da = 0.75 * f.h * f.c * cot;
  r.dda = -0.375 * f.h * f.s * cot;
  return r;
}

MechanismModel make_four_bar() {
  MechanismModel m;
  m.node_ids = {"a", "b", "c", "d"};
  m.rest = {Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(2.5, 0, 1.5), Vec3(0.5, 0, 2)};
  auto len = [&](int i, int j) { return (m.rest[i] - m.rest[j]).norm(); };
  m.links = {{"L1", 0, 1, len(0, 1)},
             {"L2", 1, 2, len(1, 2)},
             {"L3", 2, 3, len(2, 3)},
             {"L4", 3, 0, len(3, 0)}};
  m.joints = {{"pin_a", 3, 0, 0}, {"pin_b", 0, 1, 1}, {"pin_c", 1, 2, 2}, {"pin_d", 2, 3, 3}};
  m.node_host = {0, 1, 2, 3};
  m.ground_node = 0;
  m.drive_joint = 0;
  return m;
}

MechanismModel make_triangle() {
  MechanismModel m;
  m.node_ids = {"a", "b", "c"};
  m.rest = {Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(1, 0, 1.5)};
  auto len = [&](int i, int j) { return (m.rest[i] - m.rest[j]).norm(); };
  m.links = {{"L1", 0, 1, len(0, 1)}, {"L2", 1, 2, len(1, 2)}, {"L3", 2, 0, len(2, 0)}};
  m.joints = {{"pin_a", 2, 0, 0}, {"pin_b", 0, 1, 1}, {"pin_c", 1, 2, 2}};
  m.node_host = {0, 1, 2};
  m.ground_node = 0;
  m.drive_joint = 0;
  return m;
}

std::optional<ReferenceFigures> reference_figures(const DesignParams& p) {
  const bool baseline = std::abs(p.D - 25.0) < 1e-9 &&
                        std::abs(p.theta1 - deg2rad(80.0)) < 1e-9 &&
                        std::abs(p.theta2 - deg2rad(12.54)) < 1e-9;
  if (!baseline) return std::nullopt;
  switch (p.N) {
    case 12:
      return ReferenceFigures{6.470, 5.09, 11.010, 25.0, 3.246, 2400.584, 86.979, 7.702, 0.465, 27.6};
    case 18:
      return ReferenceFigures{4.34, 3.436, 7.386, 25.0, 2.176, 724.61, 26.211, 11.5, 0.465, 27.6};
    case 24:
      return ReferenceFigures{3.26, 2.581, 5.548, 25.0, 1.634, 307.109, 11.114, 15.3, 0.465, 27.6};
    default:
      return std::nullopt;
  }
}

DesignReport design_report(const DesignParams& p) {
  const MechanismModel m = build_unit(p);
  DesignReport r;
  r.links = link_lengths(p.H, p.theta1);
  r.stretched_len = stretched_length(p.D, p.N);

  auto envelope = [&](double theta, double& height, double& diameter) {
    const auto pos = node_positions(m, theta);
    double zlo = pos[0].z(), zhi = pos[0].z();
    for (const auto& q : pos) {
      zlo = std::min(zlo, q.z());
      zhi = std::max(zhi, q.z());
    }
    height = zhi - zlo;
    const double a = ring_radius(m, theta).a;
    double rmax = 0;
    for (const auto& q : pos) rmax = std::max(rmax, std::hypot(a, q.x()));
    diameter = 2 * rmax;
  };
  envelope(p.theta1, r.deployed_height, r.deployed_diameter);
  envelope(p.theta2, r.stowed_height, r.stowed_diameter);

  auto cyl = [](double d, double h) { return kPi * (d / 2) * (d / 2) * h; };
  r.deployed_volume = cyl(r.deployed_diameter, r.deployed_height);
  r.stowed_volume = cyl(r.stowed_diameter, r.stowed_height);
  r.ratio_diameter = r.deployed_diameter / r.stowed_diameter;
  r.ratio_height = r.deployed_height / r.stowed_height;
  r.ratio_volume = r.deployed_volume / r.stowed_volume;
  return r;
}

}  // namespace sck
