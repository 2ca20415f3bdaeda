#include "scissorkin/kinematics.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace sck {

namespace {

struct TreeEdge {
  int parent, child, joint, sign;  // sign = +1 when parent -> child crosses a -> b
};

// Spanning tree rooted at the first body incident to the ground node, in BFS
// order (usable as a propagation schedule).
std::vector<TreeEdge> spanning_tree(const MechanismModel& m, int& root) {
  root = -1;
  for (size_t b = 0; b < m.links.size() && root < 0; ++b)
    if (m.links[b].node_a == m.ground_node || m.links[b].node_b == m.ground_node)
      root = static_cast<int>(b);
  if (root < 0) root = 0;

  std::vector<std::vector<std::pair<int, int>>> adj(m.body_count());
  for (size_t k = 0; k < m.joints.size(); ++k) {
    adj[m.joints[k].body_a].push_back({m.joints[k].body_b, static_cast<int>(k)});
    adj[m.joints[k].body_b].push_back({m.joints[k].body_a, static_cast<int>(k)});
  }
  std::vector<TreeEdge> edges;
  std::vector<char> seen(m.body_count(), 0);
  seen[root] = 1;
  std::vector<int> frontier{root};
  for (size_t i = 0; i < frontier.size(); ++i) {
    const int u = frontier[i];
    for (const auto& [v, k] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      edges.push_back({u, v, k, m.joints[k].body_a == u ? +1 : -1});
      frontier.push_back(v);
    }
  }
  return edges;
}

// Shared per-configuration context so the one-call path factorizes once.
struct Ctx {
  std::vector<Vec3> pos;
  std::vector<Twist> S;
  Eigen::MatrixXd C;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  Eigen::VectorXd null_dir;

  Ctx(const MechanismModel& m, double theta) : pos(node_positions(m, theta)) {
    S.reserve(m.joints.size());
    for (const auto& j : m.joints) S.push_back(revolute_screw(j.axis, pos[j.node]));
    const LoopBasis basis = loop_basis(m);
    C = Eigen::MatrixXd::Zero(6 * basis.loops.size(), m.joints.size());
    for (size_t l = 0; l < basis.loops.size(); ++l)
      for (const auto& [k, s] : basis.loops[l]) C.block<6, 1>(6 * l, k) += s * S[k].stacked();
    if (C.rows() > 0) {
      svd.compute(C, Eigen::ComputeThinU | Eigen::ComputeFullV);
      svd.setThreshold(1e-10);
    }
  }

  int nullity() const {
    if (C.rows() == 0) return static_cast<int>(C.cols());
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0) return static_cast<int>(C.cols());
    int n = static_cast<int>(C.cols() - sv.size());
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) <= 1e-10 * sv(0)) ++n;
    return n;
  }

  // unit null vector (requires nullity 1, checked by callers)
  const Eigen::VectorXd& null_direction() {
    if (null_dir.size() == 0) {
      if (C.rows() == 0) {
        // a single unconstrained joint
        null_dir = Eigen::VectorXd::Zero(C.cols());
        null_dir(0) = 1.0;
      } else {
        null_dir = svd.matrixV().col(C.cols() - 1);
      }
    }
    return null_dir;
  }
};

JointRates solve_rates_ctx(const MechanismModel& m, Ctx& ctx, double theta, double drive_rate) {
  if (ctx.nullity() != 1) {
    std::ostringstream msg;
    msg << "mobility is " << ctx.nullity() << " (need 1) at theta=" << theta;
    throw MobilityError(msg.str());
  }
  const Eigen::VectorXd& n = ctx.null_direction();
  if (std::abs(n(m.drive_joint)) <= 1e-8 * n.norm())
    throw DriveSelectionError("drive joint '" + m.joints[m.drive_joint].id +
                              "' has no motion in the mobility direction");
  JointRates r;
  const Eigen::VectorXd w = n * (drive_rate / n(m.drive_joint));
  r.w.assign(w.data(), w.data() + w.size());
  return r;
}

// Final body twists in the unit frame: ground node pinned, spin pair
// balanced when the model declares one.
std::vector<Twist> body_twists_ctx(const MechanismModel& m, const Ctx& ctx,
                                   const JointRates& rates) {
  Eigen::Map<const Eigen::VectorXd> w(rates.w.data(), rates.w.size());
  const double resid = (ctx.C * w).norm();
  if (resid > 1e-8 * (w.norm() + 1.0))
    throw ConsistencyError("joint rates violate the loop constraints (residual " +
                           std::to_string(resid) + ")");

  int root;
  const auto tree = spanning_tree(m, root);
  std::vector<Twist> V(m.body_count());
  for (const auto& e : tree) V[e.child] = V[e.parent] + (e.sign * rates.w[e.joint]) * ctx.S[e.joint];

  if (m.spin_pair_a >= 0 && m.spin_pair_b >= 0) {
    const Vec3 axis = m.joints.empty() ? Vec3(0, 1, 0) : m.joints[0].axis;
    const Twist SO = revolute_screw(axis, ctx.pos[m.ground_node]);
    const double u0 = -(V[m.spin_pair_a].omega.dot(axis) + V[m.spin_pair_b].omega.dot(axis)) / 2;
    for (auto& t : V) t += u0 * SO;
  }
  return V;
}

std::vector<BodyState> make_states(const MechanismModel& m, const Ctx& ctx,
                                   const std::vector<Twist>& V) {
  std::vector<BodyState> out(m.node_ids.size());
  for (size_t n = 0; n < m.node_ids.size(); ++n) {
    BodyState& b = out[n];
    b.node = static_cast<int>(n);
    b.r = ctx.pos[n];
    const int host = m.node_host[n];
    if (host < 0) continue;  // ground: all zeros
    b.V = V[host];
    std::tie(b.omega, b.v) = twist_point_velocity(b.V, b.r);
  }
  return out;
}

JointAccels solve_accels_ctx(const MechanismModel& m, Ctx& ctx, double theta,
                             const JointRates& rates, const std::vector<Twist>& V,
                             double drive_accel) {
  if (ctx.nullity() != 1)
    throw MobilityError("mobility is not 1 at theta=" + std::to_string(theta));

  const LoopBasis basis = loop_basis(m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ctx.C.rows());
  for (size_t l = 0; l < basis.loops.size(); ++l) {
    Twist acc;
    for (const auto& [k, s] : basis.loops[l])
      acc += (s * rates.w[k]) * lie_bracket(V[m.joints[k].body_a], ctx.S[k]);
    rhs.segment<6>(6 * l) = -acc.stacked();
  }

  Eigen::VectorXd eps = ctx.C.rows() > 0 ? Eigen::VectorXd(ctx.svd.solve(rhs))
                                         : Eigen::VectorXd::Zero(ctx.C.cols());
  const Eigen::VectorXd& n = ctx.null_direction();
  if (std::abs(n(m.drive_joint)) <= 1e-8 * n.norm())
    throw DriveSelectionError("drive joint has no motion in the mobility direction");
  eps += (drive_accel - eps(m.drive_joint)) / n(m.drive_joint) * n;

  const double resid = (ctx.C * eps - rhs).norm();
  if (resid > 1e-8 * (rhs.norm() + 1.0))
    throw MobilityError("acceleration constraints are inconsistent (residual " +
                        std::to_string(resid) + ") at theta=" + std::to_string(theta));

  JointAccels out;
  out.eps.assign(eps.data(), eps.data() + eps.size());
  return out;
}

void propagate_accel_ctx(const MechanismModel& m, const Ctx& ctx, const JointRates& rates,
                         const JointAccels& accels, const std::vector<Twist>& V,
                         std::vector<BodyState>& states) {
  int root;
  const auto tree = spanning_tree(m, root);
  std::vector<SpatialAccel> A(m.body_count());
  for (const auto& e : tree) {
    // d/dt of V_child = V_parent + s*w*S: the joint screw rides on the parent
    const Twist dS = lie_bracket(V[e.parent], ctx.S[e.joint]);
    A[e.child] = A[e.parent];
    A[e.child] += (e.sign * accels.eps[e.joint]) * ctx.S[e.joint] + (e.sign * rates.w[e.joint]) * dS;
  }

  if (m.spin_pair_a >= 0 && m.spin_pair_b >= 0) {
    const Vec3 axis = m.joints.empty() ? Vec3(0, 1, 0) : m.joints[0].axis;
    const Twist SO = revolute_screw(axis, ctx.pos[m.ground_node]);
    const double u2 = -(A[m.spin_pair_a].eps.dot(axis) + A[m.spin_pair_b].eps.dot(axis)) / 2;
    for (auto& sa : A) sa += u2 * SO;
  }

  for (auto& b : states) {
    const int host = m.node_host[b.node];
    if (host < 0) continue;
    b.A = A[host];
    std::tie(b.eps, b.a) = spatial_accel_point(b.A, b.omega, b.V.vel, b.r);
  }
}

}  // namespace

JointRates solve_rates(const MechanismModel& m, double theta, double drive_rate) {
  Ctx ctx(m, theta);
  return solve_rates_ctx(m, ctx, theta, drive_rate);
}

std::vector<BodyState> propagate_velocity(const MechanismModel& m, double theta,
                                          const JointRates& rates) {
  Ctx ctx(m, theta);
  return make_states(m, ctx, body_twists_ctx(m, ctx, rates));
}

JointAccels solve_accels(const MechanismModel& m, double theta, const JointRates& rates,
                         double drive_accel) {
  Ctx ctx(m, theta);
  return solve_accels_ctx(m, ctx, theta, rates, body_twists_ctx(m, ctx, rates), drive_accel);
}

void propagate_accel(const MechanismModel& m, double theta, const JointRates& rates,
                     const JointAccels& accels, std::vector<BodyState>& states) {
  Ctx ctx(m, theta);
  propagate_accel_ctx(m, ctx, rates, accels, body_twists_ctx(m, ctx, rates), states);
}

KinematicState kinematic_state(const MechanismModel& m, double theta, double drive_rate,
                               double drive_accel) {
  Ctx ctx(m, theta);
  KinematicState st;
  st.theta = theta;
  st.drive_rate = drive_rate;
  st.drive_accel = drive_accel;
  st.rates = solve_rates_ctx(m, ctx, theta, drive_rate);
  const auto V = body_twists_ctx(m, ctx, st.rates);
  st.bodies = make_states(m, ctx, V);
  st.accels = solve_accels_ctx(m, ctx, theta, st.rates, V, drive_accel);
  propagate_accel_ctx(m, ctx, st.rates, st.accels, V, st.bodies);
  return st;
}

KinematicState to_global(const KinematicState& state, int j, double alpha) {
  const Mat3 R = ring_rotation(j, alpha);
  KinematicState out = state;
  for (auto& b : out.bodies) {
    b.r = R * b.r;
    b.V = rotate_twist(R, b.V);
    b.omega = R * b.omega;
    b.v = R * b.v;
    b.A.eps = R * b.A.eps;
    b.A.lin = R * b.A.lin;
    b.eps = R * b.eps;
    b.a = R * b.a;
  }
  return out;
}

double symmetry_check(const KinematicState& a, const KinematicState& b,
                      const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::pair<int, int>> use = pairs;
  if (use.empty())
    for (size_t n = 0; n < a.bodies.size() && n < b.bodies.size(); ++n)
      use.push_back({static_cast<int>(n), static_cast<int>(n)});
  double worst = 0;
  for (const auto& [na, nb] : use) {
    const BodyState& x = a.bodies.at(na);
    const BodyState& y = b.bodies.at(nb);
    worst = std::max({worst, (x.omega - y.omega).norm(), (x.v - y.v).norm(),
                      (x.eps - y.eps).norm(), (x.a - y.a).norm()});
  }
  return worst;
}

}  // namespace sck
