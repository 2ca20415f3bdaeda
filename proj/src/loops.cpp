#include "scissorkin/loops.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace sck {

namespace {

// adjacency: body -> (neighbour body, joint index)
std::vector<std::vector<std::pair<int, int>>> adjacency(const MechanismModel& m) {
  std::vector<std::vector<std::pair<int, int>>> adj(m.body_count());
  for (size_t k = 0; k < m.joints.size(); ++k) {
    const auto& j = m.joints[k];
    adj[j.body_a].push_back({j.body_b, static_cast<int>(k)});
    adj[j.body_b].push_back({j.body_a, static_cast<int>(k)});
  }
  return adj;
}

}  // namespace

LoopBasis loop_basis(const MechanismModel& m) {
  const int nb = m.body_count();
  const auto adj = adjacency(m);

  std::vector<int> parent_body(nb, -1), parent_joint(nb, -1);
  std::vector<char> seen(nb, 0);
  std::vector<char> in_tree(m.joints.size(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (const auto& [v, k] : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        parent_body[v] = u;
        parent_joint[v] = k;
        in_tree[k] = 1;
        q.push_back(v);
      }
    }
  }

  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    // collect components for the error message
    std::vector<int> comp(nb, -1);
    int nc = 0;
    for (int s = 0; s < nb; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = nc;
      std::deque<int> qq{s};
      while (!qq.empty()) {
        int u = qq.front();
        qq.pop_front();
        for (const auto& [v, k] : adj[u])
          if (comp[v] < 0) {
            comp[v] = nc;
            qq.push_back(v);
          }
      }
      ++nc;
    }
    std::ostringstream msg;
    msg << "joint graph is disconnected:";
    for (int c = 0; c < nc; ++c) {
      msg << " {";
      bool first = true;
      for (int b = 0; b < nb; ++b)
        if (comp[b] == c) {
          if (!first) msg << ",";
          msg << m.links[b].id;
          first = false;
        }
      msg << "}";
    }
    throw std::runtime_error(msg.str());
  }

  // path child -> ... -> ancestor along tree edges, as loop entries
  auto climb = [&](int from, int to, std::vector<std::pair<int, int>>& out) {
    for (int u = from; u != to; u = parent_body[u]) {
      const int k = parent_joint[u];
      // crossing u -> parent(u): +1 when it runs body_a -> body_b, matching
      // the rate convention (w is the rate of body_b relative to body_a)
      out.push_back({k, m.joints[k].body_a == u ? +1 : -1});
    }
  };
  auto depth = [&](int u) {
    int d = 0;
    for (; parent_body[u] >= 0; u = parent_body[u]) ++d;
    return d;
  };

  LoopBasis basis;
  for (size_t k = 0; k < m.joints.size(); ++k) {
    if (in_tree[k]) continue;
    const int a = m.joints[k].body_a, b = m.joints[k].body_b;
    // lowest common ancestor of a and b
    int x = a, y = b, dx = depth(a), dy = depth(b);
    while (dx > dy) x = parent_body[x], --dx;
    while (dy > dx) y = parent_body[y], --dy;
    while (x != y) x = parent_body[x], y = parent_body[y];
    const int lca = x;

    // a --chord--> b --tree--> lca --tree--> a
    std::vector<std::pair<int, int>> loop{{static_cast<int>(k), +1}};
    climb(b, lca, loop);
    std::vector<std::pair<int, int>> up;
    climb(a, lca, up);  // crossings a -> lca; the loop needs lca -> a
    for (auto it = up.rbegin(); it != up.rend(); ++it) loop.push_back({it->first, -it->second});
    basis.loops.push_back(std::move(loop));
  }
  return basis;
}

std::vector<Twist> joint_screws(const MechanismModel& m, double theta) {
  const auto pos = node_positions(m, theta);
  std::vector<Twist> out;
  out.reserve(m.joints.size());
  for (const auto& j : m.joints) out.push_back(revolute_screw(j.axis, pos[j.node]));
  return out;
}

Eigen::MatrixXd assemble_constraints(const MechanismModel& m, double theta) {
  const LoopBasis basis = loop_basis(m);
  const auto S = joint_screws(m, theta);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(6 * basis.loops.size(), m.joints.size());
  for (size_t l = 0; l < basis.loops.size(); ++l)
    for (const auto& [k, s] : basis.loops[l])
      C.block<6, 1>(6 * l, k) += s * S[k].stacked();
  return C;
}

int matrix_nullity(const Eigen::MatrixXd& C, double rtol) {
  if (C.rows() == 0) return static_cast<int>(C.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0) return static_cast<int>(C.cols());
  int null = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= rtol * sv(0)) ++null;
  // columns beyond min(rows, cols) are unconstrained directions too
  null += static_cast<int>(C.cols() - sv.size());
  return null;
}

int dof(const MechanismModel& m, double theta) {
  return matrix_nullity(assemble_constraints(m, theta));
}

int numeric_dof_oracle(const MechanismModel& m, double theta) {
  const LoopBasis basis = loop_basis(m);
  const int nj = static_cast<int>(m.joints.size());
  if (basis.loops.empty()) return nj;
  const auto pos = node_positions(m, theta);

  // finite-rotation composition around each cycle; zero at the assembled
  // configuration, and its Jacobian in the joint angles is the constraint map
  auto residual = [&](const Eigen::VectorXd& q) {
    Eigen::VectorXd res(6 * basis.loops.size());
    for (size_t l = 0; l < basis.loops.size(); ++l) {
      Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
      for (const auto& [k, s] : basis.loops[l]) {
        const auto& j = m.joints[k];
        T = T * Eigen::Translation3d(pos[j.node]) *
            Eigen::AngleAxisd(s * q(k), j.axis) * Eigen::Translation3d(-pos[j.node]);
      }
      const Eigen::AngleAxisd aa(T.linear());
      res.segment<3>(6 * l) = T.translation();
      res.segment<3>(6 * l + 3) = aa.angle() * aa.axis();
    }
    return res;
  };

  const double h = 1e-5;
  Eigen::MatrixXd J(6 * basis.loops.size(), nj);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(nj);
  for (int k = 0; k < nj; ++k) {
    q(k) = h;
    const Eigen::VectorXd rp = residual(q);
    q(k) = -h;
    const Eigen::VectorXd rm = residual(q);
    q(k) = 0;
    J.col(k) = (rp - rm) / (2 * h);
  }
  // looser cutoff than the analytic path: central differences carry O(h^2)
  // composition error
  return matrix_nullity(J, 1e-7);
}

DofReport dof_report(const MechanismModel& m, double theta) {
  const Eigen::MatrixXd C = assemble_constraints(m, theta);
  DofReport r;
  r.loop_count = static_cast<int>(C.rows() / 6);
  r.rows = static_cast<int>(C.rows());
  r.cols = static_cast<int>(C.cols());
  if (C.rows() == 0) {
    r.dof = r.cols;
    return r;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
  const auto& sv = svd.singularValues();
  r.sigma_max = sv(0);
  const double cut = 1e-10 * sv(0);
  int null = static_cast<int>(C.cols() - sv.size());
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cut)
      ++null;
    else
      r.sigma_min_nonzero = sv(i);  // sorted descending: last survivor wins
  }
  r.dof = null;
  return r;
}

}  // namespace sck
