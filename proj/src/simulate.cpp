#include "scissorkin/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sck {

void DriveProfile::validate() const {
  if (!(t_deploy > 0)) throw std::invalid_argument("drive profile: deploy time must be positive");
  if (theta_start == theta_end)
    throw std::invalid_argument("drive profile: start and end angles coincide");
  if (!(theta_start > 0 && theta_start < std::numbers::pi && theta_end > 0 &&
        theta_end < std::numbers::pi))
    throw std::invalid_argument("drive profile: angles must lie in (0, pi)");
  if (cycle && !(t_cycle > t_deploy))
    throw std::invalid_argument("drive profile: cycle time must exceed deploy time");
}

namespace {

ThetaSample leg(DriveKind kind, double from, double to, double T, double tau) {
  const double u = tau / T, d = to - from;
  if (kind == DriveKind::linear) return {from + d * u, d / T, 0.0};
  const double s = u * u * (3 - 2 * u);
  return {from + d * s, d * 6 * u * (1 - u) / T, d * (6 - 12 * u) / (T * T)};
}

}  // namespace

ThetaSample theta_of_t(const DriveProfile& profile, double t) {
  profile.validate();
  const double total = profile.total_time();
  if (t < -1e-9 || t > total + 1e-9)
    throw std::domain_error("theta_of_t: t outside [0, " + std::to_string(total) + "]");
  t = std::clamp(t, 0.0, total);
  if (!profile.cycle || t <= profile.t_deploy)
    return leg(profile.kind, profile.theta_start, profile.theta_end, profile.t_deploy, t);
  return leg(profile.kind, profile.theta_end, profile.theta_start,
             profile.t_cycle - profile.t_deploy, t - profile.t_deploy);
}

TrajectoryLog simulate(const MechanismModel& m, const DriveProfile& profile, double dt) {
  profile.validate();
  if (!(dt > 0)) throw std::invalid_argument("simulate: dt must be positive");
  const double total = profile.total_time();

  TrajectoryLog log;
  log.node_ids = m.node_ids;
  const long nsteps = static_cast<long>(std::floor(total / dt + 1e-9));
  log.samples.reserve(nsteps + 2);
  for (long k = 0; k <= nsteps; ++k) {
    const double t = std::min(k * dt, total);
    const ThetaSample ts = theta_of_t(profile, t);
    const KinematicState st = kinematic_state(m, ts.theta, ts.theta_dot, ts.theta_ddot);
    TrajectorySample sample;
    sample.t = t;
    sample.theta = ts.theta;
    sample.drive_rate = ts.theta_dot;
    sample.drive_accel = ts.theta_ddot;
    sample.nodes.reserve(st.bodies.size());
    for (const auto& b : st.bodies) sample.nodes.push_back({b.r, b.v, b.omega, b.a, b.eps});
    log.samples.push_back(std::move(sample));
  }
  if (std::abs(log.samples.back().t - total) > 1e-9) {
    const ThetaSample ts = theta_of_t(profile, total);
    const KinematicState st = kinematic_state(m, ts.theta, ts.theta_dot, ts.theta_ddot);
    TrajectorySample sample;
    sample.t = total;
    sample.theta = ts.theta;
    sample.drive_rate = ts.theta_dot;
    sample.drive_accel = ts.theta_ddot;
    for (const auto& b : st.bodies) sample.nodes.push_back({b.r, b.v, b.omega, b.a, b.eps});
    log.samples.push_back(std::move(sample));
  }
  return log;
}

NodeStats node_stats(const TrajectoryLog& log) {
  if (log.samples.empty()) throw std::invalid_argument("node_stats: empty trajectory");
  const size_t nn = log.node_ids.size();
  NodeStats stats(nn);
  for (size_t n = 0; n < nn; ++n) {
    NodeStatsEntry& e = stats[n];
    e.node = log.node_ids[n];
    auto fold = [&](auto get, StatRow& row, double scale) {
      double lo = 0, hi = 0, sum = 0;
      bool first = true;
      for (const auto& s : log.samples) {
        const double q = get(s.nodes[n]) * scale;
        lo = first ? q : std::min(lo, q);
        hi = first ? q : std::max(hi, q);
        sum += q;
        first = false;
      }
      // summation rounding can push the mean an ulp past an extreme when the
      // quantity is constant; the true mean always lies inside [min, max]
      row = {hi, lo, std::clamp(sum / log.samples.size(), lo, hi)};
    };
    fold([](const NodeKin& k) { return k.v.norm(); }, e.v_mm_s, 1000.0);
    fold([](const NodeKin& k) { return k.omega.norm(); }, e.omega_rad_s, 1.0);
    fold([](const NodeKin& k) { return k.a.norm(); }, e.a_mm_s2, 1000.0);
    fold([](const NodeKin& k) { return k.eps.norm(); }, e.eps_rad_s2, 1.0);
  }
  return stats;
}

UnitComparison compare_units(const TrajectoryLog& a, const TrajectoryLog& b) {
  if (a.node_ids.size() != b.node_ids.size())
    throw std::runtime_error("compare_units: node sets differ in size");
  if (a.samples.size() != b.samples.size())
    throw std::runtime_error("compare_units: sample counts differ");
  for (size_t i = 0; i < a.samples.size(); ++i)
    if (std::abs(a.samples[i].t - b.samples[i].t) > 1e-9)
      throw std::runtime_error("compare_units: timestamps are not aligned");

  UnitComparison c;
  double n = 0;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    for (size_t k = 0; k < a.node_ids.size(); ++k) {
      const NodeKin& x = a.samples[i].nodes[k];
      const NodeKin& y = b.samples[i].nodes[k];
      auto sq = [](double d) { return d * d; };
      c.mse_v += sq(x.v.norm() - y.v.norm());
      c.mse_omega += sq(x.omega.norm() - y.omega.norm());
      c.mse_a += sq(x.a.norm() - y.a.norm());
      c.mse_eps += sq(x.eps.norm() - y.eps.norm());
      n += 1;
    }
  }
  c.mse_v /= n;
  c.mse_omega /= n;
  c.mse_a /= n;
  c.mse_eps /= n;
  c.rmse_v = std::sqrt(c.mse_v);
  c.rmse_omega = std::sqrt(c.mse_omega);
  c.rmse_a = std::sqrt(c.mse_a);
  c.rmse_eps = std::sqrt(c.mse_eps);
  return c;
}

namespace {

NodeKin embed_on_ring(const NodeKin& k, double a, double adot, double addot, const Mat3& R) {
  // local (x, y, z) -> chord plane at radius a: X radial, Y along the chord
  const Mat3 Q = ring_rotation(1, std::numbers::pi / 2);
  NodeKin e;
  e.pos = R * (Vec3(a, 0, 0) + Q * k.pos);
  e.v = R * (Vec3(adot, 0, 0) + Q * k.v);
  e.omega = R * (Q * k.omega);
  e.a = R * (Vec3(addot, 0, 0) + Q * k.a);
  e.eps = R * (Q * k.eps);
  return e;
}

}  // namespace

TrajectoryLog ring_assembly(const TrajectoryLog& unit_log, const MechanismModel& m, int N,
                            double alpha) {
  if (N < 1) throw std::invalid_argument("ring_assembly: need at least one unit");
  if (N > 99) throw std::invalid_argument("ring_assembly: unit index scheme supports up to 99");
  if (N == 1) return unit_log;
  const size_t nn = unit_log.node_ids.size();

  std::vector<char> keep(nn, 1);
  for (const auto& [left, right] : m.interface_pairs) keep[left] = 0;

  TrajectoryLog ring;
  for (int j = 0; j < N; ++j) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "u%02d/", j);
    for (size_t n = 0; n < nn; ++n)
      if (keep[n]) ring.node_ids.push_back(prefix + unit_log.node_ids[n]);
  }

  std::vector<Mat3> R(N);
  for (int j = 0; j < N; ++j) R[j] = ring_rotation(j, alpha);

  for (const auto& s : unit_log.samples) {
    const RingRadius rr = ring_radius(m, s.theta, alpha);
    const double adot = rr.da * s.drive_rate;
    const double addot = rr.dda * s.drive_rate * s.drive_rate + rr.da * s.drive_accel;

    // all nodes of every unit, for the edge-coincidence check
    std::vector<std::vector<NodeKin>> units(N);
    for (int j = 0; j < N; ++j) {
      units[j].reserve(nn);
      for (size_t n = 0; n < nn; ++n)
        units[j].push_back(embed_on_ring(s.nodes[n], rr.a, adot, addot, R[j]));
    }
    for (int j = 0; j < N; ++j) {
      const int prev = (j + N - 1) % N;
      for (const auto& [left, right] : m.interface_pairs) {
        if ((units[j][left].pos - units[prev][right].pos).norm() > 1e-9 ||
            (units[j][left].v - units[prev][right].v).norm() > 1e-9)
          throw std::runtime_error("ring_assembly: adjacent units do not share edge nodes");
      }
    }

    TrajectorySample out;
    out.t = s.t;
    out.theta = s.theta;
    out.drive_rate = s.drive_rate;
    out.drive_accel = s.drive_accel;
    out.nodes.reserve(ring.node_ids.size());
    for (int j = 0; j < N; ++j)
      for (size_t n = 0; n < nn; ++n)
        if (keep[n]) out.nodes.push_back(units[j][n]);
    ring.samples.push_back(std::move(out));
  }
  return ring;
}

std::vector<TrajectoryLog> split_units(const TrajectoryLog& ring_log, int N) {
  std::vector<TrajectoryLog> out(N);
  std::vector<std::vector<size_t>> pick(N);
  for (int j = 0; j < N; ++j) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "u%02d/", j);
    for (size_t n = 0; n < ring_log.node_ids.size(); ++n) {
      const std::string& id = ring_log.node_ids[n];
      if (id.rfind(prefix, 0) == 0) {
        pick[j].push_back(n);
        out[j].node_ids.push_back(id.substr(4));
      }
    }
    if (pick[j].empty()) throw std::runtime_error("split_units: no nodes for unit " +
                                                  std::to_string(j));
  }
  for (const auto& s : ring_log.samples) {
    for (int j = 0; j < N; ++j) {
      TrajectorySample sub;
      sub.t = s.t;
      sub.theta = s.theta;
      sub.drive_rate = s.drive_rate;
      sub.drive_accel = s.drive_accel;
      for (size_t n : pick[j]) sub.nodes.push_back(s.nodes[n]);
      out[j].samples.push_back(std::move(sub));
    }
  }
  return out;
}

}  // namespace sck
