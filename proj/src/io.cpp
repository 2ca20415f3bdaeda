#include "scissorkin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sck {

namespace {

constexpr const char* kCsvHeader =
    "t_s,node,theta_deg,x_m,y_m,z_m,vx,vy,vz,wx,wy,wz,ax,ay,az,ex,ey,ez";

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

void write_trajectory_csv(const TrajectoryLog& log, std::ostream& os) {
  os << kCsvHeader << "\n";
  for (const auto& s : log.samples) {
    const std::string head = fmt(s.t);
    const std::string th = fmt(rad2deg(s.theta));
    for (size_t n = 0; n < log.node_ids.size(); ++n) {
      const NodeKin& k = s.nodes[n];
      os << head << ',' << log.node_ids[n] << ',' << th;
      for (const Vec3* v : {&k.pos, &k.v, &k.omega, &k.a, &k.eps})
        os << ',' << fmt(v->x()) << ',' << fmt(v->y()) << ',' << fmt(v->z());
      os << '\n';
    }
  }
}

void write_trajectory_csv(const TrajectoryLog& log, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trajectory_csv(log, os);
}

TrajectoryLog read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("trajectory CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::runtime_error("trajectory CSV line 1: unexpected header '" + line + "'");

  TrajectoryLog log;
  size_t lineno = 1;
  bool first_block_done = false;
  size_t node_cursor = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 18)
      throw std::runtime_error("trajectory CSV line " + std::to_string(lineno) +
                               ": expected 18 fields, got " + std::to_string(f.size()));
    double num[17];
    try {
      num[0] = std::stod(f[0]);
      for (int i = 2; i < 18; ++i) num[i - 1] = std::stod(f[i]);
    } catch (const std::exception&) {
      throw std::runtime_error("trajectory CSV line " + std::to_string(lineno) +
                               ": non-numeric field");
    }

    const double t = num[0];
    if (log.samples.empty() || std::abs(t - log.samples.back().t) > 1e-12) {
      if (!log.samples.empty()) {
        if (!first_block_done) first_block_done = true;
        if (log.samples.back().nodes.size() != log.node_ids.size())
          throw std::runtime_error("trajectory CSV line " + std::to_string(lineno) +
                                   ": incomplete sample block above");
      }
      log.samples.push_back({t, deg2rad(num[1]), 0.0, 0.0, {}});
      node_cursor = 0;
    }
    if (!first_block_done) {
      log.node_ids.push_back(f[1]);
    } else {
      if (node_cursor >= log.node_ids.size() || log.node_ids[node_cursor] != f[1])
        throw std::runtime_error("trajectory CSV line " + std::to_string(lineno) +
                                 ": node order differs from the first sample");
    }
    ++node_cursor;
    NodeKin k;
    k.pos = Vec3(num[2], num[3], num[4]);
    k.v = Vec3(num[5], num[6], num[7]);
    k.omega = Vec3(num[8], num[9], num[10]);
    k.a = Vec3(num[11], num[12], num[13]);
    k.eps = Vec3(num[14], num[15], num[16]);
    log.samples.back().nodes.push_back(k);
  }
  if (log.samples.empty()) throw std::runtime_error("trajectory CSV: no data rows");
  if (log.samples.back().nodes.size() != log.node_ids.size())
    throw std::runtime_error("trajectory CSV: incomplete final sample block");
  return log;
}

TrajectoryLog read_trajectory_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_trajectory_csv(is);
}

nlohmann::json model_to_json(const MechanismModel& m) {
  nlohmann::json j;
  if (m.parametric) {
    j["design"] = {{"D_m", m.design.D},
                   {"N", m.design.N},
                   {"H_m", m.design.H},
                   {"theta1_deg", rad2deg(m.design.theta1)},
                   {"theta2_deg", rad2deg(m.design.theta2)}};
  }
  for (size_t n = 0; n < m.node_ids.size(); ++n) {
    nlohmann::json node = {{"id", m.node_ids[n]},
                           {"x_m", m.rest[n].x()},
                           {"y_m", m.rest[n].y()},
                           {"z_m", m.rest[n].z()}};
    if (m.node_host[n] >= 0) node["host"] = m.links[m.node_host[n]].id;
    j["nodes"].push_back(node);
  }
  for (const auto& l : m.links)
    j["links"].push_back({{"id", l.id},
                          {"nodes", {m.node_ids[l.node_a], m.node_ids[l.node_b]}},
                          {"length_m", l.length}});
  for (const auto& jt : m.joints)
    j["joints"].push_back({{"id", jt.id},
                           {"type", "revolute"},
                           {"axis", {jt.axis.x(), jt.axis.y(), jt.axis.z()}},
                           {"links", {m.links[jt.body_a].id, m.links[jt.body_b].id}},
                           {"node", m.node_ids[jt.node]}});
  j["ground_node"] = m.node_ids[m.ground_node];
  j["drive_joint"] = m.joints[m.drive_joint].id;
  if (m.spin_pair_a >= 0 && m.spin_pair_b >= 0)
    j["frame"] = {{"spin_pair", {m.links[m.spin_pair_a].id, m.links[m.spin_pair_b].id}}};
  for (const auto& [left, right] : m.interface_pairs)
    j["interfaces"].push_back({{"left", m.node_ids[left]}, {"right", m.node_ids[right]}});
  return j;
}

MechanismModel model_from_json(const nlohmann::json& j) {
  if (j.contains("design")) {
    const auto& d = j.at("design");
    MechanismModel m = build_unit(make_design(
        d.at("D_m").get<double>(), d.at("N").get<int>(), d.at("H_m").get<double>(),
        deg2rad(d.at("theta1_deg").get<double>()), deg2rad(d.at("theta2_deg").get<double>())));
    // the explicit lists must agree with what the design generates; nominal
    // link lengths are taken from the file so edited files stay honest
    if (j.contains("nodes") && j.at("nodes").size() != m.node_ids.size())
      throw std::runtime_error("mechanism file: node list disagrees with its design block");
    if (j.contains("joints") && j.at("joints").size() != m.joints.size())
      throw std::runtime_error("mechanism file: joint list disagrees with its design block");
    if (j.contains("links")) {
      if (j.at("links").size() != m.links.size())
        throw std::runtime_error("mechanism file: link list disagrees with its design block");
      for (size_t i = 0; i < m.links.size(); ++i) {
        const auto& l = j.at("links").at(i);
        if (l.at("id").get<std::string>() != m.links[i].id)
          throw std::runtime_error("mechanism file: link ids disagree with the design block");
        m.links[i].length = l.at("length_m").get<double>();
      }
    }
    return m;
  }

  MechanismModel m;
  for (const auto& node : j.at("nodes")) {
    m.node_ids.push_back(node.at("id").get<std::string>());
    m.rest.push_back(Vec3(node.at("x_m").get<double>(), node.at("y_m").get<double>(),
                          node.at("z_m").get<double>()));
  }
  auto node_of = [&](const std::string& id) {
    const int n = m.node_index(id);
    if (n < 0) throw std::runtime_error("mechanism file: unknown node '" + id + "'");
    return n;
  };
  for (const auto& l : j.at("links"))
    m.links.push_back({l.at("id").get<std::string>(),
                       node_of(l.at("nodes").at(0).get<std::string>()),
                       node_of(l.at("nodes").at(1).get<std::string>()),
                       l.at("length_m").get<double>()});
  auto body_of = [&](const std::string& id) {
    for (size_t b = 0; b < m.links.size(); ++b)
      if (m.links[b].id == id) return static_cast<int>(b);
    throw std::runtime_error("mechanism file: unknown link '" + id + "'");
  };
  for (const auto& jt : j.at("joints")) {
    if (jt.at("type").get<std::string>() != "revolute")
      throw std::runtime_error("mechanism file: only revolute joints are supported");
    const auto& ax = jt.at("axis");
    const Vec3 axis(ax.at(0).get<double>(), ax.at(1).get<double>(), ax.at(2).get<double>());
    if (std::abs(axis.norm() - 1.0) > 1e-9)
      throw std::runtime_error("mechanism file: joint axis must be a unit vector");
    m.joints.push_back({jt.at("id").get<std::string>(),
                        body_of(jt.at("links").at(0).get<std::string>()),
                        body_of(jt.at("links").at(1).get<std::string>()),
                        node_of(jt.at("node").get<std::string>()), axis});
  }
  m.node_host.assign(m.node_ids.size(), -1);
  for (size_t n = 0; n < m.node_ids.size(); ++n) {
    const auto& node = j.at("nodes").at(n);
    if (node.contains("host")) m.node_host[n] = body_of(node.at("host").get<std::string>());
  }
  m.ground_node = node_of(j.at("ground_node").get<std::string>());
  const std::string drive = j.at("drive_joint").get<std::string>();
  m.drive_joint = m.joint_index(drive);
  if (m.drive_joint < 0) throw std::runtime_error("mechanism file: unknown drive joint '" + drive + "'");
  if (j.contains("frame")) {
    m.spin_pair_a = body_of(j.at("frame").at("spin_pair").at(0).get<std::string>());
    m.spin_pair_b = body_of(j.at("frame").at("spin_pair").at(1).get<std::string>());
  }
  if (j.contains("interfaces"))
    for (const auto& p : j.at("interfaces"))
      m.interface_pairs.push_back({node_of(p.at("left").get<std::string>()),
                                   node_of(p.at("right").get<std::string>())});
  return m;
}

void write_model_json(const MechanismModel& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << model_to_json(m).dump(2) << "\n";
}

MechanismModel read_model_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

nlohmann::json design_report_json(const DesignParams& p) {
  const DesignReport r = design_report(p);
  nlohmann::json j;
  j["design"] = {{"D_m", p.D},
                 {"N", p.N},
                 {"H_m", p.H},
                 {"theta1_deg", rad2deg(p.theta1)},
                 {"theta2_deg", rad2deg(p.theta2)}};
  for (int i = 1; i <= 14; ++i) j["links_m"]["L" + std::to_string(i)] = r.links.l(i);
  j["report"] = {
      {"stretched_length_m", r.stretched_len},
      {"deployed",
       {{"height_m", r.deployed_height},
        {"diameter_m", r.deployed_diameter},
        {"volume_m3", r.deployed_volume}}},
      {"stowed",
       {{"height_m", r.stowed_height},
        {"diameter_m", r.stowed_diameter},
        {"volume_m3", r.stowed_volume}}},
      {"storage_ratio",
       {{"diameter", r.ratio_diameter}, {"height", r.ratio_height}, {"volume", r.ratio_volume}}}};
  if (const auto ref = reference_figures(p)) {
    j["reference"] = {
        {"stretched_length_m", ref->stretched_len},
        {"deployed",
         {{"height_m", ref->deployed_height},
          {"diameter_m", ref->deployed_diameter},
          {"volume_m3", ref->deployed_volume}}},
        {"stowed",
         {{"height_m", ref->stowed_height},
          {"diameter_m", ref->stowed_diameter},
          {"volume_m3", ref->stowed_volume}}},
        {"storage_ratio",
         {{"diameter", ref->ratio_diameter},
          {"height", ref->ratio_height},
          {"volume", ref->ratio_volume}}}};
  }
  return j;
}

nlohmann::json stats_json(const NodeStats& stats) {
  nlohmann::json j;
  j["units"] = {{"linear_velocity", "mm/s"},
                {"angular_velocity", "rad/s"},
                {"linear_acceleration", "mm/s^2"},
                {"angular_acceleration", "rad/s^2"}};
  auto row = [](const StatRow& r) {
    return nlohmann::json{{"max", r.max}, {"min", r.min}, {"avg", r.mean}};
  };
  j["nodes"] = nlohmann::json::array();
  for (const auto& e : stats)
    j["nodes"].push_back({{"node", e.node},
                          {"linear_velocity", row(e.v_mm_s)},
                          {"angular_velocity", row(e.omega_rad_s)},
                          {"linear_acceleration", row(e.a_mm_s2)},
                          {"angular_acceleration", row(e.eps_rad_s2)}});
  return j;
}

nlohmann::json comparison_json(const UnitComparison& c) {
  return {{"linear_velocity", {{"mse", c.mse_v}, {"rmse", c.rmse_v}}},
          {"angular_velocity", {{"mse", c.mse_omega}, {"rmse", c.rmse_omega}}},
          {"linear_acceleration", {{"mse", c.mse_a}, {"rmse", c.rmse_a}}},
          {"angular_acceleration", {{"mse", c.mse_eps}, {"rmse", c.rmse_eps}}}};
}

}  // namespace sck
