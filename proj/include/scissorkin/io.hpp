// File formats: trajectory CSV, mechanism-description JSON, and JSON reports.
// Field-level layout is documented in docs/formats.md. Lengths are meters and
// angles are degrees in every file; conversion happens here and only here.

#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "scissorkin/model.hpp"
#include "scissorkin/simulate.hpp"

namespace sck {

// One row per (sample, node) under the fixed header
// t_s,node,theta_deg,x_m,y_m,z_m,vx,vy,vz,wx,wy,wz,ax,ay,az,ex,ey,ez
// (velocities m/s, angular rates rad/s, accelerations m/s^2 and rad/s^2).
// Output is deterministic for a given log.
void write_trajectory_csv(const TrajectoryLog& log, std::ostream& os);
void write_trajectory_csv(const TrajectoryLog& log, const std::string& path);

// Parses the CSV contract back into a log (drive rate/accel columns are not
// part of the format and read back as zero). Throws std::runtime_error with
// a line reference on malformed input.
TrajectoryLog read_trajectory_csv(std::istream& is);
TrajectoryLog read_trajectory_csv(const std::string& path);

nlohmann::json model_to_json(const MechanismModel& m);
MechanismModel model_from_json(const nlohmann::json& j);
void write_model_json(const MechanismModel& m, const std::string& path);
MechanismModel read_model_json(const std::string& path);

// Link lengths plus the envelope report (and catalog reference figures when
// the design matches a baseline row).
nlohmann::json design_report_json(const DesignParams& p);

nlohmann::json stats_json(const NodeStats& stats);
nlohmann::json comparison_json(const UnitComparison& c);

}  // namespace sck
