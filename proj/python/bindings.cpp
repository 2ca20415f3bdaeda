// Python bindings for the core operations: design math, unit construction,
// mobility, kinematic states, and deployment statistics. Vector quantities
// cross the boundary as plain lists; reports as dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "scissorkin/io.hpp"
#include "scissorkin/kinematics.hpp"
#include "scissorkin/loops.hpp"
#include "scissorkin/model.hpp"
#include "scissorkin/oracles.hpp"
#include "scissorkin/simulate.hpp"

namespace py = pybind11;
using namespace sck;

namespace {

std::array<double, 3> arr(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

py::dict state_dict(const MechanismModel& m, const KinematicState& s) {
  py::list nodes;
  for (size_t n = 0; n < m.node_ids.size(); ++n) {
    const BodyState& b = s.bodies[n];
    py::dict d;
    d["id"] = m.node_ids[n];
    d["pos"] = arr(b.r);
    d["v"] = arr(b.v);
    d["omega"] = arr(b.omega);
    d["a"] = arr(b.a);
    d["eps"] = arr(b.eps);
    nodes.append(d);
  }
  py::dict d;
  d["theta"] = s.theta;
  d["drive_rate"] = s.drive_rate;
  d["drive_accel"] = s.drive_accel;
  d["rates"] = s.rates.w;
  d["accels"] = s.accels.eps;
  d["nodes"] = nodes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Screw-theory kinematics for a scissor-ring deployable antenna";
  mod.attr("__version__") = "0.1.0";

  py::register_exception<MobilityError>(mod, "MobilityError", PyExc_RuntimeError);

  py::class_<DesignParams>(mod, "DesignParams")
      .def(py::init<>())
      .def_readwrite("D", &DesignParams::D)
      .def_readwrite("N", &DesignParams::N)
      .def_readwrite("H", &DesignParams::H)
      .def_readwrite("theta1", &DesignParams::theta1)
      .def_readwrite("theta2", &DesignParams::theta2)
      .def_readwrite("alpha", &DesignParams::alpha)
      .def("validate", &DesignParams::validate)
      .def("__repr__", [](const DesignParams& p) {
        return "DesignParams(D=" + std::to_string(p.D) + ", N=" + std::to_string(p.N) +
               ", H=" + std::to_string(p.H) + ")";
      });

  mod.def("make_design", &make_design, py::arg("D"), py::arg("N"), py::arg("H") = -1.0,
          py::arg("theta1") = deg2rad(80.0), py::arg("theta2") = deg2rad(12.54));
  mod.def("default_height", &default_height, py::arg("D"), py::arg("N"));
  mod.def("stretched_length", &stretched_length, py::arg("D"), py::arg("N"));
  mod.def("chord_width", &chord_width, py::arg("L"), py::arg("theta"));
  mod.def("solve_angle_from_width", &solve_angle_from_width, py::arg("L"), py::arg("W"));
  mod.def(
      "link_lengths",
      [](double H, double theta1) {
        const LinkSet ls = link_lengths(H, theta1);
        return std::vector<double>(ls.len.begin(), ls.len.end());
      },
      py::arg("H"), py::arg("theta1"), "Lengths of L1..L14 as a list");

  py::class_<MechanismModel>(mod, "MechanismModel")
      .def_readonly("node_ids", &MechanismModel::node_ids)
      .def_readonly("ground_node", &MechanismModel::ground_node)
      .def_readonly("drive_joint", &MechanismModel::drive_joint)
      .def_readonly("parametric", &MechanismModel::parametric)
      .def_property_readonly("num_links",
                             [](const MechanismModel& m) { return m.links.size(); })
      .def_property_readonly("num_joints",
                             [](const MechanismModel& m) { return m.joints.size(); })
      .def_property_readonly("joint_ids",
                             [](const MechanismModel& m) {
                               std::vector<std::string> ids;
                               for (const auto& j : m.joints) ids.push_back(j.id);
                               return ids;
                             })
      .def("__repr__", [](const MechanismModel& m) {
        return "MechanismModel(" + std::to_string(m.links.size()) + " links, " +
               std::to_string(m.joints.size()) + " joints)";
      });

  mod.def("build_unit", &build_unit, py::arg("params"));
  mod.def("make_four_bar", &make_four_bar);
  mod.def(
      "node_positions",
      [](const MechanismModel& m, double theta) {
        std::vector<std::array<double, 3>> out;
        for (const Vec3& p : node_positions(m, theta)) out.push_back(arr(p));
        return out;
      },
      py::arg("model"), py::arg("theta"));

  mod.def("dof", &dof, py::arg("model"), py::arg("theta"));
  mod.def("numeric_dof_oracle", &numeric_dof_oracle, py::arg("model"), py::arg("theta"));
  mod.def(
      "dof_report",
      [](const MechanismModel& m, double theta) {
        const DofReport r = dof_report(m, theta);
        py::dict d;
        d["dof"] = r.dof;
        d["loops"] = r.loop_count;
        d["rows"] = r.rows;
        d["cols"] = r.cols;
        d["sigma_max"] = r.sigma_max;
        d["sigma_min_nonzero"] = r.sigma_min_nonzero;
        return d;
      },
      py::arg("model"), py::arg("theta"));

  mod.def(
      "solve_rates",
      [](const MechanismModel& m, double theta, double drive_rate) {
        return solve_rates(m, theta, drive_rate).w;
      },
      py::arg("model"), py::arg("theta"), py::arg("drive_rate"));
  mod.def(
      "kinematic_state",
      [](const MechanismModel& m, double theta, double drive_rate, double drive_accel) {
        return state_dict(m, kinematic_state(m, theta, drive_rate, drive_accel));
      },
      py::arg("model"), py::arg("theta"), py::arg("drive_rate"),
      py::arg("drive_accel") = 0.0);

  mod.def(
      "deployment_stats",
      [](const MechanismModel& m, double dt, bool cycle) {
        DriveProfile p;
        p.theta_start = m.parametric ? m.design.theta2 : deg2rad(12.54);
        p.theta_end = m.parametric ? m.design.theta1 : deg2rad(80.0);
        p.cycle = cycle;
        const TrajectoryLog log = simulate(m, p, dt);
        return py::module_::import("json").attr("loads")(
            stats_json(node_stats(log)).dump());
      },
      py::arg("model"), py::arg("dt") = 0.05, py::arg("cycle") = false,
      "Per-node max/min/avg over the default deployment (mm/s, rad/s, mm/s^2, rad/s^2)");

  mod.def(
      "validate",
      [](const MechanismModel& m) {
        const ValidationReport r = validate_model(m);
        py::dict d;
        d["velocity_fd_max"] = r.velocity_fd_max;
        d["acceleration_fd_max"] = r.acceleration_fd_max;
        d["dof"] = r.dof_value;
        d["dof_matches_oracle"] = r.dof_matches_oracle;
        d["loop_closure_max"] = r.loop_closure_max;
        d["log_velocity_fd_max"] = r.log_velocity_fd_max;
        d["equivariance_max"] = r.equivariance_max;
        d["pass"] = r.pass();
        return d;
      },
      py::arg("model"), "Finite-difference oracle suite; heavy (seconds)");

  mod.def(
      "model_json", [](const MechanismModel& m) { return model_to_json(m).dump(2); },
      py::arg("model"));
  mod.def(
      "model_from_json",
      [](const std::string& text) { return model_from_json(nlohmann::json::parse(text)); },
      py::arg("text"));
}
