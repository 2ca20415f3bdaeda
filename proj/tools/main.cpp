// Command-line front end: design reports, mobility reports, deployment
// simulation, the validation suite, and trajectory statistics.
//
// Exit codes: 0 success, 1 a check or solve failed, 2 usage or parse error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "scissorkin/io.hpp"
#include "scissorkin/kinematics.hpp"
#include "scissorkin/loops.hpp"
#include "scissorkin/model.hpp"
#include "scissorkin/oracles.hpp"
#include "scissorkin/simulate.hpp"

namespace {

struct ModelOpts {
  double diameter = 25.0;
  int units = 12;
  double height = -1.0;  // negative: catalog default for the unit count
  double deployed_deg = 80.0;
  double stowed_deg = 12.54;
  std::string model_path;
  CLI::Option* units_opt = nullptr;
};

void add_model_flags(CLI::App* sub, ModelOpts& o, bool require_diameter) {
  auto* d = sub->add_option("-D,--diameter", o.diameter, "Aperture diameter, m")
                ->check(CLI::PositiveNumber);
  if (require_diameter) d->required();
  o.units_opt = sub->add_option("-n,--units", o.units, "Scissor units around the ring")
                    ->check(CLI::Range(3, 99));
  sub->add_option("-H,--height", o.height,
                  "Deployed unit height, m (default: catalog value for the unit count)");
  sub->add_option("--deployed-angle", o.deployed_deg, "Deployed opening angle, deg");
  sub->add_option("--stowed-angle", o.stowed_deg, "Stowed opening angle, deg");
  if (!require_diameter) {
    auto* mo = sub->add_option("-m,--model", o.model_path,
                               "Mechanism JSON file instead of design flags")
                   ->check(CLI::ExistingFile);
    mo->excludes(d)->excludes(o.units_opt);
  }
}

sck::DesignParams params_of(const ModelOpts& o) {
  return sck::make_design(o.diameter, o.units, o.height, sck::deg2rad(o.deployed_deg),
                          sck::deg2rad(o.stowed_deg));
}

sck::MechanismModel model_of(const ModelOpts& o) {
  if (!o.model_path.empty()) return sck::read_model_json(o.model_path);
  return sck::build_unit(params_of(o));
}

void emit_json(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot open for writing: " + out);
  os << j.dump(2) << "\n";
}

struct SimOpts {
  double deploy_time = 53.0;
  double cycle_time = 102.0;
  double dt = 0.05;
  bool cycle = false;
  double drive_rate = 0.0;  // rad/s; when set, fixes the deploy time instead
  std::string drive = "linear";
  std::string out = "trajectory.csv";
  std::string stats_out;
};

sck::DriveProfile profile_of(const ModelOpts& mo, const SimOpts& so) {
  sck::DriveProfile p;
  p.kind = so.drive == "smoothstep" ? sck::DriveKind::smoothstep : sck::DriveKind::linear;
  p.theta_start = sck::deg2rad(mo.stowed_deg);
  p.theta_end = sck::deg2rad(mo.deployed_deg);
  p.t_deploy = so.deploy_time;
  if (so.drive_rate > 0.0)
    p.t_deploy = std::abs(p.theta_end - p.theta_start) / so.drive_rate;
  p.cycle = so.cycle;
  p.t_cycle = so.cycle ? so.cycle_time : p.t_deploy + 1.0;
  if (so.cycle && so.drive_rate > 0.0) p.t_cycle = 2.0 * p.t_deploy;
  p.validate();
  return p;
}

int run_design(const ModelOpts& o, const std::string& out, const std::string& model_out) {
  const sck::DesignParams p = params_of(o);
  emit_json(sck::design_report_json(p), out);
  if (!model_out.empty()) sck::write_model_json(sck::build_unit(p), model_out);
  return 0;
}

int run_dof(const ModelOpts& o, double theta_deg) {
  const sck::MechanismModel m = model_of(o);
  const double theta =
      theta_deg > 0 ? sck::deg2rad(theta_deg) : (m.parametric ? m.design.theta1 : 0.0);
  const sck::DofReport r = sck::dof_report(m, theta);
  std::printf("DoF: %d\n", r.dof);
  std::printf("loops: %d\n", r.loop_count);
  std::printf("constraint matrix: %d x %d\n", r.rows, r.cols);
  std::printf("sigma_max: %.6g\n", r.sigma_max);
  std::printf("sigma_min_nonzero: %.6g\n", r.sigma_min_nonzero);
  return 0;
}

int run_simulate(const ModelOpts& mo, const SimOpts& so) {
  const sck::MechanismModel m = model_of(mo);
  const sck::DriveProfile profile = profile_of(mo, so);
  sck::TrajectoryLog log = sck::simulate(m, profile, so.dt);
  if (mo.units_opt->count() > 0)
    log = sck::ring_assembly(log, m, mo.units, 2.0 * std::numbers::pi / mo.units);
  sck::write_trajectory_csv(log, so.out);
  std::printf("wrote %zu samples x %zu nodes to %s\n", log.samples.size(),
              log.node_ids.size(), so.out.c_str());
  if (!so.stats_out.empty()) emit_json(sck::stats_json(sck::node_stats(log)), so.stats_out);
  return 0;
}

int run_validate(const ModelOpts& o) {
  const sck::MechanismModel m = model_of(o);
  const sck::ValidationReport r = sck::validate_model(m);
  auto line = [](const char* name, double value, double tol) {
    std::printf("%-24s %11.3e  (tol %.0e)  %s\n", name, value, tol,
                value < tol ? "ok" : "FAIL");
  };
  line("velocity FD rel err", r.velocity_fd_max, 1e-6);
  line("acceleration FD rel err", r.acceleration_fd_max, 1e-4);
  std::printf("%-24s %11d  (want 1)    %s\n", "mobility", r.dof_value,
              r.dof_value == 1 ? "ok" : "FAIL");
  std::printf("%-24s %11s  (want yes)  %s\n", "mobility oracle agrees",
              r.dof_matches_oracle ? "yes" : "no", r.dof_matches_oracle ? "ok" : "FAIL");
  line("loop closure, m", r.loop_closure_max, 1e-9);
  line("logged velocity FD", r.log_velocity_fd_max, 1e-5);
  line("ring equivariance", r.equivariance_max, 1e-12);
  std::printf("validation: %s\n", r.pass() ? "PASS" : "FAIL");
  return r.pass() ? 0 : 1;
}

int run_stats(const std::string& in, const std::string& out) {
  const sck::TrajectoryLog log = sck::read_trajectory_csv(in);
  emit_json(sck::stats_json(sck::node_stats(log)), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screw-theory kinematics for a scissor-ring deployable antenna"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "scissorkin 0.1.0");

  ModelOpts design_o, dof_o, sim_o, val_o;
  SimOpts sim;
  std::string design_out, design_model_out, stats_in, stats_out;
  double dof_theta_deg = -1.0;

  auto* design = app.add_subcommand("design", "Link lengths and envelope report");
  add_model_flags(design, design_o, true);
  design->add_option("-o,--out", design_out, "Report JSON path (default: stdout)");
  design->add_option("--model-out", design_model_out, "Also write the mechanism JSON here");

  auto* dofc = app.add_subcommand("dof", "Mobility from the screw constraint matrix");
  add_model_flags(dofc, dof_o, false);
  dofc->add_option("--theta", dof_theta_deg, "Opening angle to evaluate at, deg")
      ->check(CLI::Range(1.0, 179.0));

  auto* simc = app.add_subcommand("simulate", "Deployment trajectory to CSV");
  add_model_flags(simc, sim_o, false);
  simc->add_option("--deploy-time", sim.deploy_time, "Stowed-to-deployed duration, s")
      ->check(CLI::PositiveNumber);
  simc->add_option("--cycle-time", sim.cycle_time, "Full cycle duration, s")
      ->check(CLI::PositiveNumber);
  simc->add_flag("--cycle", sim.cycle, "Deploy then return to stowed");
  simc->add_option("--dt", sim.dt, "Sample step, s")->check(CLI::PositiveNumber);
  simc->add_option("--drive", sim.drive, "Drive law")
      ->check(CLI::IsMember({"linear", "smoothstep"}));
  simc->add_option("--drive-rate", sim.drive_rate,
                   "Constant opening rate, rad/s (overrides --deploy-time)")
      ->check(CLI::PositiveNumber);
  simc->add_option("-o,--out", sim.out, "Trajectory CSV path");
  simc->add_option("--stats", sim.stats_out, "Also write node statistics JSON here");

  auto* val = app.add_subcommand("validate", "Run the finite-difference oracle suite");
  add_model_flags(val, val_o, false);

  auto* stats = app.add_subcommand("stats", "Node statistics from a trajectory CSV");
  stats->add_option("-i,--in", stats_in, "Trajectory CSV path")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_option("-o,--out", stats_out, "Stats JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (design->parsed()) return run_design(design_o, design_out, design_model_out);
    if (dofc->parsed()) return run_dof(dof_o, dof_theta_deg);
    if (simc->parsed()) return run_simulate(sim_o, sim);
    if (val->parsed()) return run_validate(val_o);
    if (stats->parsed()) return run_stats(stats_in, stats_out);
  } catch (const sck::MobilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sck::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sck::DriveSelectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
