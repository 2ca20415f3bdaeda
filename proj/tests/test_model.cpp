#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "scissorkin/model.hpp"

using namespace sck;
using std::numbers::pi;

namespace {

double link_gap(const MechanismModel& m, double theta) {
  const auto pos = node_positions(m, theta);
  double worst = 0;
  for (const auto& l : m.links)
    worst = std::max(worst, std::abs((pos[l.node_a] - pos[l.node_b]).norm() - l.length));
  return worst;
}

}  // namespace

TEST_CASE("stretched length is the aperture polygon chord") {
  CHECK(stretched_length(25, 12) == doctest::Approx(6.4705).epsilon(1e-4));
  CHECK(stretched_length(25, 18) == doctest::Approx(4.3412).epsilon(1e-4));
  CHECK(stretched_length(25, 24) == doctest::Approx(3.2631).epsilon(1e-4));
  CHECK_THROWS_AS(stretched_length(25, 2), std::domain_error);
  CHECK_THROWS_AS(stretched_length(-1, 12), std::domain_error);
}

TEST_CASE("total polygon perimeter is monotone toward the circle limit") {
  double prev = 0;
  for (int n = 3; n <= 64; ++n) {
    const double per = stretched_length(25, n) * n;
    CHECK(per > prev);
    CHECK(per < pi * 25.0);
    prev = per;
  }
}

TEST_CASE("link lengths reproduce the reference set") {
  const LinkSet ls = link_lengths(5.09, deg2rad(80.0));
  CHECK(ls.l(1) == doctest::Approx(6.6448).epsilon(1e-4));
  CHECK(ls.l(3) == doctest::Approx(2.1355).epsilon(1e-4));
  CHECK(ls.l(7) == doctest::Approx(3.3224).epsilon(1e-4));
  CHECK(ls.l(11) == doctest::Approx(1.6612).epsilon(1e-4));
}

TEST_CASE("link set halving chain holds exactly") {
  const LinkSet ls = link_lengths(4.2, deg2rad(71.0));
  CHECK(ls.l(1) == ls.l(2));
  for (int i = 4; i <= 6; ++i) CHECK(ls.l(i) == ls.l(3));
  for (int i = 7; i <= 10; ++i) CHECK(ls.l(i) == ls.l(1) / 2);
  for (int i = 11; i <= 14; ++i) CHECK(ls.l(i) == ls.l(1) / 4);
  CHECK_THROWS_AS(link_lengths(5.09, deg2rad(0.5)), std::domain_error);
  CHECK_THROWS_AS(link_lengths(5.09, deg2rad(179.5)), std::domain_error);
}

TEST_CASE("chord width closed form and limits") {
  CHECK(chord_width(3.3225, deg2rad(80.0)) == doctest::Approx(5.0903).epsilon(1e-4));
  CHECK(chord_width(1.7, 0.0) == doctest::Approx(3.4).epsilon(1e-12));
  CHECK(chord_width(1.7, pi) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("angle from width inverts chord width") {
  CHECK(rad2deg(solve_angle_from_width(3.32, 5.09)) == doctest::Approx(79.90).epsilon(1e-3));
  CHECK(solve_angle_from_width(2.0, 4.0) == 0.0);
  CHECK(solve_angle_from_width(2.0, 0.0) == doctest::Approx(pi).epsilon(1e-12));
  CHECK_THROWS_AS(solve_angle_from_width(2.0, 4.1), std::domain_error);

  for (double th = 0.05; th < pi; th += 0.11) {
    const double w = chord_width(1.3, th);
    CHECK(solve_angle_from_width(1.3, w) == doctest::Approx(th).epsilon(1e-10));
  }
}

TEST_CASE("design parameter validation") {
  CHECK_NOTHROW(make_design(25, 12).validate());
  CHECK_THROWS_AS(make_design(-25, 12), std::invalid_argument);
  CHECK_THROWS_AS(make_design(25, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_design(25, 12, 5.09, deg2rad(10.0), deg2rad(80.0)),
                  std::invalid_argument);  // stowed must be below deployed
  DesignParams p = make_design(25, 12);
  p.alpha = 0.4;  // no longer 2*pi/N
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("default heights follow the catalog and scale off-catalog") {
  CHECK(default_height(25, 12) == 5.09);
  CHECK(default_height(25, 18) == 3.436);
  CHECK(default_height(25, 24) == 2.581);
  // off-catalog: height keeps the baseline proportion to the unit chord
  const double h15 = default_height(25, 15);
  CHECK(h15 / stretched_length(25, 15) ==
        doctest::Approx(5.09 / stretched_length(25, 12)).epsilon(1e-12));
  CHECK(make_design(25, 18).H == 3.436);
}

TEST_CASE("reference unit shape matches the published counts") {
  const MechanismModel m = build_unit(make_design(25, 12));
  CHECK(m.node_ids.size() == 25);
  CHECK(m.links.size() == 14);
  CHECK(m.joints.size() == 21);
  CHECK(m.parametric);
  CHECK(m.node_ids[m.ground_node] == "base");
  CHECK(m.joints[m.drive_joint].id == "central_pivot");

  std::set<std::string> ids(m.node_ids.begin(), m.node_ids.end());
  CHECK(ids.size() == m.node_ids.size());  // unique names
  for (const auto& j : m.joints) {
    CHECK(j.body_a >= 0);
    CHECK(j.body_a < static_cast<int>(m.links.size()));
    CHECK(j.body_b >= 0);
    CHECK(j.body_b < static_cast<int>(m.links.size()));
    CHECK(j.node >= 0);
    CHECK(j.node < static_cast<int>(m.node_ids.size()));
  }
}

TEST_CASE("reference unit link lengths match the catalog within a millimeter") {
  const MechanismModel m = build_unit(make_design(25, 12, 5.09));
  const LinkSet ls = link_lengths(5.09, deg2rad(80.0));
  REQUIRE(m.links.size() == 14);
  for (int i = 1; i <= 14; ++i)
    CHECK(m.links[i - 1].length == doctest::Approx(ls.l(i)).epsilon(1e-3));
}

TEST_CASE("node positions preserve every link length across the travel") {
  const MechanismModel m = build_unit(make_design(25, 12));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(deg2rad(12.54), deg2rad(80.0));
  for (int i = 0; i < 100; ++i) CHECK(link_gap(m, u(rng)) < 1e-9);
}

TEST_CASE("deployed extents match the design targets") {
  const DesignParams p = make_design(25, 12);
  const MechanismModel m = build_unit(p);
  CHECK(unit_height(m, p.theta1) == doctest::Approx(5.09).epsilon(2e-3));
  // horizontal span tracks the ring chord at full deployment
  CHECK(unit_width(m, p.theta1) ==
        doctest::Approx(stretched_length(25, 12)).epsilon(2e-2));
  // central scissor bottom nodes separated by 2*(l1/2)*sin(theta1/2)
  const auto pos = node_positions(m, p.theta1);
  const double sep =
      (pos[m.node_index("bot_l")] - pos[m.node_index("bot_r")]).norm();
  CHECK(sep == doctest::Approx(4.272).epsilon(1e-3));
  // vertical extent formula 2*(l1/2)*cos(theta1/2)
  CHECK(unit_height(m, p.theta1) ==
        doctest::Approx(m.links[0].length * std::cos(p.theta1 / 2)).epsilon(1e-12));
}

TEST_CASE("ground node sits at the origin for every angle") {
  const MechanismModel m = build_unit(make_design(25, 12));
  for (double th = deg2rad(13.0); th < deg2rad(80.0); th += 0.1) {
    const auto pos = node_positions(m, th);
    CHECK(pos[m.ground_node].norm() == 0.0);
    for (const auto& q : pos) CHECK(q.y() == 0.0);  // planar unit
  }
}

TEST_CASE("node positions reject unusable angles") {
  const MechanismModel m = build_unit(make_design(25, 12));
  CHECK_THROWS_AS(node_positions(m, 0.0), std::domain_error);
  CHECK_THROWS_AS(node_positions(m, pi), std::domain_error);
  CHECK_THROWS_AS(node_positions(m, -0.3), std::domain_error);
}

TEST_CASE("positions are smooth in theta") {
  const MechanismModel m = build_unit(make_design(25, 12));
  // second differences stay bounded: no jumps or kinks inside the travel
  const double h = 1e-4;
  for (double th = deg2rad(14.0); th < deg2rad(79.0); th += deg2rad(5.0)) {
    const auto pm = node_positions(m, th - h), p0 = node_positions(m, th),
               pp = node_positions(m, th + h);
    for (size_t n = 0; n < p0.size(); ++n) {
      const Vec3 dd = (pp[n] - 2 * p0[n] + pm[n]) / (h * h);
      CHECK(dd.norm() < 50.0);
    }
  }
}

TEST_CASE("ring radius derivatives match finite differences") {
  const MechanismModel m = build_unit(make_design(25, 12));
  const double h1 = 1e-6, h2 = 1e-4;
  for (double th = deg2rad(15.0); th < deg2rad(79.0); th += deg2rad(7.0)) {
    const RingRadius r = ring_radius(m, th);
    const double fd1 = (ring_radius(m, th + h1).a - ring_radius(m, th - h1).a) / (2 * h1);
    const double fd2 =
        (ring_radius(m, th + h2).a - 2 * r.a + ring_radius(m, th - h2).a) / (h2 * h2);
    CHECK(r.da == doctest::Approx(fd1).epsilon(1e-7));
    CHECK(r.dda == doctest::Approx(fd2).epsilon(1e-4));
  }
}

TEST_CASE("ring radius places the deployed unit near the aperture circle") {
  const DesignParams p = make_design(25, 12);
  const MechanismModel m = build_unit(p);
  const auto pos = node_positions(m, p.theta1);
  const double a = ring_radius(m, p.theta1).a;
  double rmax = 0;
  for (const auto& q : pos) rmax = std::max(rmax, std::hypot(a, q.x()));
  // the unit span undershoots the polygon chord by ~1%, so the assembled
  // diameter sits just inside the nominal aperture
  CHECK(2 * rmax == doctest::Approx(25.0).epsilon(2e-2));
  CHECK(2 * rmax < 25.0);
}

TEST_CASE("design report ratios are exact quotients") {
  for (int n : {3, 12, 18, 24}) {
    const DesignReport r = design_report(make_design(25, n));
    CHECK(std::isfinite(r.deployed_volume));
    CHECK(std::isfinite(r.stowed_volume));
    CHECK(r.ratio_diameter == r.deployed_diameter / r.stowed_diameter);
    CHECK(r.ratio_height == r.deployed_height / r.stowed_height);
    CHECK(r.ratio_volume == r.deployed_volume / r.stowed_volume);
    CHECK(r.deployed_volume ==
          pi * (r.deployed_diameter / 2) * (r.deployed_diameter / 2) * r.deployed_height);
  }
  CHECK(design_report(make_design(25, 12)).stretched_len ==
        doctest::Approx(6.470).epsilon(1e-3));
}

TEST_CASE("reference figures exist only for catalog designs") {
  CHECK(reference_figures(make_design(25, 12)).has_value());
  CHECK(reference_figures(make_design(25, 18)).has_value());
  CHECK(reference_figures(make_design(25, 24)).has_value());
  CHECK_FALSE(reference_figures(make_design(25, 15)).has_value());
  CHECK_FALSE(reference_figures(make_design(20, 12)).has_value());
  const auto ref = reference_figures(make_design(25, 12));
  CHECK(ref->stretched_len == 6.470);
  CHECK(ref->stowed_height == 11.010);
  CHECK(ref->ratio_diameter == 7.702);
}

TEST_CASE("four bar and triangle fixtures are well formed") {
  const MechanismModel fb = make_four_bar();
  CHECK(fb.links.size() == 4);
  CHECK(fb.joints.size() == 4);
  CHECK_FALSE(fb.parametric);
  CHECK(link_gap(fb, 0.0) < 1e-12);

  const MechanismModel tri = make_triangle();
  CHECK(tri.links.size() == 3);
  CHECK(tri.joints.size() == 3);
}
