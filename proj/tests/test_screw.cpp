#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "scissorkin/screw.hpp"

using namespace sck;
using std::numbers::pi;

namespace {

constexpr double deg(double d) { return d * pi / 180.0; }

std::mt19937 rng(20240817);

Vec3 rand_vec(double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

Twist rand_twist() { return {rand_vec(), rand_vec()}; }

// Pose of a body rotating about the fixed screw axis of V at angle phi.
Eigen::Isometry3d screw_pose(const Twist& unit_screw, double phi) {
  const Vec3 axis = unit_screw.omega.normalized();
  // point on the axis: for a revolute screw vel = p x axis, recover the
  // perpendicular foot p = axis x vel
  const Vec3 p = unit_screw.omega.cross(unit_screw.vel) /
                 unit_screw.omega.squaredNorm();
  Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
  T.translate(p).rotate(Eigen::AngleAxisd(phi, axis)).translate(-p);
  return T;
}

}  // namespace

TEST_CASE("scissor joint screw matches the closed form") {
  const Twist s = scissor_joint_screw({deg(80.0), 3.3225, 0.0});
  CHECK(s.omega.x() == 0.0);
  CHECK(s.omega.y() == 1.0);
  CHECK(s.omega.z() == 0.0);
  CHECK(s.vel.x() == doctest::Approx(2.5452).epsilon(1e-4));
  CHECK(s.vel.y() == 0.0);
  CHECK(s.vel.z() == doctest::Approx(2.1357).epsilon(1e-4));
}

TEST_CASE("scissor joint screw at the fold limits") {
  const double L = 1.7, n = 0.4;
  const Twist closed = scissor_joint_screw({0.0, L, n});
  CHECK(closed.vel.x() == doctest::Approx(L).epsilon(1e-15));
  CHECK(closed.vel.z() == doctest::Approx(n).epsilon(1e-15));
  const Twist flat = scissor_joint_screw({pi, L, n});
  CHECK(flat.vel.x() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(flat.vel.z() == doctest::Approx(n + L).epsilon(1e-15));
}

TEST_CASE("scissor joint screw rejects bad parameters") {
  CHECK_THROWS_AS(scissor_joint_screw({-0.1, 1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(scissor_joint_screw({pi + 0.1, 1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(scissor_joint_screw({1.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(scissor_joint_screw({1.0, -2.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(scissor_joint_screw({std::nan(""), 1.0, 0.0}), std::domain_error);
}

TEST_CASE("lie bracket of a twist with itself vanishes") {
  const Twist t = rand_twist();
  const Twist b = lie_bracket(t, t);
  CHECK(b.omega.norm() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b.vel.norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("pure translations commute") {
  const Twist t1{Vec3::Zero(), rand_vec()};
  const Twist t2{Vec3::Zero(), rand_vec()};
  const Twist b = lie_bracket(t1, t2);
  CHECK(b.omega.norm() == 0.0);
  CHECK(b.vel.norm() == 0.0);
}

TEST_CASE("bracket of unit rotations about x and y is rotation about z") {
  const Twist b = lie_bracket({Vec3(1, 0, 0), Vec3::Zero()}, {Vec3(0, 1, 0), Vec3::Zero()});
  CHECK((b.omega - Vec3(0, 0, 1)).norm() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b.vel.norm() == 0.0);
}

TEST_CASE("bracket agrees with the 4x4 homogeneous commutator") {
  auto hat = [](const Twist& t) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 1) = -t.omega.z(); m(0, 2) = t.omega.y();
    m(1, 0) = t.omega.z();  m(1, 2) = -t.omega.x();
    m(2, 0) = -t.omega.y(); m(2, 1) = t.omega.x();
    m.block<3, 1>(0, 3) = t.vel;
    return m;
  };
  for (int i = 0; i < 50; ++i) {
    const Twist a = rand_twist(), b = rand_twist();
    const Twist c = lie_bracket(a, b);
    const Eigen::Matrix4d comm = hat(a) * hat(b) - hat(b) * hat(a);
    CHECK((hat(c) - comm).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("bracket antisymmetry over 1000 random pairs") {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Twist a = rand_twist(), b = rand_twist();
    const Twist ab = lie_bracket(a, b), ba = lie_bracket(b, a);
    worst = std::max(worst, (ab + ba).stacked().cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("bracket satisfies the Jacobi identity") {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Twist a = rand_twist(), b = rand_twist(), c = rand_twist();
    const Twist s = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                    lie_bracket(c, lie_bracket(a, b));
    worst = std::max(worst, s.stacked().cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("bracket is bilinear in the joint rates") {
  const Twist a = rand_twist(), b = rand_twist();
  const double w1 = 0.37, w2 = -1.9;
  const Twist lhs = lie_bracket(a * w1, b * w2);
  const Twist rhs = lie_bracket(a, b) * (w1 * w2);
  CHECK((lhs - rhs).stacked().cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("ring rotation basics") {
  CHECK((ring_rotation(0, deg(30.0)) - Mat3::Identity()).norm() == 0.0);
  const Mat3 r = ring_rotation(1, deg(30.0));
  CHECK(r(0, 0) == doctest::Approx(0.86603).epsilon(1e-5));
  CHECK(r(0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(r(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r(2, 2) == 1.0);
  CHECK((ring_rotation(12, 2 * pi / 12) - Mat3::Identity()).norm() < 1e-12);
  CHECK_THROWS_AS(ring_rotation(-1, deg(30.0)), std::domain_error);
}

TEST_CASE("ring rotations compose additively") {
  const double a = 2 * pi / 7;
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) {
      const Mat3 lhs = ring_rotation(j, a) * ring_rotation(k, a);
      CHECK((lhs - ring_rotation(j + k, a)).norm() < 1e-12);
    }
}

TEST_CASE("rotate twist rotates both blocks and preserves norms") {
  const Twist t = rand_twist();
  CHECK((rotate_twist(Mat3::Identity(), t) - t).stacked().norm() == 0.0);

  const Twist r = rotate_twist(ring_rotation(1, deg(90.0)), {Vec3(1, 0, 0), Vec3::Zero()});
  CHECK((r.omega - Vec3(0, 1, 0)).norm() < 1e-15);

  const Mat3 R = ring_rotation(1, deg(30.0));
  const Twist back = rotate_twist(R.transpose(), rotate_twist(R, t));
  CHECK((back - t).stacked().cwiseAbs().maxCoeff() < 1e-14);
  CHECK(rotate_twist(R, t).omega.norm() == doctest::Approx(t.omega.norm()).epsilon(1e-12));
  CHECK(rotate_twist(R, t).vel.norm() == doctest::Approx(t.vel.norm()).epsilon(1e-12));

  Mat3 bad = Mat3::Identity();
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(rotate_twist(bad, t), std::domain_error);
}

TEST_CASE("point velocity extraction") {
  const auto [w0, v0] = twist_point_velocity({Vec3::Zero(), Vec3::Zero()}, rand_vec());
  CHECK(w0.norm() == 0.0);
  CHECK(v0.norm() == 0.0);

  const auto [w, v] = twist_point_velocity({Vec3(0, 0, 1), Vec3::Zero()}, Vec3(1, 0, 0));
  CHECK((w - Vec3(0, 0, 1)).norm() == 0.0);
  CHECK((v - Vec3(0, 1, 0)).norm() < 1e-15);
}

TEST_CASE("point velocity matches finite differences of the screw motion") {
  for (int i = 0; i < 20; ++i) {
    Twist S{rand_vec().normalized(), Vec3::Zero()};
    const Vec3 p = rand_vec(2.0);
    S.vel = p.cross(S.omega);  // revolute axis through p
    const double w = 0.8;
    const Vec3 r = rand_vec(2.0);

    const auto [omega, v] = twist_point_velocity(S * w, r);
    const double h = 1e-6;
    const Vec3 fd =
        (screw_pose(S, w * h) * r - screw_pose(S, -w * h) * r) / (2 * h);
    CHECK((v - fd).norm() / (fd.norm() + 1e-9) < 1e-6);
    CHECK((omega - S.omega * w).norm() < 1e-15);
  }
}

TEST_CASE("point acceleration extraction") {
  const auto [e0, a0] =
      spatial_accel_point(SpatialAccel{}, Vec3::Zero(), Vec3::Zero(), rand_vec());
  CHECK(e0.norm() == 0.0);
  CHECK(a0.norm() == 0.0);

  // pure centripetal: spinning about z, point on the x axis
  const auto [e, a] =
      spatial_accel_point(SpatialAccel{}, Vec3(0, 0, 1), Vec3::Zero(), Vec3(1, 0, 0));
  CHECK(e.norm() == 0.0);
  CHECK((a - Vec3(-1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("point acceleration matches second differences of the screw motion") {
  for (int i = 0; i < 20; ++i) {
    Twist S{rand_vec().normalized(), Vec3::Zero()};
    const Vec3 p = rand_vec(2.0);
    S.vel = p.cross(S.omega);
    const double w = 0.6, e = 0.25;  // phi(t) = w t + e t^2 / 2 about a fixed axis
    const Vec3 r = rand_vec(2.0);

    const Twist V = S * w;
    SpatialAccel A;
    A.eps = S.omega * e;
    A.lin = S.vel * e;  // fixed axis: spatial accel is just eps along the screw
    const auto [eps, a] = spatial_accel_point(A, V.omega, V.vel, r);

    const double h = 1e-4;
    auto at = [&](double t) { return Vec3(screw_pose(S, w * t + 0.5 * e * t * t) * r); };
    const Vec3 fd = (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
    CHECK((a - fd).norm() / (fd.norm() + 1e-9) < 1e-4);
    CHECK((eps - S.omega * e).norm() < 1e-15);
  }
}

TEST_CASE("is_rotation screens non-orthonormal matrices") {
  CHECK(is_rotation(Mat3::Identity()));
  CHECK(is_rotation(ring_rotation(3, 0.41)));
  Mat3 refl = Mat3::Identity();
  refl(2, 2) = -1.0;  // det -1
  CHECK_FALSE(is_rotation(refl));
  CHECK_FALSE(is_rotation(Mat3::Identity() * 1.001));
}
