#include "scissorkin/screw.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sck {

Twist scissor_joint_screw(const ScrewAxisParams& p) {
  if (!std::isfinite(p.theta) || !std::isfinite(p.L) || !std::isfinite(p.n))
    throw std::domain_error("scissor_joint_screw: non-finite parameter");
  if (p.theta < 0.0 || p.theta > std::numbers::pi)
    throw std::domain_error("scissor_joint_screw: theta outside [0, pi]");
  if (p.L <= 0.0) throw std::domain_error("scissor_joint_screw: L must be positive");
  const double half = p.theta / 2.0;
  return {Vec3(0, 1, 0), Vec3(p.L * std::cos(half), 0, p.n + p.L * std::sin(half))};
}

Twist revolute_screw(const Vec3& axis, const Vec3& p) {
  return {axis, p.cross(axis)};
}

Twist lie_bracket(const Twist& a, const Twist& b) {
  return {a.omega.cross(b.omega), a.omega.cross(b.vel) - b.omega.cross(a.vel)};
}

Mat3 ring_rotation(int j, double alpha) {
  if (j < 0) throw std::domain_error("ring_rotation: unit index must be >= 0");
  const double ang = j * alpha;
  const double c = std::cos(ang), s = std::sin(ang);
  Mat3 R;
  R << c, -s, 0, s, c, 0, 0, 0, 1;
  return R;
}

bool is_rotation(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(R.determinant() - 1.0) <= tol;
}

Twist rotate_twist(const Mat3& R, const Twist& t) {
  if (!is_rotation(R)) throw std::domain_error("rotate_twist: R is not a rotation");
  return {R * t.omega, R * t.vel};
}

std::pair<Vec3, Vec3> twist_point_velocity(const Twist& V, const Vec3& r) {
  return {V.omega, V.vel + V.omega.cross(r)};
}

std::pair<Vec3, Vec3> spatial_accel_point(const SpatialAccel& A, const Vec3& omega,
                                          const Vec3& v_origin, const Vec3& r) {
  const Vec3 a = A.lin + omega.cross(v_origin) + A.eps.cross(r) + omega.cross(omega.cross(r));
  return {A.eps, a};
}

}  // namespace sck
