// Screw-theoretic value types: twists, spatial accelerations, planar-hinge
// screws, and the se(3) Lie bracket.
//
// Conventions used across the library:
//   * a 6-component screw is stored as (angular block; linear block)
//   * the linear block of a twist is the velocity of the body-fixed point
//     currently at the origin
//   * the linear block of a spatial acceleration is d/dt of the twist's
//     linear block (i.e. a_origin - omega x v_origin)
//   * angles are radians everywhere in memory; degrees only at I/O boundaries

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>
#include <utility>

namespace sck {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

struct Twist {
  Vec3 omega = Vec3::Zero();
  Vec3 vel = Vec3::Zero();

  Twist() = default;
  Twist(const Vec3& w, const Vec3& v) : omega(w), vel(v) {}

  static Twist Zero() { return {}; }

  Vec6 stacked() const {
    Vec6 s;
    s << omega, vel;
    return s;
  }
  static Twist from_stacked(const Vec6& s) {
    return {s.head<3>(), s.tail<3>()};
  }

  Twist operator+(const Twist& o) const { return {omega + o.omega, vel + o.vel}; }
  Twist operator-(const Twist& o) const { return {omega - o.omega, vel - o.vel}; }
  Twist operator*(double k) const { return {omega * k, vel * k}; }
  Twist& operator+=(const Twist& o) {
    omega += o.omega;
    vel += o.vel;
    return *this;
  }
  double norm() const { return stacked().norm(); }
};

inline Twist operator*(double k, const Twist& t) { return t * k; }

struct SpatialAccel {
  Vec3 eps = Vec3::Zero();
  Vec3 lin = Vec3::Zero();

  SpatialAccel() = default;
  SpatialAccel(const Vec3& e, const Vec3& l) : eps(e), lin(l) {}

  static SpatialAccel Zero() { return {}; }

  SpatialAccel operator+(const SpatialAccel& o) const { return {eps + o.eps, lin + o.lin}; }
  SpatialAccel operator*(double k) const { return {eps * k, lin * k}; }
  SpatialAccel& operator+=(const SpatialAccel& o) {
    eps += o.eps;
    lin += o.lin;
    return *this;
  }
  SpatialAccel& operator+=(const Twist& t) {
    eps += t.omega;
    lin += t.vel;
    return *this;
  }
};

// Half-angle parameters of a scissor-cell hinge: opening angle theta, rod
// half-span L, and horizontal cell offset n along local X.
struct ScrewAxisParams {
  double theta;
  double L;
  double n = 0.0;
};

// Unit screw of a hinge parallel to +Y at planar position
// (x, z) = (n + L*sin(theta/2), -L*cos(theta/2)); components come out as
// (0, 1, 0, L*cos(theta/2), 0, n + L*sin(theta/2)).
// Requires theta in [0, pi], L > 0, finite n; throws std::domain_error.
Twist scissor_joint_screw(const ScrewAxisParams& p);

// Unit screw of a revolute joint with axis direction `axis` (unit vector)
// passing through point p: (axis; p x axis). The mechanism generators build
// every joint screw through this.
Twist revolute_screw(const Vec3& axis, const Vec3& p);

// se(3) bracket ((w1 x w2); (w1 x v2 - w2 x v1)); equals the commutator of
// the 4x4 homogeneous matrix forms. Antisymmetric, bilinear, satisfies the
// Jacobi identity.
Twist lie_bracket(const Twist& a, const Twist& b);

// Rotation by j*alpha about +Z. Requires j >= 0.
Mat3 ring_rotation(int j, double alpha);

// True when R'R = I within tol and det(R) = +1.
bool is_rotation(const Mat3& R, double tol = 1e-9);

// Rotates both blocks of a twist (pure-rotation frame change; valid when both
// frames share an origin on the rotation axis). Throws std::domain_error for
// a non-orthonormal R.
Twist rotate_twist(const Mat3& R, const Twist& t);

// Angular velocity and velocity of the body-fixed point at position r:
// (omega, vel + omega x r).
std::pair<Vec3, Vec3> twist_point_velocity(const Twist& V, const Vec3& r);

// Angular acceleration and acceleration of the body-fixed point at r.
// v_origin is the linear block of the body's twist; the full expansion is
//   a(r) = lin + omega x v_origin + eps x r + omega x (omega x r).
std::pair<Vec3, Vec3> spatial_accel_point(const SpatialAccel& A, const Vec3& omega,
                                          const Vec3& v_origin, const Vec3& r);

}  // namespace sck
