#pragma once

// 3D primitives for the growing-manipulator model: vectors, orientation
// frames, point-segment distance and segment-cylinder intersection.
// Everything here is a pure function on immutable inputs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sgr {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

// Orthonormality / direction degeneracy tolerance.
inline constexpr double kFrameTol = 1e-9;
// Points closer than this to a cylinder surface may classify either way.
inline constexpr double kBoundaryTol = 1e-6;

template <typename Scalar>
struct Segment3 {
  Vec3<Scalar> a;
  Vec3<Scalar> b;
};

// Axis fixed parallel to global z; base_center is the center of the bottom cap.
template <typename Scalar>
struct Cylinder {
  Vec3<Scalar> base_center;
  Scalar radius;
  Scalar height;
};

// Rotation columns are the local x, y, z axes expressed in world coordinates.
template <typename Scalar>
struct Frame {
  Vec3<Scalar> origin;
  Mat3<Scalar> rotation;
};

template <typename Scalar>
Mat3<Scalar> rotationX(Scalar t) {
  const Scalar c = std::cos(t), s = std::sin(t);
  Mat3<Scalar> m;
  m << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return m;
}

template <typename Scalar>
Mat3<Scalar> rotationY(Scalar t) {
  const Scalar c = std::cos(t), s = std::sin(t);
  Mat3<Scalar> m;
  m << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return m;
}

template <typename Scalar>
Mat3<Scalar> rotationZ(Scalar t) {
  const Scalar c = std::cos(t), s = std::sin(t);
  Mat3<Scalar> m;
  m << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return m;
}

enum class SegmentClamp { interior, at_a, at_b };

template <typename Scalar>
struct PointSegmentResult {
  Scalar distance;
  Vec3<Scalar> closest;
  SegmentClamp clamped;
};

// Closest point of a segment to p. Degenerate segments are allowed and
// resolve to endpoint a.
template <typename Scalar>
PointSegmentResult<Scalar> pointSegmentDistance(const Vec3<Scalar>& p,
                                                const Segment3<Scalar>& s) {
  const Vec3<Scalar> d = s.b - s.a;
  const Scalar dd = d.squaredNorm();
  PointSegmentResult<Scalar> out;
  if (dd <= Scalar(0)) {
    out.closest = s.a;
    out.clamped = SegmentClamp::at_a;
  } else {
    const Scalar t = (p - s.a).dot(d) / dd;
    if (t <= Scalar(0)) {
      out.closest = s.a;
      out.clamped = SegmentClamp::at_a;
    } else if (t >= Scalar(1)) {
      out.closest = s.b;
      out.clamped = SegmentClamp::at_b;
    } else {
      out.closest = s.a + t * d;
      out.clamped = SegmentClamp::interior;
    }
  }
  out.distance = (p - out.closest).norm();
  return out;
}

// True iff any point of the segment lies inside or on the closed cylinder
// volume. The feasible parameter set is the intersection of [0,1], the z-slab
// interval and the lateral quadratic interval; non-empty means intersection.
template <typename Scalar>
bool segmentCylinderIntersects(const Segment3<Scalar>& s,
                               const Cylinder<Scalar>& c) {
  const Vec3<Scalar> d = s.b - s.a;
  Scalar lo = 0, hi = 1;

  const Scalar z0 = s.a.z() - c.base_center.z();
  const Scalar dz = d.z();
  if (std::abs(dz) < Scalar(1e-15)) {
    if (z0 < Scalar(0) || z0 > c.height) return false;
  } else {
    Scalar t1 = -z0 / dz;
    Scalar t2 = (c.height - z0) / dz;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
    if (lo > hi) return false;
  }

  const Scalar qx = s.a.x() - c.base_center.x();
  const Scalar qy = s.a.y() - c.base_center.y();
  const Scalar A = d.x() * d.x() + d.y() * d.y();
  const Scalar B = 2 * (qx * d.x() + qy * d.y());
  const Scalar C = qx * qx + qy * qy - c.radius * c.radius;
  if (A < Scalar(1e-15)) {
    if (C > Scalar(0)) return false;
  } else {
    const Scalar disc = B * B - 4 * A * C;
    if (disc < Scalar(0)) return false;
    const Scalar sq = std::sqrt(disc);
    lo = std::max(lo, (-B - sq) / (2 * A));
    hi = std::min(hi, (-B + sq) / (2 * A));
    if (lo > hi) return false;
  }
  return true;
}

// Closed-volume membership, used for task validation.
template <typename Scalar>
bool pointInCylinder(const Vec3<Scalar>& p, const Cylinder<Scalar>& c) {
  const Scalar z = p.z() - c.base_center.z();
  if (z < Scalar(0) || z > c.height) return false;
  const Scalar dx = p.x() - c.base_center.x();
  const Scalar dy = p.y() - c.base_center.y();
  return dx * dx + dy * dy <= c.radius * c.radius;
}

// Child frame of a joint: rotate about local x then local y, then translate
// along the new local z by `length`.
template <typename Scalar>
Frame<Scalar> frameCompose(const Frame<Scalar>& parent, Scalar thetaX,
                           Scalar thetaY, Scalar length) {
  Frame<Scalar> child;
  child.rotation = parent.rotation * rotationX(thetaX) * rotationY(thetaY);
  child.origin = parent.origin + child.rotation.col(2) * length;
  return child;
}

// Angle in [0, pi]. Throws on (near-)zero input vectors.
template <typename Scalar>
Scalar angleBetween(const Vec3<Scalar>& u, const Vec3<Scalar>& v) {
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu <= Scalar(1e-12) || nv <= Scalar(1e-12)) {
    throw std::invalid_argument("angleBetween: zero-length vector");
  }
  Scalar c = u.dot(v) / (nu * nv);
  c = std::clamp(c, Scalar(-1), Scalar(1));
  return std::acos(c);
}

}  // namespace sgr
