#include "sfmio/math.hpp"

#include <algorithm>
#include <cmath>

#include "sfmio/error.hpp"

namespace sfmio {

Quat canonical_sign(Quat q) {
  for (double c : {q.w, q.x, q.y, q.z}) {
    if (c > 0.0) return q;
    if (c < 0.0) return -q;
  }
  return q;
}

Quat normalized(Quat q) {
  const double n = norm(q);
  if (!(n > 1e-12)) throw GeometryError("degenerate quaternion (zero norm)");
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
  return out;
}

Vec3 operator*(const Mat3& a, Vec3 v) {
  return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
          a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
          a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

Mat3 transposed(const Mat3& a) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = a(c, r);
  return out;
}

double determinant(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double orthonormality_error(const Mat3& a) {
  const Mat3 aat = a * transposed(a);
  double worst = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const double expected = (r == c) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(aat(r, c) - expected));
    }
  return worst;
}

Mat3 Mat4::rotation_block() const {
  Mat3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = (*this)(r, c);
  return out;
}

Vec3 Mat4::translation_block() const {
  return {(*this)(0, 3), (*this)(1, 3), (*this)(2, 3)};
}

Mat4 make_rigid_transform(const Mat3& rotation, Vec3 translation) {
  Mat4 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = rotation(r, c);
  out(0, 3) = translation.x;
  out(1, 3) = translation.y;
  out(2, 3) = translation.z;
  return out;
}

Mat3 quat_to_matrix(Quat q) {
  q = normalized(q);
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 r{};
  r(0, 0) = 1.0 - 2.0 * (y * y + z * z);
  r(0, 1) = 2.0 * (x * y - w * z);
  r(0, 2) = 2.0 * (x * z + w * y);
  r(1, 0) = 2.0 * (x * y + w * z);
  r(1, 1) = 1.0 - 2.0 * (x * x + z * z);
  r(1, 2) = 2.0 * (y * z - w * x);
  r(2, 0) = 2.0 * (x * z - w * y);
  r(2, 1) = 2.0 * (y * z + w * x);
  r(2, 2) = 1.0 - 2.0 * (x * x + y * y);
  return r;
}

Quat matrix_to_quat(const Mat3& r, double tolerance) {
  if (orthonormality_error(r) > tolerance)
    throw GeometryError("invalid rotation: matrix is not orthonormal");
  if (std::abs(determinant(r) - 1.0) > std::max(tolerance, 1e-9))
    throw GeometryError("invalid rotation: determinant is not +1");

  // Shepperd's method: pick the branch with the largest diagonal pivot.
  Quat q{};
  const double trace = r(0, 0) + r(1, 1) + r(2, 2);
  if (trace > 0.0) {
    const double s = std::sqrt(trace + 1.0) * 2.0;
    q.w = 0.25 * s;
    q.x = (r(2, 1) - r(1, 2)) / s;
    q.y = (r(0, 2) - r(2, 0)) / s;
    q.z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    q.w = (r(2, 1) - r(1, 2)) / s;
    q.x = 0.25 * s;
    q.y = (r(0, 1) + r(1, 0)) / s;
    q.z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    q.w = (r(0, 2) - r(2, 0)) / s;
    q.x = (r(0, 1) + r(1, 0)) / s;
    q.y = 0.25 * s;
    q.z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    q.w = (r(1, 0) - r(0, 1)) / s;
    q.x = (r(0, 2) + r(2, 0)) / s;
    q.y = (r(1, 2) + r(2, 1)) / s;
    q.z = 0.25 * s;
  }
  return canonical_sign(normalized(q));
}

double rotation_angle_between(Quat a, Quat b) {
  const double d = std::clamp(std::abs(dot(a, b)), 0.0, 1.0);
  return 2.0 * std::acos(d);
}

}  // namespace sfmio
