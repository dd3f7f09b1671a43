#pragma once

#include <array>
#include <cmath>

namespace sfmio {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator-(Vec3 v) { return {-v.x, -v.y, -v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

/// Unit quaternion, Hamilton convention, scalar first (w, x, y, z).
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Quat operator-(Quat q) { return {-q.w, -q.x, -q.y, -q.z}; }
inline double dot(Quat a, Quat b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(Quat q) { return std::sqrt(dot(q, q)); }

/// Flips the sign so the first nonzero component of (w, x, y, z) is positive.
/// Every rotation then has a unique representative.
Quat canonical_sign(Quat q);

/// Normalizes to unit length. Throws GeometryError on a (near-)zero quaternion.
Quat normalized(Quat q);

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double operator()(int row, int col) const { return m[3 * row + col]; }
  double& operator()(int row, int col) { return m[3 * row + col]; }

  static Mat3 identity() { return Mat3{}; }
  /// diag(1, -1, -1); maps between the CV (y down, z forward) and the
  /// graphics (y up, z backward) camera axes.
  static Mat3 axis_flip() { return Mat3{{1, 0, 0, 0, -1, 0, 0, 0, -1}}; }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, Vec3 v);
Mat3 transposed(const Mat3& a);
double determinant(const Mat3& a);

/// Largest absolute entry of A*A^T - I; zero for a perfectly orthonormal A.
double orthonormality_error(const Mat3& a);

/// Row-major 4x4 homogeneous matrix.
struct Mat4 {
  std::array<double, 16> m{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

  double operator()(int row, int col) const { return m[4 * row + col]; }
  double& operator()(int row, int col) { return m[4 * row + col]; }

  Mat3 rotation_block() const;
  Vec3 translation_block() const;
};

Mat4 make_rigid_transform(const Mat3& rotation, Vec3 translation);

/// Rotation matrix of a unit quaternion (renormalized internally; tolerates
/// drift up to 1e-6). R(q) == R(-q). Throws GeometryError on a zero quaternion.
Mat3 quat_to_matrix(Quat q);

/// Inverse of quat_to_matrix via the numerically stable four-branch trace
/// method. The result has canonical sign (w >= 0). Throws GeometryError when
/// the matrix is not orthonormal with determinant +1 within `tolerance`.
Quat matrix_to_quat(const Mat3& r, double tolerance = 1e-6);

/// Rotation angle in radians between two unit quaternions, in [0, pi].
double rotation_angle_between(Quat a, Quat b);

}  // namespace sfmio
