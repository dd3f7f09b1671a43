#include "sfmio/geometry.hpp"

#include <cmath>

#include "sfmio/error.hpp"

namespace sfmio {

Vec3 camera_center(const CameraPose& pose) {
  return -(transposed(quat_to_matrix(pose.q)) * pose.t);
}

GraphicsCameraTransform w2c_to_c2w_graphics(const CameraPose& pose) {
  const Mat3 r_t = transposed(quat_to_matrix(pose.q));
  return {make_rigid_transform(r_t * Mat3::axis_flip(), camera_center(pose))};
}

CameraPose graphics_to_w2c(const GraphicsCameraTransform& transform) {
  const Mat4& m = transform.matrix;
  if (m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 || m(3, 3) != 1.0)
    throw GeometryError("invalid rotation: bottom row must be (0, 0, 0, 1)");
  // Block = R^T * D, so R = D * Block^T. det(Block) must be +1 since
  // det(D) = +1; a mirrored block is rejected by matrix_to_quat.
  const Mat3 rotation = Mat3::axis_flip() * transposed(m.rotation_block());
  const Quat q = matrix_to_quat(rotation);
  const Vec3 center = m.translation_block();
  return make_pose(q, -(quat_to_matrix(q) * center));
}

Vec2 apply_distortion(CameraModel model, std::span<const double> coeffs, Vec2 p) {
  if (static_cast<int>(coeffs.size()) != distortion_size(model))
    throw GeometryError("distortion coefficient count does not match camera model");
  switch (model) {
    case CameraModel::kSimplePinhole:
    case CameraModel::kPinhole:
      return p;
    case CameraModel::kSimpleRadial: {
      const double r2 = p.x * p.x + p.y * p.y;
      return (1.0 + coeffs[0] * r2) * p;
    }
    case CameraModel::kRadial: {
      const double r2 = p.x * p.x + p.y * p.y;
      return (1.0 + coeffs[0] * r2 + coeffs[1] * r2 * r2) * p;
    }
    case CameraModel::kOpenCV: {
      const double k1 = coeffs[0], k2 = coeffs[1], p1 = coeffs[2], p2 = coeffs[3];
      const double r2 = p.x * p.x + p.y * p.y;
      const double radial = 1.0 + k1 * r2 + k2 * r2 * r2;
      return {p.x * radial + 2.0 * p1 * p.x * p.y + p2 * (r2 + 2.0 * p.x * p.x),
              p.y * radial + p1 * (r2 + 2.0 * p.y * p.y) + 2.0 * p2 * p.x * p.y};
    }
  }
  throw GeometryError("unknown camera model");
}

std::optional<Vec2> project(const CameraIntrinsics& intr, const CameraPose& pose,
                            Vec3 world_point, bool use_distortion) {
  const Vec3 cam = quat_to_matrix(pose.q) * world_point + pose.t;
  if (cam.z <= 0.0) return std::nullopt;
  Vec2 n{cam.x / cam.z, cam.y / cam.z};
  if (use_distortion) n = apply_distortion(intr.model, intr.distortion, n);
  return Vec2{intr.fx * n.x + intr.cx, intr.fy * n.y + intr.cy};
}

Vec3 unproject_pixel(const CameraIntrinsics& intr, Vec2 pixel, double depth) {
  if (!std::isfinite(depth) || depth <= 0.0)
    throw GeometryError("invalid depth: must be finite and positive");
  return {(pixel.x - intr.cx) / intr.fx * depth,
          (pixel.y - intr.cy) / intr.fy * depth, depth};
}

FovShift fov_and_shift(const CameraIntrinsics& intr) {
  const double longest = std::max(intr.width, intr.height);
  FovShift out;
  out.fov_x = 2.0 * std::atan(intr.width / (2.0 * intr.fx));
  if (longest > 0.0) {
    out.shift_x = (intr.width / 2.0 - intr.cx) / longest;
    out.shift_y = (intr.cy - intr.height / 2.0) / longest;
  }
  return out;
}

Vec3 camera_to_world(const CameraPose& pose, Vec3 camera_point) {
  return transposed(quat_to_matrix(pose.q)) * (camera_point - pose.t);
}

std::array<Vec3, 4> image_plane_corners(const CameraView& view,
                                        const CameraIntrinsics& intr,
                                        double distance) {
  const double w = intr.width;
  const double h = intr.height;
  const Vec2 corners[4] = {{0, 0}, {w, 0}, {w, h}, {0, h}};
  std::array<Vec3, 4> out;
  for (int i = 0; i < 4; ++i)
    out[i] = camera_to_world(view.pose, unproject_pixel(intr, corners[i], distance));
  return out;
}

}  // namespace sfmio
