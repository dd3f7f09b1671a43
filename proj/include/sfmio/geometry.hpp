#pragma once

#include <array>
#include <optional>
#include <span>

#include "sfmio/math.hpp"
#include "sfmio/scene.hpp"

namespace sfmio {

/// Camera-to-world transform in the graphics axis convention: the camera
/// looks down -z with +y up and +x right.
struct GraphicsCameraTransform {
  Mat4 matrix;
};

/// Camera position in world coordinates: C = -R(q)^T * t.
Vec3 camera_center(const CameraPose& pose);

/// Converts a canonical CV world-to-camera pose into a graphics
/// camera-to-world transform: M = [R^T * D | C] with D = diag(1, -1, -1).
/// A point at CV camera coordinates (0, 0, d) maps to local (0, 0, -d).
GraphicsCameraTransform w2c_to_c2w_graphics(const CameraPose& pose);

/// Exact inverse of w2c_to_c2w_graphics. Throws GeometryError when the upper
/// 3x3 block is not a proper rotation composed with D.
CameraPose graphics_to_w2c(const GraphicsCameraTransform& transform);

/// Applies the model's distortion to normalized image coordinates.
/// SIMPLE_PINHOLE / PINHOLE: identity. SIMPLE_RADIAL: p * (1 + k r^2).
/// RADIAL: p * (1 + k1 r^2 + k2 r^4). OPENCV (k1, k2, p1, p2): the radial
/// term plus the tangential term. Throws on a coefficient-count mismatch.
Vec2 apply_distortion(CameraModel model, std::span<const double> coeffs, Vec2 p);

/// Projects a world point to continuous pixel coordinates. Returns nullopt
/// when the point lies on or behind the camera plane (z <= 0).
std::optional<Vec2> project(const CameraIntrinsics& intrinsics, const CameraPose& pose,
                            Vec3 world_point, bool use_distortion = true);

/// Back-projects a continuous pixel coordinate at the given depth (world
/// units along +z) into the camera frame. Distortion is intentionally not
/// applied: MVS depth maps are computed on undistorted images.
/// Throws GeometryError when depth is non-positive or non-finite.
Vec3 unproject_pixel(const CameraIntrinsics& intrinsics, Vec2 pixel, double depth);

struct FovShift {
  double fov_x = 0.0;    // horizontal field of view, radians
  double shift_x = 0.0;  // principal point offset, normalized by max(w, h)
  double shift_y = 0.0;
};

/// fov_x = 2 atan(w / 2fx); shift_x = (w/2 - cx) / max(w, h);
/// shift_y = (cy - h/2) / max(w, h).
FovShift fov_and_shift(const CameraIntrinsics& intrinsics);

/// World positions of the image rectangle pushed `distance` units along the
/// optical axis, in image order: top-left, top-right, bottom-right,
/// bottom-left. Throws GeometryError on a non-positive distance.
std::array<Vec3, 4> image_plane_corners(const CameraView& view,
                                        const CameraIntrinsics& intrinsics,
                                        double distance);

/// World position of a camera-frame point: X = R^T * (x_cam - t).
Vec3 camera_to_world(const CameraPose& pose, Vec3 camera_point);

}  // namespace sfmio
