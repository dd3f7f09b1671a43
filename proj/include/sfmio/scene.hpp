#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfmio/math.hpp"

namespace sfmio {

/// Camera models, following the Colmap numbering 0..4.
enum class CameraModel {
  kSimplePinhole,  // f, cx, cy
  kPinhole,        // fx, fy, cx, cy
  kSimpleRadial,   // f, cx, cy, k
  kRadial,         // f, cx, cy, k1, k2
  kOpenCV,         // fx, fy, cx, cy, k1, k2, p1, p2
};

std::string_view camera_model_name(CameraModel model);
std::optional<CameraModel> camera_model_from_name(std::string_view name);
int camera_model_id(CameraModel model);
std::optional<CameraModel> camera_model_from_id(int id);

/// Number of distortion coefficients the model carries (0, 0, 1, 2, 4).
int distortion_size(CameraModel model);
/// Number of parameters in the model's Colmap parameter vector (3, 4, 4, 5, 8).
int camera_param_count(CameraModel model);
/// True for single-focal models that require fx == fy when serialized.
bool has_single_focal(CameraModel model);

struct CameraIntrinsics {
  CameraModel model = CameraModel::kSimplePinhole;
  int width = 0;   // pixels; 0 = unknown (e.g. NVM inputs)
  int height = 0;
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  std::vector<double> distortion;  // length per distortion_size(model)
};

/// Parameter vector in the model's Colmap order. Throws RepresentabilityError
/// when fx != fy for a single-focal model.
std::vector<double> camera_params(const CameraIntrinsics& intrinsics);
/// Inverse of camera_params. Throws ParseError on a length mismatch.
CameraIntrinsics intrinsics_from_params(CameraModel model, int width, int height,
                                        std::span<const double> params);

/// World-to-camera pose in CV axes: x_cam = R(q) * x_world + t, camera looks
/// +z, y down. The quaternion is unit with canonical sign (w >= 0).
struct CameraPose {
  Quat q;
  Vec3 t;
};

/// Normalizes the quaternion and applies the canonical sign.
CameraPose make_pose(Quat q, Vec3 t);

struct CameraView {
  std::int64_t id = 0;
  std::string image_name;  // path relative to the reconstruction root
  std::int64_t intrinsics_id = 0;
  CameraPose pose;
};

struct TrackElement {
  std::int64_t camera_id = 0;
  std::int64_t feature_index = 0;
};

struct Point3D {
  Vec3 position;
  std::array<std::uint8_t, 3> color{255, 255, 255};
  std::optional<double> error;  // reprojection error as stored by the source
  std::vector<TrackElement> track;
};

/// One 2D measurement of a 3D point, in the source image's continuous pixel
/// frame (the center of pixel (0, 0) is at (0.5, 0.5)).
struct Observation {
  std::int64_t camera_id = 0;
  std::int64_t point_index = 0;
  Vec2 uv;
};

struct SceneSource {
  std::string format;
  std::string root_path;
  /// Dense point index -> point id in the source file, when the source
  /// assigns ids (e.g. Colmap's 64-bit point ids).
  std::map<std::int64_t, std::int64_t> point_ids;
};

/// The canonical scene every parser targets and every writer reads.
/// Immutable by convention after construction; safe to share read-only.
struct Reconstruction {
  std::map<std::int64_t, CameraView> cameras;
  std::map<std::int64_t, CameraIntrinsics> intrinsics_pool;
  std::vector<Point3D> points;
  std::vector<Observation> observations;
  SceneSource source;
};

enum class ViolationKind {
  kDanglingIntrinsics,
  kDanglingObservationCamera,
  kPointIndexOutOfRange,
  kNonUnitQuaternion,
  kNonPositiveFocal,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

/// Referential validation. An empty report means the scene is consistent.
/// Violations are data, not failures; this never throws.
std::vector<Violation> validate_references(const Reconstruction& rec);

/// Structural equality over cameras, intrinsics, points and observations.
/// Poses and intrinsics compare within `tolerance`, names and colors exactly,
/// observations as an order-insensitive set. Provenance is ignored.
bool approx_equal(const Reconstruction& a, const Reconstruction& b,
                  double tolerance);

}  // namespace sfmio
