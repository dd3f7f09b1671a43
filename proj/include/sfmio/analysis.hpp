#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "sfmio/scene.hpp"

namespace sfmio {

struct SceneStats {
  std::size_t camera_count = 0;
  std::size_t point_count = 0;
  std::size_t observation_count = 0;
  std::size_t registered_cameras = 0;  // the canonical model keeps only registered views
  std::optional<std::pair<Vec3, Vec3>> bounding_box;  // (min, max); absent when empty
  std::optional<double> mean_point_error;
  std::optional<double> max_point_error;
};

SceneStats compute_stats(const Reconstruction& rec);

struct CameraReprojection {
  double rmse = 0.0;
  double max_error = 0.0;
  std::size_t evaluated = 0;
};

/// evaluated + behind_camera + skipped equals the total observation count.
struct ReprojectionReport {
  std::map<std::int64_t, CameraReprojection> per_camera;
  std::optional<double> global_rmse;  // absent when nothing was evaluated
  std::size_t evaluated = 0;
  std::size_t behind_camera = 0;
  std::size_t skipped = 0;  // dangling references, counted but not judged here
};

/// Projects every observed point into its camera (with stored distortion by
/// default; `use_distortion = false` isolates axis-convention bugs from
/// distortion bugs) and accumulates ||projected - stored uv||. RMSE is the
/// root mean of the squared Euclidean errors, so a constant offset v yields
/// exactly ||v|| on an otherwise noiseless scene.
ReprojectionReport reprojection_report(const Reconstruction& rec,
                                       bool use_distortion = true);

// CLI renderings: aligned text and a JSON document with stable key names.
void print_stats(const SceneStats& stats, std::ostream& out);
std::string stats_to_json(const SceneStats& stats);
void print_reprojection(const ReprojectionReport& report, std::ostream& out);
std::string validation_to_json(const std::vector<Violation>& violations,
                               const ReprojectionReport& report);
std::string_view violation_kind_name(ViolationKind kind);

}  // namespace sfmio
