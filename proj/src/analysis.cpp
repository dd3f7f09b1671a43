#include "sfmio/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include <json.hpp>

#include "sfmio/geometry.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

SceneStats compute_stats(const Reconstruction& rec) {
  SceneStats stats;
  stats.camera_count = rec.cameras.size();
  stats.registered_cameras = rec.cameras.size();
  stats.point_count = rec.points.size();
  stats.observation_count = rec.observations.size();

  if (!rec.points.empty()) {
    Vec3 lo = rec.points.front().position;
    Vec3 hi = lo;
    double error_sum = 0.0, error_max = 0.0;
    std::size_t error_count = 0;
    for (const Point3D& p : rec.points) {
      lo = {std::min(lo.x, p.position.x), std::min(lo.y, p.position.y),
            std::min(lo.z, p.position.z)};
      hi = {std::max(hi.x, p.position.x), std::max(hi.y, p.position.y),
            std::max(hi.z, p.position.z)};
      if (p.error) {
        error_sum += *p.error;
        error_max = std::max(error_max, *p.error);
        ++error_count;
      }
    }
    stats.bounding_box = {lo, hi};
    if (error_count > 0) {
      stats.mean_point_error = error_sum / error_count;
      stats.max_point_error = error_max;
    }
  }
  return stats;
}

ReprojectionReport reprojection_report(const Reconstruction& rec, bool use_distortion) {
  ReprojectionReport report;
  std::map<std::int64_t, double> squared_sum;
  double global_squared_sum = 0.0;

  for (const Observation& obs : rec.observations) {
    const auto view_it = rec.cameras.find(obs.camera_id);
    if (view_it == rec.cameras.end() || obs.point_index < 0 ||
        obs.point_index >= static_cast<std::int64_t>(rec.points.size())) {
      ++report.skipped;
      continue;
    }
    const CameraView& view = view_it->second;
    const auto intr_it = rec.intrinsics_pool.find(view.intrinsics_id);
    if (intr_it == rec.intrinsics_pool.end()) {
      ++report.skipped;
      continue;
    }
    const auto projected = project(intr_it->second, view.pose,
                                   rec.points[obs.point_index].position, use_distortion);
    if (!projected) {
      ++report.behind_camera;
      continue;
    }
    const double error = norm(*projected - obs.uv);
    CameraReprojection& cam = report.per_camera[obs.camera_id];
    cam.max_error = std::max(cam.max_error, error);
    ++cam.evaluated;
    squared_sum[obs.camera_id] += error * error;
    global_squared_sum += error * error;
    ++report.evaluated;
  }

  for (auto& [id, cam] : report.per_camera)
    cam.rmse = std::sqrt(squared_sum[id] / cam.evaluated);
  if (report.evaluated > 0)
    report.global_rmse = std::sqrt(global_squared_sum / report.evaluated);
  return report;
}

namespace {

std::string vec3_text(Vec3 v) {
  return "(" + format_g17(v.x) + ", " + format_g17(v.y) + ", " + format_g17(v.z) + ")";
}

}  // namespace

void print_stats(const SceneStats& stats, std::ostream& out) {
  out << std::left;
  out << std::setw(22) << "cameras" << stats.camera_count << '\n';
  out << std::setw(22) << "points" << stats.point_count << '\n';
  out << std::setw(22) << "observations" << stats.observation_count << '\n';
  if (stats.bounding_box) {
    out << std::setw(22) << "bounding box min" << vec3_text(stats.bounding_box->first)
        << '\n';
    out << std::setw(22) << "bounding box max" << vec3_text(stats.bounding_box->second)
        << '\n';
  } else {
    out << std::setw(22) << "bounding box" << "empty\n";
  }
  if (stats.mean_point_error)
    out << std::setw(22) << "mean point error" << *stats.mean_point_error << '\n';
  if (stats.max_point_error)
    out << std::setw(22) << "max point error" << *stats.max_point_error << '\n';
}

std::string stats_to_json(const SceneStats& stats) {
  nlohmann::json doc;
  doc["camera_count"] = stats.camera_count;
  doc["registered_cameras"] = stats.registered_cameras;
  doc["point_count"] = stats.point_count;
  doc["observation_count"] = stats.observation_count;
  if (stats.bounding_box) {
    const auto& [lo, hi] = *stats.bounding_box;
    doc["bbox_min"] = {lo.x, lo.y, lo.z};
    doc["bbox_max"] = {hi.x, hi.y, hi.z};
  } else {
    doc["bbox_min"] = nullptr;
    doc["bbox_max"] = nullptr;
  }
  doc["mean_point_error"] =
      stats.mean_point_error ? nlohmann::json(*stats.mean_point_error) : nullptr;
  doc["max_point_error"] =
      stats.max_point_error ? nlohmann::json(*stats.max_point_error) : nullptr;
  return doc.dump(1);
}

void print_reprojection(const ReprojectionReport& report, std::ostream& out) {
  out << std::left;
  if (report.global_rmse)
    out << std::setw(22) << "global rmse [px]" << *report.global_rmse << '\n';
  else
    out << std::setw(22) << "global rmse [px]" << "n/a (no observations evaluated)\n";
  out << std::setw(22) << "evaluated" << report.evaluated << '\n';
  out << std::setw(22) << "behind camera" << report.behind_camera << '\n';
  out << std::setw(22) << "skipped" << report.skipped << '\n';
  for (const auto& [id, cam] : report.per_camera) {
    out << "  camera " << std::setw(14) << id << "rmse " << cam.rmse << "  max "
        << cam.max_error << "  n " << cam.evaluated << '\n';
  }
}

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDanglingIntrinsics:
      return "dangling_intrinsics";
    case ViolationKind::kDanglingObservationCamera:
      return "dangling_observation_camera";
    case ViolationKind::kPointIndexOutOfRange:
      return "point_index_out_of_range";
    case ViolationKind::kNonUnitQuaternion:
      return "non_unit_quaternion";
    case ViolationKind::kNonPositiveFocal:
      return "non_positive_focal";
  }
  return "unknown";
}

std::string validation_to_json(const std::vector<Violation>& violations,
                               const ReprojectionReport& report) {
  nlohmann::json doc;
  nlohmann::json list = nlohmann::json::array();
  for (const Violation& v : violations)
    list.push_back({{"kind", std::string(violation_kind_name(v.kind))},
                    {"message", v.message}});
  doc["violations"] = std::move(list);

  nlohmann::json repro;
  repro["global_rmse"] = report.global_rmse ? nlohmann::json(*report.global_rmse) : nullptr;
  repro["evaluated"] = report.evaluated;
  repro["behind_camera"] = report.behind_camera;
  repro["skipped"] = report.skipped;
  nlohmann::json cams = nlohmann::json::array();
  for (const auto& [id, cam] : report.per_camera)
    cams.push_back({{"camera_id", id},
                    {"rmse", cam.rmse},
                    {"max_error", cam.max_error},
                    {"evaluated", cam.evaluated}});
  repro["per_camera"] = std::move(cams);
  doc["reprojection"] = std::move(repro);
  return doc.dump(1);
}

}  // namespace sfmio
