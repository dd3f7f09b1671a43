#include "sfmio/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sfmio/error.hpp"

namespace sfmio {

namespace {

struct ModelInfo {
  CameraModel model;
  std::string_view name;
  int param_count;
  int distortion_count;
  bool single_focal;
};

constexpr ModelInfo kModels[] = {
    {CameraModel::kSimplePinhole, "SIMPLE_PINHOLE", 3, 0, true},
    {CameraModel::kPinhole, "PINHOLE", 4, 0, false},
    {CameraModel::kSimpleRadial, "SIMPLE_RADIAL", 4, 1, true},
    {CameraModel::kRadial, "RADIAL", 5, 2, true},
    {CameraModel::kOpenCV, "OPENCV", 8, 4, false},
};

const ModelInfo& info(CameraModel model) {
  return kModels[static_cast<int>(model)];
}

}  // namespace

std::string_view camera_model_name(CameraModel model) { return info(model).name; }

std::optional<CameraModel> camera_model_from_name(std::string_view name) {
  for (const ModelInfo& m : kModels)
    if (m.name == name) return m.model;
  return std::nullopt;
}

int camera_model_id(CameraModel model) { return static_cast<int>(model); }

std::optional<CameraModel> camera_model_from_id(int id) {
  if (id < 0 || id >= static_cast<int>(std::size(kModels))) return std::nullopt;
  return kModels[id].model;
}

int distortion_size(CameraModel model) { return info(model).distortion_count; }
int camera_param_count(CameraModel model) { return info(model).param_count; }
bool has_single_focal(CameraModel model) { return info(model).single_focal; }

std::vector<double> camera_params(const CameraIntrinsics& intr) {
  if (static_cast<int>(intr.distortion.size()) != distortion_size(intr.model))
    throw RepresentabilityError("distortion coefficient count does not match camera model");
  std::vector<double> params;
  if (has_single_focal(intr.model)) {
    if (intr.fx != intr.fy)
      throw RepresentabilityError("fx != fy cannot be expressed by a single-focal model");
    params = {intr.fx, intr.cx, intr.cy};
  } else {
    params = {intr.fx, intr.fy, intr.cx, intr.cy};
  }
  params.insert(params.end(), intr.distortion.begin(), intr.distortion.end());
  return params;
}

CameraIntrinsics intrinsics_from_params(CameraModel model, int width, int height,
                                        std::span<const double> params) {
  if (static_cast<int>(params.size()) != camera_param_count(model)) {
    std::ostringstream msg;
    msg << "camera model " << camera_model_name(model) << " expects "
        << camera_param_count(model) << " parameters, got " << params.size();
    throw ParseError(msg.str());
  }
  CameraIntrinsics intr;
  intr.model = model;
  intr.width = width;
  intr.height = height;
  std::size_t i = 0;
  if (has_single_focal(model)) {
    intr.fx = intr.fy = params[i++];
  } else {
    intr.fx = params[i++];
    intr.fy = params[i++];
  }
  intr.cx = params[i++];
  intr.cy = params[i++];
  intr.distortion.assign(params.begin() + i, params.end());
  return intr;
}

CameraPose make_pose(Quat q, Vec3 t) {
  return CameraPose{canonical_sign(normalized(q)), t};
}

std::vector<Violation> validate_references(const Reconstruction& rec) {
  std::vector<Violation> out;
  const auto report = [&out](ViolationKind kind, std::string message) {
    out.push_back({kind, std::move(message)});
  };

  for (const auto& [id, view] : rec.cameras) {
    if (!rec.intrinsics_pool.count(view.intrinsics_id)) {
      std::ostringstream msg;
      msg << "camera " << id << " references missing intrinsics " << view.intrinsics_id;
      report(ViolationKind::kDanglingIntrinsics, msg.str());
    }
    const double n = norm(view.pose.q);
    if (std::abs(n - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "camera " << id << " has a non-unit quaternion (norm " << n << ")";
      report(ViolationKind::kNonUnitQuaternion, msg.str());
    }
  }

  for (const auto& [id, intr] : rec.intrinsics_pool) {
    if (!(intr.fx > 0.0) || !(intr.fy > 0.0)) {
      std::ostringstream msg;
      msg << "intrinsics " << id << " has non-positive focal length";
      report(ViolationKind::kNonPositiveFocal, msg.str());
    }
  }

  const auto num_points = static_cast<std::int64_t>(rec.points.size());
  for (std::size_t i = 0; i < rec.observations.size(); ++i) {
    const Observation& obs = rec.observations[i];
    if (!rec.cameras.count(obs.camera_id)) {
      std::ostringstream msg;
      msg << "observation " << i << " references missing camera " << obs.camera_id;
      report(ViolationKind::kDanglingObservationCamera, msg.str());
    }
    if (obs.point_index < 0 || obs.point_index >= num_points) {
      std::ostringstream msg;
      msg << "observation " << i << " references point index " << obs.point_index
          << " outside [0, " << num_points << ")";
      report(ViolationKind::kPointIndexOutOfRange, msg.str());
    }
  }
  return out;
}

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool pose_equal(const CameraPose& a, const CameraPose& b, double tol) {
  // Quaternions are stored with canonical sign, so componentwise compare.
  return near(a.q.w, b.q.w, tol) && near(a.q.x, b.q.x, tol) &&
         near(a.q.y, b.q.y, tol) && near(a.q.z, b.q.z, tol) &&
         near(a.t.x, b.t.x, tol) && near(a.t.y, b.t.y, tol) &&
         near(a.t.z, b.t.z, tol);
}

bool intrinsics_equal(const CameraIntrinsics& a, const CameraIntrinsics& b, double tol) {
  if (a.model != b.model || a.width != b.width || a.height != b.height) return false;
  if (!near(a.fx, b.fx, tol) || !near(a.fy, b.fy, tol) || !near(a.cx, b.cx, tol) ||
      !near(a.cy, b.cy, tol))
    return false;
  if (a.distortion.size() != b.distortion.size()) return false;
  for (std::size_t i = 0; i < a.distortion.size(); ++i)
    if (!near(a.distortion[i], b.distortion[i], tol)) return false;
  return true;
}

std::vector<Observation> sorted_observations(const Reconstruction& rec) {
  std::vector<Observation> obs = rec.observations;
  std::sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) {
    return std::tie(a.camera_id, a.point_index, a.uv.x, a.uv.y) <
           std::tie(b.camera_id, b.point_index, b.uv.x, b.uv.y);
  });
  return obs;
}

}  // namespace

bool approx_equal(const Reconstruction& a, const Reconstruction& b, double tol) {
  if (a.cameras.size() != b.cameras.size()) return false;
  if (a.intrinsics_pool.size() != b.intrinsics_pool.size()) return false;
  if (a.points.size() != b.points.size()) return false;
  if (a.observations.size() != b.observations.size()) return false;

  for (const auto& [id, view] : a.cameras) {
    const auto it = b.cameras.find(id);
    if (it == b.cameras.end()) return false;
    if (view.image_name != it->second.image_name) return false;
    if (view.intrinsics_id != it->second.intrinsics_id) return false;
    if (!pose_equal(view.pose, it->second.pose, tol)) return false;
  }
  for (const auto& [id, intr] : a.intrinsics_pool) {
    const auto it = b.intrinsics_pool.find(id);
    if (it == b.intrinsics_pool.end()) return false;
    if (!intrinsics_equal(intr, it->second, tol)) return false;
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const Point3D& pa = a.points[i];
    const Point3D& pb = b.points[i];
    if (pa.color != pb.color) return false;
    if (!near(pa.position.x, pb.position.x, tol) ||
        !near(pa.position.y, pb.position.y, tol) ||
        !near(pa.position.z, pb.position.z, tol))
      return false;
  }
  const std::vector<Observation> oa = sorted_observations(a);
  const std::vector<Observation> ob = sorted_observations(b);
  for (std::size_t i = 0; i < oa.size(); ++i) {
    if (oa[i].camera_id != ob[i].camera_id) return false;
    if (oa[i].point_index != ob[i].point_index) return false;
    if (!near(oa[i].uv.x, ob[i].uv.x, tol) || !near(oa[i].uv.y, ob[i].uv.y, tol))
      return false;
  }
  return true;
}

}  // namespace sfmio
