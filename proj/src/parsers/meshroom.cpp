#include "sfmio/parsers/meshroom.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "sfmio/error.hpp"
#include "sfmio/math.hpp"
#include "json_util.hpp"

namespace sfmio {

namespace {

using detail::as_integer;
using detail::as_number;
using detail::json;
using detail::require_key;

CameraIntrinsics read_intrinsic(const json& entry, std::int64_t id,
                                ParseDiagnostics& diag, bool& supported) {
  std::ostringstream loc;
  loc << "intrinsic " << id;
  supported = true;

  CameraIntrinsics intr;
  intr.width = static_cast<int>(
      as_integer(require_key(entry, "width", "intrinsics"), "intrinsics.width"));
  intr.height = static_cast<int>(
      as_integer(require_key(entry, "height", "intrinsics"), "intrinsics.height"));

  // Focal length in pixels, either direct or via the mm focal and sensor.
  if (entry.contains("pxFocalLength")) {
    intr.fx = intr.fy = as_number(entry["pxFocalLength"], "intrinsics.pxFocalLength");
  } else if (entry.contains("focalLength") && entry.contains("sensorWidth")) {
    const double focal_mm = as_number(entry["focalLength"], "intrinsics.focalLength");
    const double sensor_mm = as_number(entry["sensorWidth"], "intrinsics.sensorWidth");
    if (sensor_mm <= 0.0) throw ParseError("intrinsics: sensorWidth must be positive");
    intr.fx = intr.fy = focal_mm / sensor_mm * intr.width;
  } else {
    throw ParseError("intrinsics: neither pxFocalLength nor focalLength/sensorWidth present");
  }

  // The principal point is stored as an offset from the image center.
  intr.cx = intr.width / 2.0;
  intr.cy = intr.height / 2.0;
  if (entry.contains("principalPoint")) {
    const json& pp = entry["principalPoint"];
    if (!pp.is_array() || pp.size() != 2)
      throw ParseError("intrinsics: principalPoint must hold [dx, dy]");
    intr.cx += as_number(pp[0], "principalPoint");
    intr.cy += as_number(pp[1], "principalPoint");
  }

  std::vector<double> coeffs;
  if (entry.contains("distortionParams"))
    for (const json& c : entry["distortionParams"])
      coeffs.push_back(as_number(c, "distortionParams"));

  const std::string type =
      entry.contains("type") ? require_key(entry, "type", "intrinsics").get<std::string>()
                             : "pinhole";
  if (type == "pinhole") {
    intr.model = CameraModel::kPinhole;
  } else if (type == "radial1") {
    intr.model = CameraModel::kSimpleRadial;
    coeffs.resize(1, 0.0);
    intr.distortion = {coeffs[0]};
  } else if (type == "radial3") {
    intr.model = CameraModel::kRadial;
    coeffs.resize(3, 0.0);
    intr.distortion = {coeffs[0], coeffs[1]};
    if (coeffs[2] != 0.0)
      diag.warn(loc.str(), "dropping third radial coefficient not representable by RADIAL");
  } else {
    supported = false;
    diag.warn(loc.str(), "unsupported intrinsic type '" + type + "'");
  }
  return intr;
}

}  // namespace

ParsedReconstruction parse_meshroom_sfm(std::istream& in) {
  ParsedReconstruction out;
  Reconstruction& rec = out.reconstruction;
  ParseDiagnostics& diag = out.diagnostics;
  rec.source.format = "meshroom";

  const json doc = detail::parse_json_stream(in, "cameras.sfm");
  if (!doc.is_object() || !doc.contains("views") || !doc.contains("poses"))
    throw ParseError("cameras.sfm: missing 'views'/'poses' root keys");

  std::map<std::int64_t, CameraIntrinsics> intrinsics;
  if (doc.contains("intrinsics")) {
    for (const json& entry : doc["intrinsics"]) {
      const std::int64_t id = as_integer(
          require_key(entry, "intrinsicId", "intrinsics"), "intrinsics.intrinsicId");
      bool supported = false;
      CameraIntrinsics intr = read_intrinsic(entry, id, diag, supported);
      if (supported) intrinsics.emplace(id, std::move(intr));
    }
  }

  std::map<std::int64_t, CameraPose> poses;
  for (const json& entry : doc["poses"]) {
    const std::int64_t id =
        as_integer(require_key(entry, "poseId", "poses"), "poses.poseId");
    const json& transform =
        require_key(require_key(entry, "pose", "poses"), "transform", "poses.pose");
    const json& rotation = require_key(transform, "rotation", "transform");
    if (!rotation.is_array() || rotation.size() != 9)
      throw ParseError("poses: rotation must hold 9 row-major values");
    Mat3 r_cw{};
    for (int i = 0; i < 9; ++i) r_cw.m[i] = as_number(rotation[i], "rotation");
    const json& c = require_key(transform, "center", "transform");
    if (!c.is_array() || c.size() != 3)
      throw ParseError("poses: center must hold [x, y, z]");
    const Vec3 center{as_number(c[0], "center"), as_number(c[1], "center"),
                      as_number(c[2], "center")};
    // Stored rotation is camera-to-world in CV axes.
    const Quat q = matrix_to_quat(transposed(r_cw), 1e-4);
    poses.emplace(id, make_pose(q, -(quat_to_matrix(q) * center)));
  }

  for (const json& entry : doc["views"]) {
    const std::int64_t view_id =
        as_integer(require_key(entry, "viewId", "views"), "views.viewId");
    const std::int64_t pose_id =
        as_integer(require_key(entry, "poseId", "views"), "views.poseId");
    const std::int64_t intrinsic_id =
        as_integer(require_key(entry, "intrinsicId", "views"), "views.intrinsicId");
    const std::string path = require_key(entry, "path", "views").get<std::string>();

    const auto pose_it = poses.find(pose_id);
    if (pose_it == poses.end()) {
      diag.warn(path, "unregistered view (no pose); skipped");
      continue;
    }
    const auto intr_it = intrinsics.find(intrinsic_id);
    if (intr_it == intrinsics.end()) {
      diag.warn(path, "view references missing or unsupported intrinsic; skipped");
      continue;
    }
    CameraView view;
    view.id = view_id;
    view.image_name = path;
    view.intrinsics_id = intrinsic_id;
    view.pose = pose_it->second;
    if (!rec.intrinsics_pool.count(intrinsic_id))
      rec.intrinsics_pool[intrinsic_id] = intr_it->second;
    rec.cameras[view.id] = std::move(view);
  }

  diag.num_cameras = rec.cameras.size();
  diag.num_points = rec.points.size();
  diag.num_observations = rec.observations.size();
  return out;
}

ParsedReconstruction parse_meshroom_sfm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto out = parse_meshroom_sfm(in);
  out.reconstruction.source.root_path = path.parent_path().string();
  return out;
}

}  // namespace sfmio
