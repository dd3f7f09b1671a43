#include "sfmio/parsers/openmvg.hpp"

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

// OpenMVG wraps entries in cereal's {key, value} pairs and polymorphic
// pointers ({ptr_wrapper: {data: ...}}). Fixtures may be flat; descend only
// through wrappers that are present.
const json& unwrap_data(const json& j) {
  const json* cur = &j;
  if (cur->contains("value")) cur = &(*cur)["value"];
  if (cur->contains("ptr_wrapper")) cur = &(*cur)["ptr_wrapper"];
  if (cur->contains("data")) cur = &(*cur)["data"];
  return *cur;
}

std::string polymorphic_name(const json& entry) {
  const json* cur = &entry;
  if (cur->contains("value")) cur = &(*cur)["value"];
  if (cur->contains("polymorphic_name"))
    return (*cur)["polymorphic_name"].get<std::string>();
  return "pinhole";
}

Mat3 rotation_from_json(const json& rows, const char* where) {
  if (!rows.is_array() || rows.size() != 3)
    throw ParseError(std::string(where) + ": rotation must be 3 rows of 3");
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != 3)
      throw ParseError(std::string(where) + ": rotation must be 3 rows of 3");
    for (int j = 0; j < 3; ++j) r(i, j) = as_number(row[j], where);
  }
  return r;
}

struct IntrinsicRecord {
  CameraIntrinsics intrinsics;
  bool has_dimensions = false;
};

IntrinsicRecord read_intrinsic(const json& entry, std::int64_t id,
                               ParseDiagnostics& diag, bool& supported) {
  const std::string name = polymorphic_name(entry);
  const json& data = unwrap_data(entry);
  // Derived intrinsic types serialize the pinhole base under "value0".
  const json& base = data.contains("value0") ? data["value0"] : data;

  IntrinsicRecord rec;
  CameraIntrinsics& intr = rec.intrinsics;
  supported = true;

  intr.fx = intr.fy = as_number(require_key(base, "focal_length", "intrinsics"),
                                "intrinsics.focal_length");
  const json& pp = require_key(base, "principal_point", "intrinsics");
  if (!pp.is_array() || pp.size() != 2)
    throw ParseError("intrinsics: principal_point must hold [cx, cy]");
  intr.cx = as_number(pp[0], "intrinsics.principal_point");
  intr.cy = as_number(pp[1], "intrinsics.principal_point");
  if (base.contains("width") && base.contains("height")) {
    intr.width = static_cast<int>(as_integer(base["width"], "intrinsics.width"));
    intr.height = static_cast<int>(as_integer(base["height"], "intrinsics.height"));
    rec.has_dimensions = true;
  }

  const auto coeffs = [&](const char* key) {
    std::vector<double> out;
    if (data.contains(key))
      for (const json& c : data[key]) out.push_back(as_number(c, key));
    return out;
  };

  std::ostringstream loc;
  loc << "intrinsic " << id;
  if (name == "pinhole") {
    intr.model = CameraModel::kSimplePinhole;
  } else if (name == "pinhole_radial_k1") {
    intr.model = CameraModel::kSimpleRadial;
    auto k = coeffs("disto_k1");
    k.resize(1, 0.0);
    intr.distortion = {k[0]};
  } else if (name == "pinhole_radial_k3") {
    auto k = coeffs("disto_k3");
    k.resize(3, 0.0);
    intr.model = CameraModel::kRadial;
    intr.distortion = {k[0], k[1]};
    if (k[2] != 0.0)
      diag.warn(loc.str(), "dropping k3 coefficient not representable by RADIAL");
  } else if (name == "pinhole_brown_t2") {
    auto k = coeffs("disto_t2");
    k.resize(5, 0.0);
    intr.model = CameraModel::kOpenCV;
    intr.distortion = {k[0], k[1], k[3], k[4]};
    if (k[2] != 0.0)
      diag.warn(loc.str(), "dropping k3 coefficient not representable by OPENCV");
  } else {
    supported = false;
    diag.warn(loc.str(), "unsupported intrinsic type '" + name + "'");
  }
  return rec;
}

}  // namespace

ParsedReconstruction parse_openmvg_sfm_data(std::istream& in) {
  ParsedReconstruction out;
  Reconstruction& rec = out.reconstruction;
  ParseDiagnostics& diag = out.diagnostics;
  rec.source.format = "openmvg";

  const json doc = detail::parse_json_stream(in, "sfm_data");
  if (!doc.is_object() || !doc.contains("sfm_data_version"))
    throw ParseError("sfm_data: missing 'sfm_data_version' root key");
  if (doc.contains("root_path") && doc["root_path"].is_string())
    rec.source.root_path = doc["root_path"].get<std::string>();

  struct ViewRecord {
    std::int64_t id = 0, intrinsic_id = 0, pose_id = 0;
    std::string filename;
    int width = 0, height = 0;
  };
  std::vector<ViewRecord> views;
  if (doc.contains("views")) {
    for (const json& entry : doc["views"]) {
      const json& data = unwrap_data(entry);
      ViewRecord v;
      v.id = as_integer(require_key(data, "id_view", "views"), "views.id_view");
      v.intrinsic_id =
          as_integer(require_key(data, "id_intrinsic", "views"), "views.id_intrinsic");
      v.pose_id = as_integer(require_key(data, "id_pose", "views"), "views.id_pose");
      v.filename = require_key(data, "filename", "views").get<std::string>();
      if (data.contains("width")) v.width = static_cast<int>(as_integer(data["width"], "views.width"));
      if (data.contains("height")) v.height = static_cast<int>(as_integer(data["height"], "views.height"));
      views.push_back(std::move(v));
    }
  }

  std::map<std::int64_t, IntrinsicRecord> intrinsics;
  if (doc.contains("intrinsics")) {
    for (const json& entry : doc["intrinsics"]) {
      const std::int64_t key =
          as_integer(require_key(entry, "key", "intrinsics"), "intrinsics.key");
      bool supported = false;
      IntrinsicRecord record = read_intrinsic(entry, key, diag, supported);
      if (supported) intrinsics.emplace(key, std::move(record));
    }
  }

  std::map<std::int64_t, CameraPose> poses;
  if (doc.contains("extrinsics")) {
    for (const json& entry : doc["extrinsics"]) {
      const std::int64_t key =
          as_integer(require_key(entry, "key", "extrinsics"), "extrinsics.key");
      const json& value = require_key(entry, "value", "extrinsics");
      const Mat3 r = rotation_from_json(require_key(value, "rotation", "extrinsics"),
                                        "extrinsics.rotation");
      const json& c = require_key(value, "center", "extrinsics");
      if (!c.is_array() || c.size() != 3)
        throw ParseError("extrinsics: center must hold [x, y, z]");
      const Vec3 center{as_number(c[0], "center"), as_number(c[1], "center"),
                        as_number(c[2], "center")};
      // x_cam = R (x_world - C), so t = -R C. 1e-4 tolerance: these files
      // often store rotations at limited precision.
      const Quat q = matrix_to_quat(r, 1e-4);
      poses.emplace(key, make_pose(q, -(quat_to_matrix(q) * center)));
    }
  }

  for (const ViewRecord& v : views) {
    const auto pose_it = poses.find(v.pose_id);
    if (pose_it == poses.end()) {
      diag.warn(v.filename, "unregistered view (no extrinsic); skipped");
      continue;
    }
    const auto intr_it = intrinsics.find(v.intrinsic_id);
    if (intr_it == intrinsics.end()) {
      diag.warn(v.filename, "view references missing or unsupported intrinsic; skipped");
      continue;
    }
    CameraView view;
    view.id = v.id;
    view.image_name = v.filename;
    view.intrinsics_id = v.intrinsic_id;
    view.pose = pose_it->second;
    if (!rec.intrinsics_pool.count(v.intrinsic_id)) {
      CameraIntrinsics intr = intr_it->second.intrinsics;
      if (!intr_it->second.has_dimensions) {
        intr.width = v.width;
        intr.height = v.height;
      }
      rec.intrinsics_pool[v.intrinsic_id] = std::move(intr);
    }
    rec.cameras[view.id] = std::move(view);
  }

  if (doc.contains("structure")) {
    for (const json& entry : doc["structure"]) {
      const json& value = unwrap_data(entry);
      const json& x = require_key(value, "X", "structure");
      if (!x.is_array() || x.size() != 3)
        throw ParseError("structure: X must hold [x, y, z]");
      Point3D point;
      point.position = {as_number(x[0], "X"), as_number(x[1], "X"), as_number(x[2], "X")};
      const std::int64_t index = static_cast<std::int64_t>(rec.points.size());
      if (value.contains("observations")) {
        for (const json& obs : value["observations"]) {
          const std::int64_t view_id =
              as_integer(require_key(obs, "key", "observations"), "observations.key");
          const json& od = require_key(obs, "value", "observations");
          const json& uv = require_key(od, "x", "observations");
          if (!uv.is_array() || uv.size() != 2)
            throw ParseError("observations: x must hold [u, v]");
          if (!rec.cameras.count(view_id)) continue;  // measurement of a skipped view
          rec.observations.push_back(
              {view_id, index, {as_number(uv[0], "obs"), as_number(uv[1], "obs")}});
          std::int64_t feature = 0;
          if (od.contains("id_feat")) feature = as_integer(od["id_feat"], "id_feat");
          point.track.push_back({view_id, feature});
        }
      }
      rec.points.push_back(std::move(point));
    }
  }

  diag.num_cameras = rec.cameras.size();
  diag.num_points = rec.points.size();
  diag.num_observations = rec.observations.size();
  return out;
}

ParsedReconstruction parse_openmvg_sfm_data_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto out = parse_openmvg_sfm_data(in);
  if (out.reconstruction.source.root_path.empty())
    out.reconstruction.source.root_path = path.parent_path().string();
  return out;
}

}  // namespace sfmio
