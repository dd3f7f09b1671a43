#include "sfmio/parsers/nvm.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "sfmio/error.hpp"
#include "sfmio/math.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

double next_double(std::istream& in, const char* what) {
  double v;
  if (!(in >> v)) throw ParseError(std::string("NVM: expected ") + what);
  return v;
}

std::int64_t next_int(std::istream& in, const char* what) {
  std::int64_t v;
  if (!(in >> v)) throw ParseError(std::string("NVM: expected ") + what);
  return v;
}

}  // namespace

ParsedReconstruction parse_nvm(std::istream& in, const DimensionLookup& dimensions) {
  ParsedReconstruction out;
  Reconstruction& rec = out.reconstruction;
  ParseDiagnostics& diag = out.diagnostics;
  rec.source.format = "nvm";

  std::string magic;
  if (!(in >> magic) || magic != "NVM_V3")
    throw ParseError("NVM: missing NVM_V3 magic");
  // The rest of the header line may carry fixed-calibration info; skip it.
  std::string rest_of_line;
  std::getline(in, rest_of_line);

  const std::int64_t num_cameras = next_int(in, "camera count");
  if (num_cameras < 0) throw ParseError("NVM: negative camera count");

  for (std::int64_t i = 0; i < num_cameras; ++i) {
    CameraView view;
    view.id = i + 1;  // NVM supplies no ids; assign 1..n in file order
    view.intrinsics_id = view.id;
    if (!(in >> view.image_name)) throw ParseError("NVM: expected image name");
    const double focal = next_double(in, "focal length");
    Quat q;
    q.w = next_double(in, "qw");
    q.x = next_double(in, "qx");
    q.y = next_double(in, "qy");
    q.z = next_double(in, "qz");
    const Vec3 center{next_double(in, "center x"), next_double(in, "center y"),
                      next_double(in, "center z")};
    const double radial = next_double(in, "radial distortion");
    next_int(in, "trailing zero");

    CameraIntrinsics intr;
    intr.model = CameraModel::kSimpleRadial;
    intr.fx = intr.fy = focal;
    intr.distortion = {radial};
    if (const auto dims = dimensions ? dimensions(view.image_name) : std::nullopt) {
      intr.width = dims->first;
      intr.height = dims->second;
      intr.cx = dims->first / 2.0;
      intr.cy = dims->second / 2.0;
    } else {
      diag.warn(view.image_name,
                "unknown dimensions: NVM stores no width/height; principal "
                "point left at (0, 0)");
    }

    view.pose = make_pose(q, -(quat_to_matrix(q) * center));
    rec.intrinsics_pool[view.intrinsics_id] = std::move(intr);
    rec.cameras[view.id] = std::move(view);
  }

  const std::int64_t num_points = next_int(in, "point count");
  if (num_points < 0) throw ParseError("NVM: negative point count");
  rec.points.reserve(num_points);

  for (std::int64_t i = 0; i < num_points; ++i) {
    Point3D point;
    point.position = {next_double(in, "point x"), next_double(in, "point y"),
                      next_double(in, "point z")};
    for (int c = 0; c < 3; ++c) {
      const std::int64_t channel = next_int(in, "point color");
      if (channel < 0 || channel > 255)
        throw ParseError("NVM: color channel outside [0, 255]");
      point.color[c] = static_cast<std::uint8_t>(channel);
    }
    const std::int64_t num_measurements = next_int(in, "measurement count");
    for (std::int64_t m = 0; m < num_measurements; ++m) {
      const std::int64_t image_index = next_int(in, "measurement image index");
      const std::int64_t feature_index = next_int(in, "measurement feature index");
      const double mx = next_double(in, "measurement x");
      const double my = next_double(in, "measurement y");
      if (image_index < 0 || image_index >= num_cameras)
        throw ParseError("NVM: measurement references camera index out of range");
      const std::int64_t camera_id = image_index + 1;
      const CameraIntrinsics& intr = rec.intrinsics_pool.at(camera_id);
      // Measurement coordinates are relative to the image center.
      rec.observations.push_back({camera_id, i, {mx + intr.cx, my + intr.cy}});
      point.track.push_back({camera_id, feature_index});
    }
    rec.points.push_back(std::move(point));
  }

  diag.num_cameras = rec.cameras.size();
  diag.num_points = rec.points.size();
  diag.num_observations = rec.observations.size();
  return out;
}

ParsedReconstruction parse_nvm_file(const std::filesystem::path& path,
                                    const DimensionLookup& dimensions) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto out = parse_nvm(in, dimensions);
  out.reconstruction.source.root_path = path.parent_path().string();
  return out;
}

}  // namespace sfmio
