#include "sfmio/parsers/bundler.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfmio/error.hpp"
#include "sfmio/math.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

double next_double(std::istream& in, const char* what) {
  double v;
  if (!(in >> v)) throw ParseError(std::string("bundler: truncated file, expected ") + what);
  return v;
}

std::int64_t next_int(std::istream& in, const char* what) {
  std::int64_t v;
  if (!(in >> v)) throw ParseError(std::string("bundler: truncated file, expected ") + what);
  return v;
}

}  // namespace

ParsedReconstruction parse_bundler_out(std::istream& in,
                                       std::span<const std::pair<int, int>> image_dims) {
  ParsedReconstruction out;
  Reconstruction& rec = out.reconstruction;
  ParseDiagnostics& diag = out.diagnostics;
  rec.source.format = "bundler";

  std::string header;
  if (!get_line(in, header) || header.rfind("# Bundle file", 0) != 0)
    throw ParseError("bundler: missing '# Bundle file' header");

  const std::int64_t num_cameras = next_int(in, "camera count");
  const std::int64_t num_points = next_int(in, "point count");
  if (num_cameras < 0 || num_points < 0)
    throw ParseError("bundler: negative entity count");

  const Mat3 flip = Mat3::axis_flip();
  for (std::int64_t i = 0; i < num_cameras; ++i) {
    const double focal = next_double(in, "focal length");
    const double k1 = next_double(in, "k1");
    const double k2 = next_double(in, "k2");
    Mat3 r{};
    for (int j = 0; j < 9; ++j) r.m[j] = next_double(in, "rotation entry");
    const Vec3 t{next_double(in, "tx"), next_double(in, "ty"), next_double(in, "tz")};

    if (focal == 0.0) {
      std::ostringstream name;
      name << "camera " << i;
      diag.warn(name.str(), "unregistered camera (f = 0); skipped");
      continue;
    }

    CameraView view;
    view.id = i + 1;  // bundler supplies no ids; assign 1..n in file order
    view.intrinsics_id = view.id;
    {
      char name[32];
      std::snprintf(name, sizeof(name), "image_%04lld", static_cast<long long>(i));
      view.image_name = name;
    }
    // Conjugate out of the y-up, looks -z axes.
    view.pose = make_pose(matrix_to_quat(flip * r, 1e-4), flip * t);

    CameraIntrinsics intr;
    intr.model = CameraModel::kRadial;
    intr.fx = intr.fy = focal;
    intr.distortion = {k1, k2};
    if (static_cast<std::size_t>(i) < image_dims.size()) {
      intr.width = image_dims[i].first;
      intr.height = image_dims[i].second;
      intr.cx = intr.width / 2.0;
      intr.cy = intr.height / 2.0;
    }
    rec.intrinsics_pool[view.intrinsics_id] = std::move(intr);
    rec.cameras[view.id] = std::move(view);
  }
  if (!image_dims.empty() && static_cast<std::int64_t>(image_dims.size()) < num_cameras)
    diag.warn("bundler", "fewer image dimensions than cameras; remainder unknown");

  std::size_t dropped_measurements = 0;
  for (std::int64_t i = 0; i < num_points; ++i) {
    Point3D point;
    point.position = {next_double(in, "point x"), next_double(in, "point y"),
                      next_double(in, "point z")};
    for (int c = 0; c < 3; ++c) {
      const std::int64_t channel = next_int(in, "point color");
      if (channel < 0 || channel > 255)
        throw ParseError("bundler: color channel outside [0, 255]");
      point.color[c] = static_cast<std::uint8_t>(channel);
    }
    const std::int64_t num_refs = next_int(in, "view list length");
    for (std::int64_t m = 0; m < num_refs; ++m) {
      const std::int64_t image_index = next_int(in, "view list image index");
      const std::int64_t feature_index = next_int(in, "view list key index");
      const double mx = next_double(in, "measurement x");
      const double my = next_double(in, "measurement y");
      if (image_index < 0 || image_index >= num_cameras)
        throw ParseError("bundler: view list references camera index out of range");
      const std::int64_t camera_id = image_index + 1;
      const auto view_it = rec.cameras.find(camera_id);
      if (view_it == rec.cameras.end()) {
        ++dropped_measurements;  // measurement of an unregistered camera
        continue;
      }
      const CameraIntrinsics& intr = rec.intrinsics_pool.at(camera_id);
      // Center-relative with y up; the canonical pixel frame has y down.
      rec.observations.push_back(
          {camera_id, i, {intr.cx + mx, intr.cy - my}});
      point.track.push_back({camera_id, feature_index});
    }
    rec.points.push_back(std::move(point));
  }
  if (dropped_measurements > 0) {
    std::ostringstream msg;
    msg << dropped_measurements << " measurements referenced unregistered cameras";
    diag.warn("bundler", msg.str());
  }

  diag.num_cameras = rec.cameras.size();
  diag.num_points = rec.points.size();
  diag.num_observations = rec.observations.size();
  return out;
}

ParsedReconstruction parse_bundler_out_file(const std::filesystem::path& path,
                                            std::span<const std::pair<int, int>> image_dims) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto out = parse_bundler_out(in, image_dims);
  out.reconstruction.source.root_path = path.parent_path().string();
  return out;
}

}  // namespace sfmio
