#include "sfmio/parsers/colmap.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "sfmio/binary_io.hpp"
#include "sfmio/error.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

CameraModel model_from_colmap_id(std::int64_t id) {
  const auto model = camera_model_from_id(static_cast<int>(id));
  if (!model) {
    std::ostringstream msg;
    msg << "unsupported camera model " << id;
    throw ParseError(msg.str());
  }
  return *model;
}

// Reverse of the provenance side map: source point id -> dense index.
std::map<std::int64_t, std::int64_t> id_to_index(const Reconstruction& rec) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& [index, id] : rec.source.point_ids) out[id] = index;
  return out;
}

void add_image_observations(Reconstruction& rec, ParseDiagnostics& diag,
                            const std::map<std::int64_t, std::int64_t>& point_index,
                            std::int64_t image_id,
                            const std::vector<std::pair<Vec2, std::int64_t>>& points2d) {
  std::size_t untracked = 0;
  for (const auto& [uv, point3d_id] : points2d) {
    if (point3d_id == -1) {
      ++untracked;
      continue;
    }
    const auto it = point_index.find(point3d_id);
    if (it == point_index.end()) {
      std::ostringstream msg;
      msg << "image " << image_id << " references unknown point3D id " << point3d_id;
      diag.warn("images", msg.str());
      continue;
    }
    rec.observations.push_back({image_id, it->second, uv});
  }
  if (untracked > 0) {
    std::ostringstream msg;
    msg << "image " << image_id << ": " << untracked
        << " untracked 2D points not materialized as observations";
    diag.warn("images", msg.str());
  }
}

// Returns the non-comment lines of a Colmap text file. Blank lines are kept:
// images.txt legitimately contains empty POINTS2D lines.
std::vector<std::string> data_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (get_line(in, line)) {
    const std::string_view t = trim(line);
    if (!t.empty() && t.front() == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

double field_as_double(std::string_view token, const char* where) {
  const auto v = parse_double(token);
  if (!v) throw ParseError(std::string(where) + ": expected a number, got '" +
                           std::string(token) + "'");
  return *v;
}

std::int64_t field_as_int(std::string_view token, const char* where) {
  const auto v = parse_int(token);
  if (!v) throw ParseError(std::string(where) + ": expected an integer, got '" +
                           std::string(token) + "'");
  return *v;
}

}  // namespace

void read_colmap_cameras_bin(std::istream& in, Reconstruction& rec,
                             ParseDiagnostics& diag) {
  const auto count = read_le<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto camera_id = read_le<std::int32_t>(in);
    const auto model_id = read_le<std::int32_t>(in);
    const auto width = read_le<std::uint64_t>(in);
    const auto height = read_le<std::uint64_t>(in);
    const CameraModel model = model_from_colmap_id(model_id);
    std::vector<double> params(camera_param_count(model));
    for (double& p : params) p = read_le<double>(in);
    rec.intrinsics_pool[camera_id] = intrinsics_from_params(
        model, static_cast<int>(width), static_cast<int>(height), params);
  }
  (void)diag;
}

void read_colmap_points_bin(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag) {
  const auto count = read_le<std::uint64_t>(in);
  rec.points.reserve(rec.points.size() + count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto id = read_le<std::int64_t>(in);
    Point3D point;
    point.position = {read_le<double>(in), read_le<double>(in), read_le<double>(in)};
    point.color = {read_le<std::uint8_t>(in), read_le<std::uint8_t>(in),
                   read_le<std::uint8_t>(in)};
    const double error = read_le<double>(in);
    if (error >= 0.0) point.error = error;
    const auto track_length = read_le<std::uint64_t>(in);
    point.track.reserve(track_length);
    for (std::uint64_t j = 0; j < track_length; ++j) {
      const auto image_id = read_le<std::int32_t>(in);
      const auto point2d_idx = read_le<std::int32_t>(in);
      point.track.push_back({image_id, point2d_idx});
    }
    rec.source.point_ids[static_cast<std::int64_t>(rec.points.size())] = id;
    rec.points.push_back(std::move(point));
  }
  diag.num_points = rec.points.size();
}

void read_colmap_images_bin(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag) {
  const auto point_index = id_to_index(rec);
  const auto count = read_le<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    CameraView view;
    view.id = read_le<std::int32_t>(in);
    Quat q;
    q.w = read_le<double>(in);
    q.x = read_le<double>(in);
    q.y = read_le<double>(in);
    q.z = read_le<double>(in);
    Vec3 t{read_le<double>(in), read_le<double>(in), read_le<double>(in)};
    view.intrinsics_id = read_le<std::int32_t>(in);
    view.image_name = read_nul_terminated(in);
    view.pose = make_pose(q, t);

    const auto num_points2d = read_le<std::uint64_t>(in);
    std::vector<std::pair<Vec2, std::int64_t>> points2d;
    points2d.reserve(num_points2d);
    for (std::uint64_t j = 0; j < num_points2d; ++j) {
      const double x = read_le<double>(in);
      const double y = read_le<double>(in);
      const auto point3d_id = read_le<std::int64_t>(in);
      points2d.push_back({{x, y}, point3d_id});
    }
    add_image_observations(rec, diag, point_index, view.id, points2d);
    rec.cameras[view.id] = std::move(view);
  }
  diag.num_cameras = rec.cameras.size();
  diag.num_observations = rec.observations.size();
}

void read_colmap_cameras_txt(std::istream& in, Reconstruction& rec,
                             ParseDiagnostics& diag) {
  for (const std::string& line : data_lines(in)) {
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 4) throw ParseError("cameras.txt: malformed camera line");
    const std::int64_t camera_id = field_as_int(fields[0], "cameras.txt CAMERA_ID");
    // The model is a name in files written by Colmap; numeric ids are
    // accepted as well since the binary encoding stores them that way.
    CameraModel model;
    if (const auto by_name = camera_model_from_name(fields[1])) {
      model = *by_name;
    } else if (const auto as_int = parse_int(fields[1])) {
      model = model_from_colmap_id(*as_int);
    } else {
      throw ParseError("cameras.txt: unsupported camera model " + std::string(fields[1]));
    }
    const std::int64_t width = field_as_int(fields[2], "cameras.txt WIDTH");
    const std::int64_t height = field_as_int(fields[3], "cameras.txt HEIGHT");
    std::vector<double> params;
    for (std::size_t i = 4; i < fields.size(); ++i)
      params.push_back(field_as_double(fields[i], "cameras.txt PARAMS"));
    rec.intrinsics_pool[camera_id] = intrinsics_from_params(
        model, static_cast<int>(width), static_cast<int>(height), params);
  }
  (void)diag;
}

void read_colmap_points_txt(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag) {
  for (const std::string& line : data_lines(in)) {
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 8 || (fields.size() - 8) % 2 != 0)
      throw ParseError("points3D.txt: malformed point line");
    const std::int64_t id = field_as_int(fields[0], "points3D.txt POINT3D_ID");
    Point3D point;
    point.position = {field_as_double(fields[1], "points3D.txt X"),
                      field_as_double(fields[2], "points3D.txt Y"),
                      field_as_double(fields[3], "points3D.txt Z")};
    for (int c = 0; c < 3; ++c) {
      const std::int64_t channel = field_as_int(fields[4 + c], "points3D.txt COLOR");
      if (channel < 0 || channel > 255)
        throw ParseError("points3D.txt: color channel outside [0, 255]");
      point.color[c] = static_cast<std::uint8_t>(channel);
    }
    const double error = field_as_double(fields[7], "points3D.txt ERROR");
    if (error >= 0.0) point.error = error;
    for (std::size_t i = 8; i + 1 < fields.size(); i += 2) {
      point.track.push_back({field_as_int(fields[i], "points3D.txt IMAGE_ID"),
                             field_as_int(fields[i + 1], "points3D.txt POINT2D_IDX")});
    }
    rec.source.point_ids[static_cast<std::int64_t>(rec.points.size())] = id;
    rec.points.push_back(std::move(point));
  }
  diag.num_points = rec.points.size();
}

void read_colmap_images_txt(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag) {
  const auto point_index = id_to_index(rec);
  const std::vector<std::string> lines = data_lines(in);
  std::size_t i = 0;
  while (i < lines.size()) {
    if (trim(lines[i]).empty()) {  // stray separator between records
      ++i;
      continue;
    }
    const std::string& image_line = lines[i++];
    const auto fields = split_fields(image_line);
    if (fields.size() < 10)
      throw ParseError("images.txt: image line needs ID, Q, T, CAMERA_ID, NAME");

    CameraView view;
    view.id = field_as_int(fields[0], "images.txt IMAGE_ID");
    const Quat q{field_as_double(fields[1], "images.txt QW"),
                 field_as_double(fields[2], "images.txt QX"),
                 field_as_double(fields[3], "images.txt QY"),
                 field_as_double(fields[4], "images.txt QZ")};
    const Vec3 t{field_as_double(fields[5], "images.txt TX"),
                 field_as_double(fields[6], "images.txt TY"),
                 field_as_double(fields[7], "images.txt TZ")};
    view.intrinsics_id = field_as_int(fields[8], "images.txt CAMERA_ID");
    // The name is everything after the camera id; it may contain spaces.
    const std::size_t name_pos = fields[9].data() - image_line.data();
    view.image_name = std::string(trim(image_line.substr(name_pos)));
    view.pose = make_pose(q, t);

    std::vector<std::pair<Vec2, std::int64_t>> points2d;
    if (i < lines.size()) {
      const auto obs_fields = split_fields(lines[i++]);
      if (obs_fields.size() % 3 != 0)
        throw ParseError("images.txt: POINTS2D line must hold (X, Y, POINT3D_ID) triples");
      for (std::size_t j = 0; j + 2 < obs_fields.size(); j += 3) {
        points2d.push_back({{field_as_double(obs_fields[j], "images.txt X"),
                             field_as_double(obs_fields[j + 1], "images.txt Y")},
                            field_as_int(obs_fields[j + 2], "images.txt POINT3D_ID")});
      }
    }
    add_image_observations(rec, diag, point_index, view.id, points2d);
    rec.cameras[view.id] = std::move(view);
  }
  diag.num_cameras = rec.cameras.size();
  diag.num_observations = rec.observations.size();
}

ParsedReconstruction parse_colmap_model(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const bool binary = fs::exists(dir / "cameras.bin") && fs::exists(dir / "images.bin") &&
                      fs::exists(dir / "points3D.bin");
  const bool text = fs::exists(dir / "cameras.txt") && fs::exists(dir / "images.txt") &&
                    fs::exists(dir / "points3D.txt");
  if (!binary && !text)
    throw IoError("no Colmap model (cameras/images/points3D) found in " + dir.string());

  ParsedReconstruction out;
  out.reconstruction.source.format = "colmap";
  out.reconstruction.source.root_path = dir.string();

  const auto open = [&dir](const char* name) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) throw IoError("cannot open " + (dir / name).string());
    return in;
  };

  if (binary) {
    auto cameras = open("cameras.bin");
    read_colmap_cameras_bin(cameras, out.reconstruction, out.diagnostics);
    auto points = open("points3D.bin");
    read_colmap_points_bin(points, out.reconstruction, out.diagnostics);
    auto images = open("images.bin");
    read_colmap_images_bin(images, out.reconstruction, out.diagnostics);
  } else {
    auto cameras = open("cameras.txt");
    read_colmap_cameras_txt(cameras, out.reconstruction, out.diagnostics);
    auto points = open("points3D.txt");
    read_colmap_points_txt(points, out.reconstruction, out.diagnostics);
    auto images = open("images.txt");
    read_colmap_images_txt(images, out.reconstruction, out.diagnostics);
  }
  out.diagnostics.num_cameras = out.reconstruction.cameras.size();
  out.diagnostics.num_points = out.reconstruction.points.size();
  out.diagnostics.num_observations = out.reconstruction.observations.size();
  return out;
}

}  // namespace sfmio
