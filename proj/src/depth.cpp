#include "sfmio/depth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sfmio/binary_io.hpp"
#include "sfmio/error.hpp"
#include "sfmio/geometry.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

// One "<digits>&" header field.
std::int64_t read_amp_field(std::istream& in, const char* what) {
  std::string token;
  char c;
  while (in.get(c)) {
    if (c == '&') {
      const auto v = parse_int(token);
      if (!v || *v < 0)
        throw ParseError(std::string("depth map header: malformed ") + what);
      return *v;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)) || token.size() > 19)
      throw ParseError(std::string("depth map header: malformed ") + what);
    token.push_back(c);
  }
  throw ParseError(std::string("depth map header: truncated before ") + what);
}

}  // namespace

DepthMap read_colmap_depth(std::istream& in) {
  DepthMap map;
  map.width = static_cast<int>(read_amp_field(in, "width"));
  map.height = static_cast<int>(read_amp_field(in, "height"));
  const std::int64_t channels = read_amp_field(in, "channels");
  if (channels != 1) {
    std::ostringstream msg;
    msg << "depth map must have 1 channel, got " << channels;
    throw ParseError(msg.str());
  }
  const std::size_t count = static_cast<std::size_t>(map.width) * map.height;
  map.depths.resize(count);
  for (float& d : map.depths) d = read_le<float>(in);
  return map;
}

DepthMap read_colmap_depth_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  DepthMap map = read_colmap_depth(in);
  map.view_name = path.filename().string();
  return map;
}

DepthMap read_pfm(std::istream& in) {
  std::string magic;
  if (!(in >> magic)) throw ParseError("pfm: empty stream");
  if (magic == "PF") throw ParseError("pfm: color (PF) maps are not supported");
  if (magic != "Pf") throw ParseError("pfm: missing 'Pf' magic");

  int width = 0, height = 0;
  double scale = 0.0;
  if (!(in >> width >> height >> scale) || width <= 0 || height <= 0)
    throw ParseError("pfm: malformed dimensions");
  if (scale == 0.0) throw ParseError("pfm: scale must be nonzero");
  in.get();  // single whitespace before the payload

  const bool little_endian = scale < 0.0;
  const double factor = std::abs(scale);

  DepthMap map;
  map.width = width;
  map.height = height;
  map.depths.resize(static_cast<std::size_t>(width) * height);
  // PFM stores rows bottom to top.
  for (int row = height - 1; row >= 0; --row) {
    for (int col = 0; col < width; ++col) {
      const float v = little_endian ? read_le<float>(in) : read_be<float>(in);
      map.depths[static_cast<std::size_t>(row) * width + col] =
          factor != 1.0 ? static_cast<float>(v * factor) : v;
    }
  }
  return map;
}

DepthMap read_pfm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  DepthMap map = read_pfm(in);
  map.view_name = path.filename().string();
  return map;
}

PointCloud unproject_depth_map(const DepthMap& map, const CameraView& view,
                               const CameraIntrinsics& intrinsics,
                               const UnprojectOptions& options) {
  if (options.stride < 1) throw Error("stride must be >= 1");
  if (map.width <= 0 || map.height <= 0 ||
      map.depths.size() != static_cast<std::size_t>(map.width) * map.height)
    throw GeometryError("depth map grid size does not match its dimensions");

  CameraIntrinsics intr = intrinsics;
  if (map.width != intr.width || map.height != intr.height) {
    if (intr.width <= 0 || intr.height <= 0)
      throw GeometryError("cannot rescale intrinsics with unknown image dimensions");
    const double sx = static_cast<double>(map.width) / intr.width;
    const double sy = static_cast<double>(map.height) / intr.height;
    if (std::abs(sx / sy - 1.0) > 1e-6)
      throw GeometryError("depth map and image aspect ratios differ");
    intr.fx *= sx;
    intr.cx *= sx;
    intr.fy *= sy;
    intr.cy *= sy;
    intr.width = map.width;
    intr.height = map.height;
  }
  if (options.color_image &&
      (options.color_image->width != map.width || options.color_image->height != map.height))
    throw GeometryError("color image size does not match the depth map");

  PointCloud cloud;
  for (int j = 0; j < map.height; j += options.stride) {
    for (int i = 0; i < map.width; i += options.stride) {
      const float d = map.at(i, j);
      if (!std::isfinite(d) || d <= 0.0f) continue;  // hole
      if (options.min_depth && d < *options.min_depth) continue;
      if (options.max_depth && d > *options.max_depth) continue;
      const Vec3 cam = unproject_pixel(intr, {i + 0.5, j + 0.5}, d);
      cloud.positions.push_back(camera_to_world(view.pose, cam));
      cloud.colors.push_back(options.color_image ? options.color_image->rgb_at(i, j)
                                                 : options.constant_color);
    }
  }
  return cloud;
}

PointCloud fuse_depth_clouds(std::vector<std::pair<std::int64_t, PointCloud>> clouds) {
  std::stable_sort(clouds.begin(), clouds.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  PointCloud fused;
  for (auto& [id, cloud] : clouds) {
    fused.positions.insert(fused.positions.end(), cloud.positions.begin(),
                           cloud.positions.end());
    for (std::size_t i = 0; i < cloud.positions.size(); ++i)
      fused.colors.push_back(i < cloud.colors.size()
                                 ? cloud.colors[i]
                                 : std::array<std::uint8_t, 3>{128, 128, 128});
  }
  return fused;
}

}  // namespace sfmio
