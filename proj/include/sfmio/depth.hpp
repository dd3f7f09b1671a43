#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfmio/image_io.hpp"
#include "sfmio/point_cloud.hpp"
#include "sfmio/scene.hpp"

namespace sfmio {

/// Per-view dense depth grid, row-major with the top row first. Values are
/// world units along the camera's +z axis; samples <= 0 or non-finite are
/// holes.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> depths;
  std::string view_name;

  float at(int col, int row) const {
    return depths[static_cast<std::size_t>(row) * width + col];
  }
};

/// Colmap dense-workspace depth map: ASCII header "<w>&<h>&<channels>&"
/// followed by w*h little-endian f32, row-major. channels must be 1.
DepthMap read_colmap_depth(std::istream& in);
DepthMap read_colmap_depth_file(const std::filesystem::path& path);

/// Grayscale PFM ("Pf"): negative scale means little-endian, rows are stored
/// bottom to top and flipped on load, |scale| != 1 multiplies the values.
/// Color "PF" maps are rejected.
DepthMap read_pfm(std::istream& in);
DepthMap read_pfm_file(const std::filesystem::path& path);

struct UnprojectOptions {
  int stride = 1;
  std::optional<double> min_depth;
  std::optional<double> max_depth;
  std::array<std::uint8_t, 3> constant_color{128, 128, 128};
  /// Optional per-pixel color source of the same size as the depth map.
  const ImageU8* color_image = nullptr;
};

/// Back-projects every valid in-range sample on the stride grid into world
/// space; sample (i, j) unprojects the pixel center (i + 0.5, j + 0.5).
/// Depth maps at a different resolution than the registered image rescale
/// the intrinsics by the dimension ratio; mismatched aspect ratios are an
/// error. Output order is row-major and deterministic.
PointCloud unproject_depth_map(const DepthMap& map, const CameraView& view,
                               const CameraIntrinsics& intrinsics,
                               const UnprojectOptions& options = {});

/// Concatenates per-view clouds in ascending view-id order. No deduplication.
PointCloud fuse_depth_clouds(std::vector<std::pair<std::int64_t, PointCloud>> clouds);

}  // namespace sfmio
