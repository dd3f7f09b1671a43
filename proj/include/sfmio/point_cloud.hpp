#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sfmio/math.hpp"

namespace sfmio {

/// Plain geometry container shared by the PLY reader/writer and the depth
/// unprojector. `colors` and `normals` are either empty or one entry per
/// vertex; a non-empty `faces` makes it a mesh.
struct PointCloud {
  std::vector<Vec3> positions;
  std::vector<std::array<std::uint8_t, 3>> colors;
  std::vector<Vec3> normals;
  std::vector<std::vector<std::uint32_t>> faces;

  bool has_colors() const { return !colors.empty(); }
  bool has_normals() const { return !normals.empty(); }
  std::size_t size() const { return positions.size(); }
};

}  // namespace sfmio
