#pragma once

#include <filesystem>
#include <ostream>

#include "sfmio/point_cloud.hpp"

namespace sfmio {

enum class PlyEncoding { kAscii, kBinaryLittleEndian };

/// Writes the cloud (or mesh, when faces are present) declaring exactly the
/// properties it holds. Binary payloads use little-endian f32 positions and
/// normals with u8 colors; ascii uses 9 significant digits of the same f32
/// values, so the two encodings parse back to identical geometry.
void write_ply(const PointCloud& cloud, std::ostream& out, PlyEncoding encoding);

void write_ply_file(const PointCloud& cloud, const std::filesystem::path& path,
                    PlyEncoding encoding);

}  // namespace sfmio
