#pragma once

#include <filesystem>
#include <istream>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

/// Reads a PLY file in ascii, binary_little_endian or binary_big_endian
/// encoding. Vertex properties x/y/z are required; red/green/blue (or the
/// diffuse_ variants), nx/ny/nz and faces are picked up when declared;
/// everything else is skipped by its declared size.
ParsedPointCloud parse_ply(std::istream& in);

ParsedPointCloud parse_ply_file(const std::filesystem::path& path);

}  // namespace sfmio
