#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <utility>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

/// Resolves an image name to (width, height) in pixels. NVM files store no
/// image dimensions, so the caller may supply one (the CLI builds it from
/// --image-dir by reading PPM/PGM headers).
using DimensionLookup =
    std::function<std::optional<std::pair<int, int>>(const std::string& image_name)>;

/// Reads a VisualSfM NVM_V3 file. NVM stores the camera CENTER, not the
/// translation; the canonical pose uses t = -R(q) * C. Intrinsics become
/// SIMPLE_RADIAL with fx = fy = f. Without a dimension lookup the principal
/// point stays at (0, 0) with width = height = 0 and an "unknown dimensions"
/// warning; measurement coordinates, stored relative to the image center,
/// are offset by (cx, cy) so they live in the same pixel frame either way.
ParsedReconstruction parse_nvm(std::istream& in,
                               const DimensionLookup& dimensions = {});

ParsedReconstruction parse_nvm_file(const std::filesystem::path& path,
                                    const DimensionLookup& dimensions = {});

}  // namespace sfmio
