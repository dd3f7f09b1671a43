#pragma once

#include <filesystem>
#include <istream>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

/// Reads an AliceVision / Meshroom cameras.sfm document (root keys "views"
/// and "poses"). Numeric values are serialized as strings in this format.
/// Poses store a camera-to-world rotation in CV axes plus the center; the
/// canonical pose is q = matrix_to_quat(R_cw^T), t = -R_cw^T * C.
ParsedReconstruction parse_meshroom_sfm(std::istream& in);

ParsedReconstruction parse_meshroom_sfm_file(const std::filesystem::path& path);

}  // namespace sfmio
