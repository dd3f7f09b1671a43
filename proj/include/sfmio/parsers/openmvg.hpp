#pragma once

#include <filesystem>
#include <istream>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

/// Reads an OpenMVG sfm_data.json document (also produced by Regard3D).
/// Extrinsics store a rotation R and a center C with x_cam = R(x_world - C);
/// the canonical pose is q = matrix_to_quat(R), t = -R * C. Views without an
/// extrinsic are unregistered and skipped with a warning.
ParsedReconstruction parse_openmvg_sfm_data(std::istream& in);

ParsedReconstruction parse_openmvg_sfm_data_file(const std::filesystem::path& path);

}  // namespace sfmio
