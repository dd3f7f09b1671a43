#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <utility>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

/// Reads a Bundler .out file ("# Bundle file" header), the sparse format of
/// MVE's SfM step. Bundler poses use x_cam = R x_world + t but with the
/// camera looking down -z and y up; the canonical pose conjugates by
/// D = diag(1, -1, -1): rotation D*R, translation D*t. Measurement
/// coordinates are image-center relative with y up and are mapped into the
/// canonical pixel frame. Cameras with f = 0 are unregistered and skipped.
///
/// `image_dims` optionally supplies (width, height) per camera in file
/// order; Bundler itself stores no image dimensions.
ParsedReconstruction parse_bundler_out(
    std::istream& in, std::span<const std::pair<int, int>> image_dims = {});

ParsedReconstruction parse_bundler_out_file(
    const std::filesystem::path& path,
    std::span<const std::pair<int, int>> image_dims = {});

}  // namespace sfmio
