#pragma once

#include <filesystem>
#include <istream>
#include <optional>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

/// One parsed views/<dir>/meta.ini. Focal length and principal point are in
/// MVE's normalized units: pixels = focal * max(w, h), principal * (w, h).
struct MveViewMeta {
  std::optional<std::int64_t> id;
  std::string name;
  bool has_camera = false;
  double focal_length = 0.0;
  Vec2 principal_point{0.5, 0.5};
  Mat3 rotation;  // world-to-camera, CV axes
  Vec3 translation;
  std::optional<double> pixel_aspect;
  std::optional<int> width;
  std::optional<int> height;
};

/// INI-level reader for a single meta.ini stream.
MveViewMeta parse_mve_meta_ini(std::istream& in);

/// Reads an MVE workspace: per-view meta.ini files under views/, plus the
/// sparse point cloud from synth_0.out (Bundler layout) when present.
/// Views without a [camera] section or with focal_length 0 are skipped.
ParsedReconstruction parse_mve_workspace(const std::filesystem::path& dir);

}  // namespace sfmio
