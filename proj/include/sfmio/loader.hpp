#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

enum class FormatId {
  kColmap,
  kNvm,
  kOpenMvg,
  kMeshroom,
  kMve,
  kBundler,
  kPly,
  kSceneJson,
};

std::string_view format_name(FormatId id);
std::optional<FormatId> format_from_name(std::string_view name);

/// Decides by extension-free content sniffing: a directory with
/// cameras.bin|txt is colmap, one with synth_0.out and views/ is mve; a file
/// starting with "NVM_V3" is nvm, with "# Bundle file" is bundler, with a
/// "ply" line is ply; JSON roots dispatch on sfm_data_version (openmvg),
/// views + poses (meshroom) and format_version + convention (scene-json).
/// A pure function of the bytes; repeated calls agree.
std::optional<FormatId> try_detect_format(const std::filesystem::path& path);

/// As try_detect_format, but throws UnknownFormatError naming the path when
/// nothing matches (and IoError when the path does not exist).
FormatId detect_format(const std::filesystem::path& path);

struct LoadOptions {
  /// Overrides detection entirely when set.
  std::optional<FormatId> format_hint;
  /// Directory of PPM/PGM images used to recover dimensions for formats
  /// that store none (NVM).
  std::optional<std::filesystem::path> image_dir;
};

/// Detects (or takes the hint) and dispatches to the matching parser. Every
/// result passes validate_references with an empty report.
ParsedReconstruction load_reconstruction(const std::filesystem::path& path,
                                         const LoadOptions& options = {});

}  // namespace sfmio
