#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "sfmio/scene.hpp"

namespace sfmio {

/// Writes the canonical scene document (format_version "1.0", convention
/// "cv-w2c"). This is the artifact's lossless native format: numbers use the
/// shortest decimal representation that recovers the exact binary64, so
/// parse_scene_json(write_scene_json(rec)) == rec bit for bit.
void write_scene_json(const Reconstruction& rec, std::ostream& out);
void write_scene_json_file(const Reconstruction& rec, const std::filesystem::path& path);

/// Exact inverse of write_scene_json. Throws ParseError on a malformed
/// document, a format_version other than "1.0", or a convention tag other
/// than "cv-w2c" (no silent reinterpretation).
Reconstruction parse_scene_json(std::istream& in);
Reconstruction parse_scene_json_file(const std::filesystem::path& path);

}  // namespace sfmio
