#pragma once

#include <filesystem>

#include "sfmio/diagnostics.hpp"
#include "sfmio/scene.hpp"

namespace sfmio {

/// Emits cameras.txt / images.txt / points3D.txt in the layout
/// parse_colmap_model reads, reals at 17 significant digits. POINTS2D lines
/// are rebuilt from the observations (per-image, in observation order), and
/// point tracks are rewritten to match; `notes` records this when the stored
/// tracks differ. Throws RepresentabilityError when an intrinsics entry
/// cannot be expressed by Colmap models 0..4.
void write_colmap_text(const Reconstruction& rec, const std::filesystem::path& dir,
                       ParseDiagnostics* notes = nullptr);

}  // namespace sfmio
