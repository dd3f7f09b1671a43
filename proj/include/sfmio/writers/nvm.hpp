#pragma once

#include <filesystem>
#include <ostream>

#include "sfmio/diagnostics.hpp"
#include "sfmio/scene.hpp"

namespace sfmio {

/// Writes an NVM_V3 file. NVM stores camera CENTERS (C = -R^T t) and a
/// single focal length per camera; measurement coordinates are re-offset to
/// the image-center origin. Lossy: the principal point, image dimensions and
/// any distortion beyond one radial coefficient are not representable -
/// drops are recorded in `notes`. Throws RepresentabilityError when
/// fx != fy beyond 1e-9 or when an image name contains whitespace.
void write_nvm(const Reconstruction& rec, std::ostream& out,
               ParseDiagnostics* notes = nullptr);

void write_nvm_file(const Reconstruction& rec, const std::filesystem::path& path,
                    ParseDiagnostics* notes = nullptr);

}  // namespace sfmio
