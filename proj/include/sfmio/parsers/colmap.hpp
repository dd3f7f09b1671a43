#pragma once

#include <filesystem>
#include <istream>

#include "sfmio/parsers/parse_result.hpp"

namespace sfmio {

/// Reads a Colmap sparse model directory holding either
/// {cameras.bin, images.bin, points3D.bin} or the .txt triple; the binary
/// encoding wins when both are present. Poses are stored world-to-camera in
/// CV axes, which is exactly the canonical convention.
ParsedReconstruction parse_colmap_model(const std::filesystem::path& dir);

// Per-file readers, all little-endian. Exposed so in-memory fixtures can
// drive the exact production code path.

/// cameras.bin: u64 count, then per camera
/// [i32 camera_id, i32 model_id, u64 width, u64 height, f64 params...].
void read_colmap_cameras_bin(std::istream& in, Reconstruction& rec,
                             ParseDiagnostics& diag);

/// images.bin: u64 count, then per image [i32 image_id, f64 qw qx qy qz,
/// f64 tx ty tz, i32 camera_id, NUL-terminated name, u64 num_points2D,
/// then per 2D point (f64 x, f64 y, i64 point3D_id; -1 = untracked)].
/// Requires points to be read first so ids resolve to dense indices.
void read_colmap_images_bin(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag);

/// points3D.bin: u64 count, then per point [i64 id, f64 xyz, u8 rgb,
/// f64 error, u64 track_length, per element (i32 image_id, i32 point2D_idx)].
void read_colmap_points_bin(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag);

// Text twins ('#' comments, whitespace-separated, two lines per image).
void read_colmap_cameras_txt(std::istream& in, Reconstruction& rec,
                             ParseDiagnostics& diag);
void read_colmap_images_txt(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag);
void read_colmap_points_txt(std::istream& in, Reconstruction& rec,
                            ParseDiagnostics& diag);

}  // namespace sfmio
