#pragma once

#include <filesystem>
#include <ostream>

#include "sfmio/animation.hpp"

namespace sfmio {

enum class TrajectoryFormat { kJson, kCsv };

/// CSV with the header line
/// frame,px,py,pz,qw,qx,qy,qz,fovx_deg,shift_x,shift_y — one row per sample,
/// positions are camera centers, quaternions camera-to-world in graphics
/// axes, fov in degrees. Reals at 17 significant digits.
void write_trajectory_csv(const SampledTrajectory& trajectory, std::ostream& out);

/// JSON document mirroring the CSV fields plus fps and the keyframe list.
void write_trajectory_json(const SampledTrajectory& trajectory, std::ostream& out);

void write_trajectory_file(const SampledTrajectory& trajectory,
                           const std::filesystem::path& path, TrajectoryFormat format);

}  // namespace sfmio
