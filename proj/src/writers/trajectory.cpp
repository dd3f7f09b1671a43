#include "sfmio/writers/trajectory.hpp"

#include <fstream>
#include <numbers>

#include <json.hpp>

#include "sfmio/error.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

double to_degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

}  // namespace

void write_trajectory_csv(const SampledTrajectory& trajectory, std::ostream& out) {
  out << "frame,px,py,pz,qw,qx,qy,qz,fovx_deg,shift_x,shift_y\n";
  for (const TrajectorySample& s : trajectory.samples) {
    out << format_g17(s.frame) << ',' << format_g17(s.position.x) << ','
        << format_g17(s.position.y) << ',' << format_g17(s.position.z) << ','
        << format_g17(s.rotation.w) << ',' << format_g17(s.rotation.x) << ','
        << format_g17(s.rotation.y) << ',' << format_g17(s.rotation.z) << ','
        << format_g17(to_degrees(s.fov_x)) << ',' << format_g17(s.shift_x) << ','
        << format_g17(s.shift_y) << '\n';
  }
}

void write_trajectory_json(const SampledTrajectory& trajectory, std::ostream& out) {
  nlohmann::json doc;
  doc["fps"] = trajectory.fps;
  doc["keyframes"] = trajectory.keyframe_frames;
  nlohmann::json samples = nlohmann::json::array();
  for (const TrajectorySample& s : trajectory.samples) {
    samples.push_back({{"frame", s.frame},
                       {"position", {s.position.x, s.position.y, s.position.z}},
                       {"rotation_wxyz", {s.rotation.w, s.rotation.x, s.rotation.y, s.rotation.z}},
                       {"fovx_deg", to_degrees(s.fov_x)},
                       {"shift_x", s.shift_x},
                       {"shift_y", s.shift_y}});
  }
  doc["samples"] = std::move(samples);
  out << doc.dump(1) << '\n';
}

void write_trajectory_file(const SampledTrajectory& trajectory,
                           const std::filesystem::path& path, TrajectoryFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  if (format == TrajectoryFormat::kCsv)
    write_trajectory_csv(trajectory, out);
  else
    write_trajectory_json(trajectory, out);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace sfmio
