#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sfmio/scene.hpp"

namespace sfmio {

struct Keyframe {
  int frame = 1;  // >= 1; strictly increasing within a Trajectory
  CameraPose pose;
  double fov_x = 0.0;
  double shift_x = 0.0;
  double shift_y = 0.0;
};

enum class InterpolationMode { kLinear, kNone };

struct CameraState {
  CameraPose pose;
  double fov_x = 0.0;
  double shift_x = 0.0;
  double shift_y = 0.0;
};

/// Assigns an animation frame to each view. When the last digit group of
/// every image-name stem yields distinct integers >= 1, those digits are the
/// frames (IMG_0042.jpg animates at frame 42); otherwise views are
/// natural-sorted by name and assigned 1, 1+step, 1+2*step, ...
/// Throws on an empty view set.
std::vector<std::pair<int, CameraView>> assign_frames(std::span<const CameraView> views,
                                                      int step);

/// q'_1 = q_1; q'_i = -q_i when dot(q'_{i-1}, q_i) < 0. All consecutive dot
/// products of the result are >= 0, which makes the total consecutive
/// distance minimal over every sign assignment. Idempotent.
std::vector<Quat> align_quaternion_signs(std::span<const Quat> quats);

/// Spherical linear interpolation between unit quaternions, falling back to
/// normalized linear interpolation when dot(a, b) > 1 - 1e-9.
Quat slerp(Quat a, Quat b, double u);

/// Keyframe sequence sorted by frame with a sign-aligned rotation sequence.
class Trajectory {
 public:
  Trajectory(std::vector<Keyframe> keyframes, InterpolationMode mode);

  const std::vector<Keyframe>& keyframes() const { return keyframes_; }
  const std::vector<Quat>& aligned_rotations() const { return aligned_; }
  InterpolationMode mode() const { return mode_; }

  /// Sampling at a keyframe frame returns that keyframe's state bit-exactly.
  /// Frames outside [first, last] clamp to the boundary keyframe. Between
  /// keyframes: slerp on the aligned rotations, the camera CENTER (not the
  /// translation) interpolated linearly in world space, fov and shifts
  /// linear. Mode kNone steps to the nearest keyframe below.
  CameraState sample(double frame) const;

 private:
  std::vector<Keyframe> keyframes_;
  std::vector<Quat> aligned_;
  InterpolationMode mode_;
};

/// Keyframes from assign_frames with per-view fov/shift; throws
/// RepresentabilityError on a reconstruction without cameras.
Trajectory build_trajectory(const Reconstruction& rec, int step, InterpolationMode mode);

CameraState sample_trajectory(const Trajectory& trajectory, double frame);

/// One row of an exported animation. The rotation is the camera-to-world
/// quaternion in graphics axes, sign-aligned along the sample sequence.
struct TrajectorySample {
  double frame = 0.0;
  Vec3 position;  // camera center, world units
  Quat rotation;
  double fov_x = 0.0;
  double shift_x = 0.0;
  double shift_y = 0.0;
};

struct SampledTrajectory {
  double fps = 24.0;
  std::vector<int> keyframe_frames;
  std::vector<TrajectorySample> samples;
};

/// Samples the trajectory at the given frames (consumed in order).
SampledTrajectory sample_at_frames(const Trajectory& trajectory,
                                   std::span<const double> frames, double fps);

/// Every integer frame from the first to the last keyframe.
std::vector<double> integer_frame_range(const Trajectory& trajectory);

/// `per_interval` evenly spaced samples in each keyframe interval plus the
/// final keyframe: (n-1) * per_interval + 1 samples in total.
std::vector<double> interval_frame_samples(const Trajectory& trajectory, int per_interval);

}  // namespace sfmio
