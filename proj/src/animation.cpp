#include "sfmio/animation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string_view>

#include "sfmio/error.hpp"
#include "sfmio/geometry.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

// Last contiguous digit group of the image-name stem, e.g. 42 for
// "shots/IMG_0042.jpg". nullopt when there is none or it overflows.
std::optional<std::int64_t> trailing_digit_group(const std::string& image_name) {
  std::string_view stem = image_name;
  if (const auto slash = stem.find_last_of("/\\"); slash != std::string_view::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string_view::npos && dot > 0)
    stem = stem.substr(0, dot);

  std::size_t end = stem.size();
  while (end > 0 && !std::isdigit(static_cast<unsigned char>(stem[end - 1]))) --end;
  if (end == 0) return std::nullopt;
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
  if (end - begin > 18) return std::nullopt;  // would overflow
  return parse_int(stem.substr(begin, end - begin));
}

}  // namespace

std::vector<std::pair<int, CameraView>> assign_frames(std::span<const CameraView> views,
                                                      int step) {
  if (views.empty()) throw RepresentabilityError("cannot assign frames to an empty view set");
  if (step < 1) throw Error("frame step must be >= 1");

  std::vector<std::int64_t> digits;
  std::set<std::int64_t> distinct;
  bool usable = true;
  for (const CameraView& view : views) {
    const auto d = trailing_digit_group(view.image_name);
    // Frames must be >= 1 and distinct for the digits to serve as frames.
    if (!d || *d < 1 || *d > std::numeric_limits<int>::max() || !distinct.insert(*d).second) {
      usable = false;
      break;
    }
    digits.push_back(*d);
  }

  std::vector<std::pair<int, CameraView>> out;
  out.reserve(views.size());
  if (usable) {
    for (std::size_t i = 0; i < views.size(); ++i)
      out.push_back({static_cast<int>(digits[i]), views[i]});
  } else {
    std::vector<const CameraView*> sorted;
    for (const CameraView& view : views) sorted.push_back(&view);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CameraView* a, const CameraView* b) {
                       return natural_less(a->image_name, b->image_name);
                     });
    int frame = 1;
    for (const CameraView* view : sorted) {
      out.push_back({frame, *view});
      frame += step;
    }
  }
  return out;
}

std::vector<Quat> align_quaternion_signs(std::span<const Quat> quats) {
  std::vector<Quat> out(quats.begin(), quats.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (dot(out[i - 1], out[i]) < 0.0) out[i] = -out[i];
  return out;
}

Quat slerp(Quat a, Quat b, double u) {
  const double d = dot(a, b);
  if (d > 1.0 - 1e-9) {
    // Nearly identical rotations: normalized linear interpolation.
    const Quat q{a.w + u * (b.w - a.w), a.x + u * (b.x - a.x), a.y + u * (b.y - a.y),
                 a.z + u * (b.z - a.z)};
    return normalized(q);
  }
  const double theta = std::acos(std::clamp(d, -1.0, 1.0));
  const double sin_theta = std::sin(theta);
  const double wa = std::sin((1.0 - u) * theta) / sin_theta;
  const double wb = std::sin(u * theta) / sin_theta;
  return {wa * a.w + wb * b.w, wa * a.x + wb * b.x, wa * a.y + wb * b.y,
          wa * a.z + wb * b.z};
}

Trajectory::Trajectory(std::vector<Keyframe> keyframes, InterpolationMode mode)
    : keyframes_(std::move(keyframes)), mode_(mode) {
  if (keyframes_.empty()) throw RepresentabilityError("a trajectory needs at least one keyframe");
  std::stable_sort(keyframes_.begin(), keyframes_.end(),
                   [](const Keyframe& a, const Keyframe& b) { return a.frame < b.frame; });
  for (std::size_t i = 1; i < keyframes_.size(); ++i)
    if (keyframes_[i].frame == keyframes_[i - 1].frame)
      throw Error("duplicate keyframe frame " + std::to_string(keyframes_[i].frame));

  std::vector<Quat> rotations;
  rotations.reserve(keyframes_.size());
  for (const Keyframe& kf : keyframes_) rotations.push_back(kf.pose.q);
  aligned_ = align_quaternion_signs(rotations);
}

CameraState Trajectory::sample(double frame) const {
  const auto state_of = [](const Keyframe& kf) {
    return CameraState{kf.pose, kf.fov_x, kf.shift_x, kf.shift_y};
  };
  if (frame <= keyframes_.front().frame) return state_of(keyframes_.front());
  if (frame >= keyframes_.back().frame) return state_of(keyframes_.back());

  const auto upper = std::lower_bound(
      keyframes_.begin(), keyframes_.end(), frame,
      [](const Keyframe& kf, double f) { return kf.frame < f; });
  if (upper->frame == frame) return state_of(*upper);
  const auto a = std::prev(upper);
  if (mode_ == InterpolationMode::kNone) return state_of(*a);

  const Keyframe& b = *upper;
  const double u = (frame - a->frame) / (b.frame - a->frame);
  const std::size_t ia = a - keyframes_.begin();
  const Quat q = slerp(aligned_[ia], aligned_[ia + 1], u);

  // The center, not the translation, moves linearly through world space.
  const Vec3 center = (1.0 - u) * camera_center(a->pose) + u * camera_center(b.pose);
  CameraState state;
  state.pose = make_pose(q, -(quat_to_matrix(q) * center));
  state.fov_x = (1.0 - u) * a->fov_x + u * b.fov_x;
  state.shift_x = (1.0 - u) * a->shift_x + u * b.shift_x;
  state.shift_y = (1.0 - u) * a->shift_y + u * b.shift_y;
  return state;
}

Trajectory build_trajectory(const Reconstruction& rec, int step, InterpolationMode mode) {
  if (rec.cameras.empty())
    throw RepresentabilityError("cannot animate a reconstruction without registered cameras");
  std::vector<CameraView> views;
  views.reserve(rec.cameras.size());
  for (const auto& [id, view] : rec.cameras) views.push_back(view);

  std::vector<Keyframe> keyframes;
  keyframes.reserve(views.size());
  for (const auto& [frame, view] : assign_frames(views, step)) {
    const FovShift fs = fov_and_shift(rec.intrinsics_pool.at(view.intrinsics_id));
    keyframes.push_back({frame, view.pose, fs.fov_x, fs.shift_x, fs.shift_y});
  }
  return Trajectory(std::move(keyframes), mode);
}

CameraState sample_trajectory(const Trajectory& trajectory, double frame) {
  return trajectory.sample(frame);
}

SampledTrajectory sample_at_frames(const Trajectory& trajectory,
                                   std::span<const double> frames, double fps) {
  SampledTrajectory out;
  out.fps = fps;
  for (const Keyframe& kf : trajectory.keyframes()) out.keyframe_frames.push_back(kf.frame);

  std::vector<Quat> rotations;
  rotations.reserve(frames.size());
  for (const double frame : frames) {
    const CameraState state = trajectory.sample(frame);
    TrajectorySample sample;
    sample.frame = frame;
    sample.position = camera_center(state.pose);
    rotations.push_back(
        matrix_to_quat(transposed(quat_to_matrix(state.pose.q)) * Mat3::axis_flip()));
    sample.fov_x = state.fov_x;
    sample.shift_x = state.shift_x;
    sample.shift_y = state.shift_y;
    out.samples.push_back(sample);
  }
  // Canonical-sign conversion can flip between neighbors; re-align so
  // consecutive exported quaternions keep non-negative dot products.
  const std::vector<Quat> aligned = align_quaternion_signs(rotations);
  for (std::size_t i = 0; i < aligned.size(); ++i) out.samples[i].rotation = aligned[i];
  return out;
}

std::vector<double> integer_frame_range(const Trajectory& trajectory) {
  const int first = trajectory.keyframes().front().frame;
  const int last = trajectory.keyframes().back().frame;
  std::vector<double> frames;
  frames.reserve(last - first + 1);
  for (int f = first; f <= last; ++f) frames.push_back(f);
  return frames;
}

std::vector<double> interval_frame_samples(const Trajectory& trajectory, int per_interval) {
  if (per_interval < 1) throw Error("samples per interval must be >= 1");
  const auto& kfs = trajectory.keyframes();
  std::vector<double> frames;
  for (std::size_t i = 0; i + 1 < kfs.size(); ++i) {
    const double a = kfs[i].frame;
    const double b = kfs[i + 1].frame;
    for (int s = 0; s < per_interval; ++s)
      frames.push_back(a + (b - a) * s / per_interval);
  }
  frames.push_back(kfs.back().frame);
  return frames;
}

}  // namespace sfmio
